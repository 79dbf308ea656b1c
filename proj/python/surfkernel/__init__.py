"""Surface-kernel presentations and homology actions of finite groups."""

import json

from ._surfkernel import (
    Analysis,
    ClassificationError,
    DomainError,
    Error,
    GenusError,
    GlueError,
    Job,
    ParseError,
    ReductionError,
    ValidationError,
    VerificationError,
    load_job,
    parse_job,
)


def analyze(job):
    """Reduce a job (a Job, a path, or a dict) to a single-relation presentation."""
    if isinstance(job, dict):
        job = parse_job(json.dumps(job))
    elif isinstance(job, str):
        job = load_job(job)
    return Analysis(job)


def report(analysis, jobs=1):
    return json.loads(analysis.report_json(jobs))


__all__ = [
    "Analysis", "Job", "analyze", "load_job", "parse_job", "report",
    "Error", "ParseError", "ValidationError", "GenusError", "GlueError",
    "ReductionError", "VerificationError", "ClassificationError", "DomainError",
]
