#include "surfkernel/pipeline.hpp"

#include <exception>

#include "surfkernel/errors.hpp"

namespace surfkernel {

namespace {

Analysis attempt(const FiniteGroup& group, const Signature& sig, const GeneratingVector& vec,
                 GluingStrategy strategy) {
  Analysis a;
  a.genus = riemann_hurwitz_genus(group.order(), sig);
  a.system = std::make_unique<SchreierSystem>(group, sig, vec);
  a.presentation = kernel_presentation(*a.system);
  check_presentation(*a.system, a.presentation);
  a.reduced = reduce_to_single_relation(*a.system, a.presentation, strategy);
  return a;
}

}  // namespace

Analysis analyze(const FiniteGroup& group, const Signature& sig, const GeneratingVector& vec,
                 GluingStrategy strategy) {
  ValidationReport report = validate_generating_vector(group, sig, vec);
  if (!report.ok()) {
    std::string failed;
    for (const VectorCheck& c : report.checks)
      if (!c.passed) failed += " " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
    throw ValidationError("generating vector fails:" + failed);
  }
  try {
    return attempt(group, sig, vec, strategy);
  } catch (const Error& first) {
    if (!dynamic_cast<const GlueError*>(&first) && !dynamic_cast<const ReductionError*>(&first)) throw;
    const std::exception_ptr original = std::current_exception();
    NormalizedVector nv;
    try {
      nv = normalize_vector(group, sig, vec);
    } catch (const NormalizationError&) {
      std::rethrow_exception(original);
    }
    if (nv.provenance.empty()) throw;
    Analysis a = attempt(group, sig, nv.vector, strategy);
    a.normalization = nv.provenance;
    return a;
  }
}

}  // namespace surfkernel
