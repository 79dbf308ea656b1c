// Command-line front end: validate, present, reduce, matrices, report.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "surfkernel/errors.hpp"
#include "surfkernel/io.hpp"

namespace fs = std::filesystem;
using namespace surfkernel;

namespace {

enum Exit { ok = 0, invalid = 1, parse = 2, reduction = 3, verification = 4, classification = 5 };

struct Options {
  std::string input;
  std::string out = ".";
  std::string format = "text,json";
  unsigned jobs = 1;
  bool force = false;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
}

bool wants(const std::vector<std::string>& formats, const char* f) {
  return std::find(formats.begin(), formats.end(), f) != formats.end();
}

fs::path out_dir(const Options& o) {
  fs::path dir(o.out);
  fs::create_directories(dir);
  return dir;
}

int cmd_validate(const Options& o) {
  JobConfig job = load_job(o.input);
  ValidationReport report = validate_generating_vector(job.group, job.signature, job.vector);
  std::string genus_line;
  bool genus_ok = true;
  try {
    genus_line = "genus " + std::to_string(riemann_hurwitz_genus(job.group.order(), job.signature));
  } catch (const GenusError& e) {
    genus_ok = false;
    genus_line = "genus " + std::to_string(e.numerator()) +
                 (e.denominator() == 1 ? "" : "/" + std::to_string(e.denominator())) + " (not an integer >= 2)";
  }
  std::cout << validation_text(job.group, job.signature, report, genus_line);
  return report.ok() && genus_ok ? ok : invalid;
}

int cmd_present(const Options& o) {
  JobConfig job = load_job(o.input);
  Analysis a;
  a.system = std::make_unique<SchreierSystem>(job.group, job.signature, job.vector);
  KernelPresentation kp = kernel_presentation(*a.system);
  const fs::path dir = out_dir(o);
  write_file(dir / "presentation.json", presentation_json(*a.system, kp).dump(2) + "\n");
  const GeneratorCounts c = a.system->counts();
  std::cout << "representatives " << a.system->size() << "\ngenerators " << c.total() << " (H " << c.hyperbolic
            << ", E " << c.elliptic << ", M " << c.m << ")\nrelations " << kp.relation_count() << " ("
            << kp.r_relations.size() << " R, " << kp.e_relations.size() << " E, " << kp.m_generators.size()
            << " M)\n";
  return ok;
}

int cmd_reduce(const Options& o) {
  JobConfig job = load_job(o.input);
  const auto formats = parse_formats(o.format);
  Analysis a = analyze(job.group, job.signature, job.vector, job.strategy);
  AuditReport audit = count_audit(*a.system, a.reduced.snapshots);
  const fs::path dir = out_dir(o);
  write_file(dir / "presentation.json", presentation_json(*a.system, a.presentation).dump(2) + "\n");
  write_file(dir / "reduced.json", reduced_json(a).dump(2) + "\n");
  if (job.audit) {
    write_file(dir / "audit.txt", audit_text(audit));
    if (wants(formats, "csv")) write_file(dir / "audit.csv", audit_csv(audit));
  }
  std::cout << audit_text(audit);
  return audit.ok() ? ok : verification;
}

int cmd_matrices(const Options& o) {
  JobConfig job = load_job(o.input);
  const auto formats = parse_formats(o.format);
  Analysis a = analyze(job.group, job.signature, job.vector, job.strategy);
  HomologyBasis basis(*a.system, a.reduced);
  auto rep = full_representation(basis, o.jobs);
  auto checks = check_representation(job.group, rep);
  LefschetzReport lefschetz = lefschetz_check(job.group, job.signature, job.vector, rep);

  bool passed = lefschetz.ok();
  for (const Check& c : checks) {
    std::cout << (c.passed ? "pass " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
    passed = passed && c.passed;
  }
  std::cout << (lefschetz.ok() ? "pass " : "FAIL ") << "lefschetz: trace sum " << lefschetz.trace_sum
            << ", expected " << lefschetz.expected_sum << '\n';
  if (!passed && !o.force) {
    try {
      verify_lefschetz(lefschetz);
    } catch (const VerificationError& e) {
      std::cerr << "error: " << e.what() << '\n';
    }
    std::cerr << "error: checks failed, nothing written (use --force to write anyway)\n";
    return verification;
  }

  const fs::path dir = out_dir(o);
  for (std::size_t i = 0; i < rep.size(); ++i)
    write_file(dir / matrix_file_name(i, rep.size()), rep[i].matrix.to_text());
  write_file(dir / "manifest.json", manifest_json(rep, job.input_sha256, checks, lefschetz).dump(2) + "\n");
  if (wants(formats, "json")) write_file(dir / "matrices.json", matrices_json(rep).dump() + "\n");
  if (wants(formats, "csv")) write_file(dir / "matrices.csv", matrices_csv(rep));
  std::cout << rep.size() << " matrices of size " << basis.rank() << " written to " << dir.string() << '\n';
  return passed ? ok : verification;
}

int cmd_report(const Options& o) {
  JobConfig job = load_job(o.input);
  const auto formats = parse_formats(o.format);
  Analysis a = analyze(job.group, job.signature, job.vector, job.strategy);
  HomologyBasis basis(*a.system, a.reduced);
  auto rep = full_representation(basis, o.jobs);
  AdaptedBasisReport report = build_adapted_basis_report(basis, a.reduced, rep);
  const fs::path dir = out_dir(o);
  write_file(dir / "report.txt", report_text(*a.system, report));
  write_file(dir / "report.json", report_json(report).dump(2) + "\n");
  if (wants(formats, "csv")) write_file(dir / "report.csv", report_csv(report));
  std::cout << inventory_text(report);
  for (const std::string& f : report.flags) std::cout << "flag: " << f << '\n';
  if (!report.unclassified.empty()) {
    std::cerr << "error: " << report.unclassified.size() << " survivor(s) fit no adapted-basis item\n";
    return classification;
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface-kernel presentations and homology actions of finite groups"};
  app.require_subcommand(1);
  Options o;
  auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input,-i", o.input, "job file (JSON)")->required();
    sub->add_option("--out,-o", o.out, "output directory");
    sub->add_option("--format", o.format, "comma-separated subset of text,json,csv");
    sub->add_option("--jobs,-j", o.jobs, "threads for the matrix computation")->check(CLI::PositiveNumber);
    sub->add_flag("--force", o.force, "write matrices even when checks fail");
    return sub;
  };
  CLI::App* validate = add("validate", "check the generating vector and print the genus");
  CLI::App* present = add("present", "write the kernel presentation");
  CLI::App* reduce = add("reduce", "reduce to one relation; write presentation, reduction and audit");
  CLI::App* matrices = add("matrices", "write the action matrices on first homology");
  CLI::App* report = add("report", "write the adapted-basis report");
  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(o);
    if (present->parsed()) return cmd_present(o);
    if (reduce->parsed()) return cmd_reduce(o);
    if (matrices->parsed()) return cmd_matrices(o);
    if (report->parsed()) return cmd_report(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return parse;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return invalid;
  } catch (const GenusError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return invalid;
  } catch (const ReductionError& e) {
    std::cerr << "reduction failed: " << e.what() << '\n';
    return reduction;
  } catch (const GlueError& e) {
    std::cerr << "reduction failed: " << e.what() << '\n';
    return reduction;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return verification;
  } catch (const ClassificationError& e) {
    std::cerr << "classification failed: " << e.what() << '\n';
    return classification;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return invalid;
  }
  return ok;
}
