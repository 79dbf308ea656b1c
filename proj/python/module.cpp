#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "surfkernel/errors.hpp"
#include "surfkernel/io.hpp"

namespace py = pybind11;
using namespace surfkernel;

namespace {

// Job plus its reduction; the homology basis and matrices are built lazily.
class Session {
 public:
  explicit Session(JobConfig job) : job_(std::move(job)) {
    analysis_ = analyze(job_.group, job_.signature, job_.vector, job_.strategy);
  }

  const JobConfig& job() const { return job_; }
  const Analysis& analysis() const { return analysis_; }
  const SchreierSystem& system() const { return *analysis_.system; }

  const HomologyBasis& basis() {
    if (!basis_) basis_ = std::make_unique<HomologyBasis>(system(), analysis_.reduced);
    return *basis_;
  }

  const std::vector<ActionMatrix>& representation(unsigned jobs) {
    if (rep_.empty()) rep_ = full_representation(basis(), jobs);
    return rep_;
  }

 private:
  JobConfig job_;
  Analysis analysis_;
  std::unique_ptr<HomologyBasis> basis_;
  std::vector<ActionMatrix> rep_;
};

py::array_t<std::int64_t> to_numpy(const IntMatrix& m) {
  py::array_t<std::int64_t> out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

py::dict checks_dict(const std::vector<Check>& checks) {
  py::dict out;
  for (const Check& c : checks) out[py::str(c.name)] = py::make_tuple(c.passed, c.detail);
  return out;
}

}  // namespace

PYBIND11_MODULE(_surfkernel, m) {
  m.doc() = "Surface-kernel presentations and homology actions of finite groups";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<GenusError>(m, "GenusError", base);
  py::register_exception<GlueError>(m, "GlueError", base);
  py::register_exception<ReductionError>(m, "ReductionError", base);
  py::register_exception<VerificationError>(m, "VerificationError", base);
  py::register_exception<ClassificationError>(m, "ClassificationError", base);
  py::register_exception<DomainError>(m, "DomainError", base);

  py::class_<JobConfig>(m, "Job")
      .def_property_readonly("group_order", [](const JobConfig& j) { return j.group.order(); })
      .def_property_readonly("orbit_genus", [](const JobConfig& j) { return j.signature.orbit_genus; })
      .def_property_readonly("periods", [](const JobConfig& j) { return j.signature.periods; })
      .def_property_readonly("input_sha256", [](const JobConfig& j) { return j.input_sha256; })
      .def("validate",
           [](const JobConfig& j) {
             py::dict out;
             for (const VectorCheck& c : validate_generating_vector(j.group, j.signature, j.vector).checks)
               out[py::str(c.name)] = py::make_tuple(c.passed, c.detail);
             return out;
           })
      .def("genus", [](const JobConfig& j) { return riemann_hurwitz_genus(j.group.order(), j.signature); });

  m.def("load_job", &load_job, py::arg("path"));
  m.def("parse_job", &parse_job, py::arg("text"));

  py::class_<Session>(m, "Analysis")
      .def(py::init<JobConfig>(), py::arg("job"))
      .def_property_readonly("genus", [](const Session& s) { return s.analysis().genus; })
      .def_property_readonly("representatives",
                             [](const Session& s) {
                               std::vector<std::string> out;
                               for (std::size_t k = 0; k < s.system().size(); ++k)
                                 out.push_back(s.system().format_representative(k));
                               return out;
                             })
      .def_property_readonly("counts",
                             [](const Session& s) {
                               const KernelPresentation& kp = s.analysis().presentation;
                               py::dict d;
                               d["generators"] = kp.generator_count;
                               d["r_relations"] = kp.r_relations.size();
                               d["e_relations"] = kp.e_relations.size();
                               d["m_generators"] = kp.m_generators.size();
                               d["relations"] = kp.relation_count();
                               return d;
                             })
      .def_property_readonly("stages",
                             [](const Session& s) {
                               std::vector<std::pair<std::string, std::size_t>> out;
                               for (const StageSnapshot& st : s.analysis().reduced.snapshots)
                                 out.emplace_back(st.stage, st.generators);
                               return out;
                             })
      .def_property_readonly("survivors",
                             [](const Session& s) {
                               std::vector<std::string> out;
                               for (std::uint32_t g : s.analysis().reduced.survivors)
                                 out.push_back(s.system().display(g));
                               return out;
                             })
      .def_property_readonly("final_relation",
                             [](const Session& s) { return s.system().display(s.analysis().reduced.final_relation); })
      .def_property_readonly("normalization", [](const Session& s) { return s.analysis().normalization; })
      .def("audit_ok", [](const Session& s) { return count_audit(s.system(), s.analysis().reduced.snapshots).ok(); })
      .def(
          "matrices",
          [](Session& s, unsigned jobs) {
            py::dict out;
            for (const ActionMatrix& a : s.representation(jobs)) out[py::str(a.label)] = to_numpy(a.matrix);
            return out;
          },
          py::arg("jobs") = 1, "Action matrices keyed by element label; row i is the image of survivor i.")
      .def(
          "checks",
          [](Session& s, unsigned jobs) {
            return checks_dict(check_representation(s.job().group, s.representation(jobs)));
          },
          py::arg("jobs") = 1)
      .def(
          "lefschetz",
          [](Session& s, unsigned jobs) {
            const JobConfig& j = s.job();
            LefschetzReport r = lefschetz_check(j.group, j.signature, j.vector, s.representation(jobs));
            py::list lines;
            for (const LefschetzLine& l : r.lines)
              lines.append(py::make_tuple(l.label, l.trace, l.expected, l.fixed_points, l.passed));
            return py::make_tuple(r.ok(), lines);
          },
          py::arg("jobs") = 1)
      .def(
          "report_json",
          [](Session& s, unsigned jobs) {
            return report_json(build_adapted_basis_report(s.basis(), s.analysis().reduced, s.representation(jobs)))
                .dump();
          },
          py::arg("jobs") = 1);
}
