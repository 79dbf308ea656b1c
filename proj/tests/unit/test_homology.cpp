#include <doctest.h>

#include "support.hpp"

using namespace surfkernel;

namespace {

struct Fixture {
  JobConfig job;
  Analysis analysis;
  std::unique_ptr<HomologyBasis> basis;
  std::vector<ActionMatrix> rep;

  explicit Fixture(const std::string& name) : job(load_job(support::fixture(name))) {
    analysis = analyze(job.group, job.signature, job.vector, job.strategy);
    basis = std::make_unique<HomologyBasis>(*analysis.system, analysis.reduced);
    rep = full_representation(*basis, 2);
  }
};

HomologyVector times(const HomologyVector& v, const IntMatrix& m) {
  HomologyVector out(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  return out;
}

}  // namespace

TEST_CASE("hyperelliptic involution acts as -I") {
  Fixture f("hyperelliptic2.json");
  REQUIRE(f.rep.size() == 2);
  CHECK(f.rep[0].matrix == IntMatrix::identity(4));
  IntMatrix minus = IntMatrix(4, 4) - IntMatrix::identity(4);
  CHECK(f.rep[1].matrix == minus);
  for (std::uint32_t s : f.basis->survivors()) {
    HomologyVector v = f.basis->act(GroupElement{1}, s);
    HomologyVector e = f.basis->resolved(s);
    for (auto& x : e) x = -x;
    CHECK(v == e);
  }
  CHECK(fixed_point_count(f.job.group, f.job.signature, f.job.vector, GroupElement{1}) == 6);
  CHECK_THROWS_AS(fixed_point_count(f.job.group, f.job.signature, f.job.vector, f.job.group.identity()),
                  DomainError);
  LefschetzReport l = lefschetz_check(f.job.group, f.job.signature, f.job.vector, f.rep);
  CHECK(l.ok());
  CHECK(l.lines[1].trace == -4);
}

TEST_CASE("worked example action") {
  Fixture f("z5xz5.json");
  const FiniteGroup& g = f.job.group;
  REQUIRE(f.rep.size() == 25);
  CHECK(f.rep[0].matrix == IntMatrix::identity(72));
  CHECK(fixed_point_count(g, f.job.signature, f.job.vector, g.abelian_element({0, 2})) == 5);
  for (GroupElement e : g.elements())
    if (e != g.identity()) CHECK(fixed_point_count(g, f.job.signature, f.job.vector, e) == 5);

  for (const Check& c : check_representation(g, f.rep)) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
  LefschetzReport l = lefschetz_check(g, f.job.signature, f.job.vector, f.rep);
  CHECK(l.ok());
  CHECK(l.trace_sum == 0);
  for (std::size_t i = 1; i < l.lines.size(); ++i) CHECK(l.lines[i].trace == -3);
  CHECK_NOTHROW(verify_lefschetz(l));
}

TEST_CASE("final relation and long relation in homology") {
  for (const char* name : {"z5xz5.json", "hyperelliptic2.json"}) {
    Fixture f(name);
    const HomologyVector zero(f.basis->rank(), 0);
    CHECK(f.basis->abelianize(f.analysis.reduced.final_relation) == zero);
    for (const KernelRelation& r : f.analysis.presentation.r_relations) CHECK(f.basis->abelianize(r.word) == zero);
    for (const EllipticRelation& r : f.analysis.presentation.e_relations)
      CHECK(f.basis->abelianize(r.relation.word) == zero);
  }
}

TEST_CASE("action is compatible with conjugation of kernel words") {
  Fixture f("z5xz5.json");
  const SchreierSystem& s = *f.analysis.system;
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Gamma0Word w = support::random_kernel_word(s, rng, 30);
    HomologyVector base = f.basis->abelianize(s.rewrite(w));
    for (std::size_t k = 0; k < f.rep.size(); k += 6) {
      GroupElement g = f.rep[k].element;
      CHECK(abelianize(s.rewrite_conjugate(g, w), *f.basis) == times(base, f.rep[k].matrix));
    }
  }
}

TEST_CASE("non-abelian action satisfies the row law") {
  FiniteGroup s3 = build_group(PermutationSpec{3, {{1, 2, 0}, {1, 0, 2}}});
  auto els = s3.elements();
  GroupElement t;
  for (GroupElement e : els)
    if (element_order(s3, e) == 2) t = e;
  Signature sig{0, {2, 2, 2, 2, 2, 2}};
  GeneratingVector v;
  for (GroupElement a : els)
    for (GroupElement b : els)
      if (v.x.empty() && element_order(s3, a) == 2 && element_order(s3, b) == 2 && a != b) {
        GeneratingVector c{{}, {}, {a, b, b, a, a, a}};
        if (validate_generating_vector(s3, sig, c).ok()) v = c;
      }
  REQUIRE_FALSE(v.x.empty());
  Analysis a = analyze(s3, sig, v);
  HomologyBasis basis(*a.system, a.reduced);
  auto rep = full_representation(basis);
  for (const Check& c : check_representation(s3, rep)) CHECK(c.passed);
  CHECK(lefschetz_check(s3, sig, v, rep).ok());
}

TEST_CASE("adapted basis report") {
  Fixture h("hyperelliptic2.json");
  AdaptedBasisReport r = build_adapted_basis_report(*h.basis, h.analysis.reduced, h.rep);
  CHECK(r.unclassified.empty());
  CHECK(r.blocks.size() == 4);
  CHECK(r.removed.size() == 1);
  CHECK_NOTHROW(adapted_basis_report(*h.basis, h.analysis.reduced, h.rep));

  Fixture f("z5xz5.json");
  AdaptedBasisReport w = build_adapted_basis_report(*f.basis, f.analysis.reduced, f.rep);
  CHECK(w.removed.size() == 24);
  CHECK(w.survivors.size() == 72);
  CHECK(w.unclassified.size() + w.count(BasisItem::free_orbit) + w.count(BasisItem::cyclic_block) +
            w.count(BasisItem::translate) + w.count(BasisItem::fixed_by_subgroup) ==
        72);
  if (!w.unclassified.empty())
    CHECK_THROWS_AS(adapted_basis_report(*f.basis, f.analysis.reduced, f.rep), ClassificationError);
}
