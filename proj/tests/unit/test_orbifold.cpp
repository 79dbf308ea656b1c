#include <doctest.h>

#include "surfkernel/errors.hpp"
#include "surfkernel/orbifold.hpp"

using namespace surfkernel;

namespace {

FiniteGroup z5x5() { return build_group(AbelianSpec{{5, 5}}); }

GeneratingVector worked_vector(const FiniteGroup& g) {
  GeneratingVector v;
  for (auto c : std::vector<std::vector<int>>{{3, 0}, {4, 4}, {1, 2}, {1, 3}, {1, 4}, {0, 2}})
    v.x.push_back(g.abelian_element(c));
  return v;
}

const Signature worked_sig{0, {5, 5, 5, 5, 5, 5}};
const Signature hyper_sig{0, {2, 2, 2, 2, 2, 2}};

}  // namespace

TEST_CASE("presentations") {
  auto p = gamma0_presentation(worked_sig);
  CHECK(p.generators.size() == 6);
  CHECK(format_word(worked_sig, p.long_relation) == "x1 x2 x3 x4 x5 x6");
  REQUIRE(p.power_relations.size() == 6);
  CHECK(p.power_relations[0].size() == 5);

  Signature two{2, {}};
  auto q = gamma0_presentation(two);
  CHECK(q.generators.size() == 4);
  CHECK(q.power_relations.empty());
  CHECK(format_word(two, q.long_relation) == "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1");

  Signature one{1, {2}};
  CHECK(format_word(one, long_relation(one)) == "a1 b1 a1^-1 b1^-1 x1");
  CHECK(generator_name(one, 2) == "x1");
  CHECK_THROWS_AS(generator_at(one, 3), IndexError);
}

TEST_CASE("validation") {
  FiniteGroup g = z5x5();
  GeneratingVector v = worked_vector(g);
  CHECK(validate_generating_vector(g, worked_sig, v).ok());

  v.x[5] = g.identity();
  CHECK_FALSE(validate_generating_vector(g, worked_sig, v).ok());

  FiniteGroup z2 = build_group(AbelianSpec{{2}});
  GeneratingVector h{{}, {}, std::vector<GroupElement>(6, GroupElement{1})};
  CHECK(validate_generating_vector(z2, hyper_sig, h).ok());
  h.x.pop_back();
  CHECK_THROWS_AS(validate_generating_vector(z2, hyper_sig, h), ShapeError);
}

TEST_CASE("Riemann-Hurwitz") {
  CHECK(riemann_hurwitz_genus(25, worked_sig) == 36);
  CHECK(riemann_hurwitz_genus(2, hyper_sig) == 2);
  CHECK(riemann_hurwitz_genus(1, Signature{3, {}}) == 3);
  try {
    riemann_hurwitz_genus(2, Signature{1, {2}});
    FAIL("expected GenusError");
  } catch (const GenusError& e) {
    CHECK(e.numerator() == 3);
    CHECK(e.denominator() == 2);
  }
  CHECK_THROWS_AS(riemann_hurwitz_genus(1, Signature{1, {}}), GenusError);
}

TEST_CASE("handle automorphisms") {
  FiniteGroup g = z5x5();
  Signature sig{1, {}};
  GeneratingVector v{{g.abelian_element({1, 0})}, {g.abelian_element({0, 1})}, {}};
  GeneratingVector u = apply_automorphism(g, sig, v, {AutomorphismKind::U, 1});
  CHECK(u.b[0] == g.abelian_element({1, 1}));
  CHECK(u.a[0] == v.a[0]);
  GeneratingVector b = apply_automorphism(g, sig, v, {AutomorphismKind::B, 1});
  CHECK(b.a[0] == g.abelian_element({1, 1}));
  CHECK_THROWS_AS(apply_automorphism(g, sig, v, {AutomorphismKind::U, 2}), IndexError);
}

TEST_CASE("every automorphism preserves the long relation in the free group") {
  for (Signature sig : {Signature{2, {}}, Signature{2, {3, 3}}, Signature{3, {2, 4, 4}}, Signature{1, {5}}}) {
    const Gamma0Word rel = long_relation(sig);
    for (const Automorphism& aut : all_automorphisms(sig)) {
      auto images = automorphism_images(sig, aut);
      Gamma0Word image;
      for (const Letter& l : rel) {
        Gamma0Word w = images.at(l.generator);
        image = concat(image, l.exponent > 0 ? w : inverse(w));
      }
      INFO(aut.name());
      CHECK(cyclically_equal(image, rel));
    }
  }
}

TEST_CASE("automorphisms keep vectors valid in S3") {
  FiniteGroup s3 = build_group(PermutationSpec{3, {{1, 2, 0}, {1, 0, 2}}});
  Signature sig{2, {2, 2}};
  auto els = s3.elements();
  // Find any valid vector, then push it through every automorphism.
  GeneratingVector found;
  bool have = false;
  for (auto a1 : els)
    for (auto b1 : els)
      for (auto x1 : els)
        if (!have && element_order(s3, x1) == 2) {
          GeneratingVector v{{a1, els[0]}, {b1, els[0]}, {x1, x1}};
          if (validate_generating_vector(s3, sig, v).ok()) found = v, have = true;
        }
  REQUIRE(have);
  for (const Automorphism& aut : all_automorphisms(sig)) {
    INFO(aut.name());
    CHECK(validate_generating_vector(s3, sig, apply_automorphism(s3, sig, found, aut)).ok());
  }
}

TEST_CASE("normalization") {
  FiniteGroup g = z5x5();
  NormalizedVector same = normalize_vector(g, worked_sig, worked_vector(g));
  CHECK(same.vector == worked_vector(g));
  CHECK(same.provenance.empty());

  // alpha = beta = 1 in Z2 lands both handle letters in one coset.
  FiniteGroup z2 = build_group(AbelianSpec{{2}});
  Signature sig{1, {2, 2}};
  GeneratingVector v{{GroupElement{1}}, {GroupElement{1}}, {GroupElement{1}, GroupElement{1}}};
  REQUIRE(validate_generating_vector(z2, sig, v).ok());
  NormalizedVector n = normalize_vector(z2, sig, v);
  CHECK(n.vector != v);
  CHECK_FALSE(n.provenance.empty());
  CHECK(n.vector.a[0] != n.vector.b[0]);
  CHECK(validate_generating_vector(z2, sig, n.vector).ok());

  // Distinct, non-identity handle images: untouched.
  Signature hs{1, {5, 5}};
  GeneratingVector ok{{g.abelian_element({1, 0})}, {g.abelian_element({0, 1})},
                      {g.abelian_element({1, 1}), g.abelian_element({4, 4})}};
  REQUIRE(validate_generating_vector(g, hs, ok).ok());
  NormalizedVector kept = normalize_vector(g, hs, ok);
  CHECK(kept.vector == ok);
  CHECK(kept.provenance.empty());
}

TEST_CASE("word helpers") {
  Gamma0Word w{{0, 1}, {1, 1}, {1, -1}, {2, 1}, {0, -1}};
  CHECK(free_reduce(w) == Gamma0Word{{0, 1}, {2, 1}, {0, -1}});
  CHECK(cyclic_reduce(w) == Gamma0Word{{2, 1}});
  CHECK(free_reduce(concat(w, inverse(w))).empty());
  CHECK(cyclically_equal(Gamma0Word{{0, 1}, {1, 1}}, Gamma0Word{{1, 1}, {0, 1}}));
  CHECK_FALSE(cyclically_equal(Gamma0Word{{0, 1}, {1, 1}}, Gamma0Word{{1, 1}, {0, -1}}));
}
