#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surfkernel/group.hpp"

namespace surfkernel {

/// Orbit genus and branch periods of the orbifold group.
struct Signature {
  int orbit_genus = 0;
  std::vector<int> periods;

  int period_count() const noexcept { return static_cast<int>(periods.size()); }
  int generator_count() const noexcept { return 2 * orbit_genus + period_count(); }
};

enum class GeneratorKind : std::uint8_t { a, b, x };

/// A canonical generator a_i, b_i or x_j (1-based index).
struct Gamma0Generator {
  GeneratorKind kind = GeneratorKind::x;
  int index = 1;

  friend bool operator==(const Gamma0Generator&, const Gamma0Generator&) = default;
};

/// Position of a generator in the presentation order a_1..a_g0, b_1..b_g0, x_1..x_r.
int generator_ordinal(const Signature& sig, Gamma0Generator gen);
Gamma0Generator generator_at(const Signature& sig, int ordinal);
std::string generator_name(const Signature& sig, int ordinal);

/// One letter of a word over the orbifold generators.
struct Letter {
  std::uint16_t generator = 0;  // ordinal
  std::int8_t exponent = 1;     // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
  Letter inverse() const noexcept { return {generator, static_cast<std::int8_t>(-exponent)}; }
};

using Gamma0Word = std::vector<Letter>;

Gamma0Word inverse(const Gamma0Word& word);
Gamma0Word concat(const Gamma0Word& lhs, const Gamma0Word& rhs);
Gamma0Word free_reduce(const Gamma0Word& word);
/// Free reduction followed by removal of cancelling first/last letters.
Gamma0Word cyclic_reduce(const Gamma0Word& word);
/// True when the cyclically reduced words agree up to rotation.
bool cyclically_equal(const Gamma0Word& lhs, const Gamma0Word& rhs);
std::string format_word(const Signature& sig, const Gamma0Word& word);

struct Gamma0Presentation {
  std::vector<Gamma0Generator> generators;
  Gamma0Word long_relation;
  std::vector<Gamma0Word> power_relations;  // x_j^{m_j}
};

Gamma0Presentation gamma0_presentation(const Signature& sig);
/// (prod [a_i, b_i]) x_1 ... x_r
Gamma0Word long_relation(const Signature& sig);

/// Images of the canonical generators under the surface-kernel map.
struct GeneratingVector {
  std::vector<GroupElement> a;
  std::vector<GroupElement> b;
  std::vector<GroupElement> x;

  friend bool operator==(const GeneratingVector&, const GeneratingVector&) = default;
};

GroupElement generator_image(const Signature& sig, const GeneratingVector& vec, int ordinal);
GroupElement evaluate(const FiniteGroup& group, const Signature& sig, const GeneratingVector& vec,
                      const Gamma0Word& word);

struct VectorCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<VectorCheck> checks;  // long relation, orders, generation
  bool ok() const noexcept;
};

/// Checks the long relation, exact periods and surjectivity.
ValidationReport validate_generating_vector(const FiniteGroup& group, const Signature& sig,
                                            const GeneratingVector& vec);

/// Genus of the covering surface from the Riemann-Hurwitz relation.
/// Throws GenusError unless the value is an integer >= 2.
int riemann_hurwitz_genus(std::size_t group_order, const Signature& sig);

enum class AutomorphismKind { U, B, R, sigma, Z, B_mixed, U_mixed };

/// A generating-vector automorphism. i is a handle index (1-based); j is an
/// elliptic index for the mixed kinds.
struct Automorphism {
  AutomorphismKind kind = AutomorphismKind::U;
  int i = 1;
  int j = 0;

  std::string name() const;
};

/// Image of every canonical generator (by ordinal) as a word in the originals.
std::vector<Gamma0Word> automorphism_images(const Signature& sig, const Automorphism& automorphism);

GeneratingVector apply_automorphism(const FiniteGroup& group, const Signature& sig,
                                    const GeneratingVector& vec, const Automorphism& automorphism);

/// Every automorphism applicable to the signature, in a fixed order.
std::vector<Automorphism> all_automorphisms(const Signature& sig);

struct NormalizedVector {
  GeneratingVector vector;
  std::vector<std::string> provenance;  // automorphisms applied, in order
};

/// Searches breadth-first (up to max_depth applications) for a vector whose
/// handles have distinct alpha/beta images, preferring handles with no
/// identity image. Throws NormalizationError when nothing is found.
NormalizedVector normalize_vector(const FiniteGroup& group, const Signature& sig,
                                  const GeneratingVector& vec, int max_depth = 6);

}  // namespace surfkernel
