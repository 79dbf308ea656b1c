#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surfkernel/group.hpp"
#include "surfkernel/orbifold.hpp"

namespace surfkernel {

/// Letters allowed in coset representatives, in their fixed order:
/// x_1 < ... < x_r < a_1 < a_1^-1 < ... < a_g0^-1 < b_1 < b_1^-1 < ... .
/// Inverses of the elliptic generators never appear.
std::vector<Letter> ordered_alphabet(const Signature& sig);

enum class GeneratorClass : std::uint8_t { H, E, M };

char class_code(GeneratorClass c);

/// S_{K,v} = K v bar(Kv)^-1, identified by id = coset * generator_count + v.
struct SchreierGenerator {
  std::uint32_t id = 0;
  std::uint32_t coset = 0;     // position of K in the representative list
  std::uint16_t letter = 0;    // ordinal of the base generator v
  GeneratorClass cls = GeneratorClass::H;
};

struct KernelLetter {
  std::uint32_t generator = 0;  // SchreierGenerator id
  std::int8_t exponent = 1;

  friend bool operator==(const KernelLetter&, const KernelLetter&) = default;
  KernelLetter inverse() const noexcept {
    return {generator, static_cast<std::int8_t>(-exponent)};
  }
};

using KernelWord = std::vector<KernelLetter>;

KernelWord inverse(const KernelWord& word);
KernelWord free_reduce(const KernelWord& word);

struct GeneratorCounts {
  std::size_t hyperbolic = 0;
  std::size_t elliptic = 0;
  std::size_t m = 0;
  std::size_t total() const noexcept { return hyperbolic + elliptic + m; }
};

/// Minimal prefix-closed right coset representatives for ker(phi), chosen
/// breadth-first in length-then-alphabet order.
class SchreierSystem {
 public:
  SchreierSystem(FiniteGroup group, Signature sig, GeneratingVector vec);

  const FiniteGroup& group() const noexcept { return group_; }
  const Signature& signature() const noexcept { return sig_; }
  const GeneratingVector& vector() const noexcept { return vec_; }

  std::size_t size() const noexcept { return reps_.size(); }
  const std::vector<Gamma0Word>& representatives() const noexcept { return reps_; }
  const Gamma0Word& representative(std::size_t coset) const { return reps_.at(coset); }
  GroupElement element_of(std::size_t coset) const { return rep_element_.at(coset); }
  std::uint32_t coset_of(GroupElement g) const { return coset_of_element_.at(g.index); }

  GroupElement phi(const Gamma0Word& word) const;
  /// Index of bar(w).
  std::uint32_t bar(const Gamma0Word& word) const;

  std::size_t generator_count() const noexcept { return generators_.size(); }
  const std::vector<SchreierGenerator>& generators() const noexcept { return generators_; }
  const SchreierGenerator& generator(std::uint32_t id) const { return generators_.at(id); }
  std::uint32_t generator_id(std::uint32_t coset, int letter) const;
  std::uint32_t generator_id_for(GroupElement coset_element, int letter) const;
  GeneratorCounts counts() const noexcept { return counts_; }

  /// "S[K,v]" with K the representative position and v the base letter.
  std::string display(std::uint32_t generator) const;
  std::string display(const KernelWord& word) const;
  std::string format_representative(std::size_t coset) const;

  /// Rewrites w (which must lie in the kernel) letter by letter; no reduction.
  KernelWord rewrite(const Gamma0Word& word) const;
  /// tau of K w K^-1 with phi(K) = g, for a kernel word w; the conjugating
  /// prefix and suffix contribute only M-generators and are left in place.
  KernelWord rewrite_conjugate(GroupElement g, const Gamma0Word& word) const;

  Gamma0Word expand(std::uint32_t generator) const;
  Gamma0Word expand(const KernelWord& word) const;

  /// bar(v^q) == v^q letter for letter for q = 1..m-1, m = order(phi(v)).
  bool is_maximal_power(int letter) const;

 private:
  KernelWord rewrite_from(GroupElement start, const Gamma0Word& word, GroupElement* end) const;

  FiniteGroup group_;
  Signature sig_;
  GeneratingVector vec_;
  std::vector<Gamma0Word> reps_;
  std::vector<GroupElement> rep_element_;
  std::vector<std::uint32_t> coset_of_element_;
  std::vector<SchreierGenerator> generators_;
  GeneratorCounts counts_;
};

SchreierSystem build_schreier_system(const FiniteGroup& group, const Signature& sig,
                                     const GeneratingVector& vec);

/// Representative word of w.
const Gamma0Word& bar(const SchreierSystem& sys, const Gamma0Word& word);
KernelWord rewrite_tau(const SchreierSystem& sys, const Gamma0Word& word);

struct GeneratorClassification {
  std::vector<SchreierGenerator> generators;
  GeneratorCounts counts;
};

GeneratorClassification classify_generators(const SchreierSystem& sys);
bool detect_maximal_power(const SchreierSystem& sys, Gamma0Generator v);

}  // namespace surfkernel
