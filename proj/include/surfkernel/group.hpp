#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace surfkernel {

/// An element of a FiniteGroup, identified by its canonical index.
struct GroupElement {
  std::uint32_t index = 0;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Z_{n_1} x ... x Z_{n_k}; elements are tuples ordered mixed-radix with the
/// first coordinate most significant.
struct AbelianSpec {
  std::vector<int> invariants;
};

/// Explicit Cayley table over 0..n-1; entry [a][b] is the product a*b.
struct TableSpec {
  std::vector<std::vector<int>> table;
};

/// Subgroup of Sym(degree) generated by permutations given as image lists
/// (0-based). Elements are enumerated breadth-first over the generators.
struct PermutationSpec {
  int degree = 0;
  std::vector<std::vector<int>> generators;
  std::size_t max_order = 1'000'000;
};

using GroupSpec = std::variant<AbelianSpec, TableSpec, PermutationSpec>;

enum class GroupKind { abelian, table, permutation };

/// One left coset g<h>, tagged with its least element.
struct Coset {
  GroupElement representative;
  std::vector<GroupElement> members;  // rep, rep*h, rep*h^2, ...
};

/// A finite group with table-backed multiplication. Immutable; copies share
/// storage.
class FiniteGroup {
 public:
  FiniteGroup();

  std::size_t order() const noexcept;
  GroupElement identity() const noexcept;
  GroupKind kind() const noexcept;

  GroupElement multiply(GroupElement a, GroupElement b) const;
  GroupElement inverse(GroupElement a) const;
  GroupElement power(GroupElement a, long long exponent) const;
  GroupElement commutator(GroupElement a, GroupElement b) const;  // a b a^-1 b^-1
  bool contains(GroupElement a) const noexcept;

  std::vector<GroupElement> elements() const;
  const std::string& label(GroupElement a) const;

  /// Abelian invariants when kind() == abelian, else empty.
  const std::vector<int>& abelian_invariants() const noexcept;
  /// Coordinates of an abelian element.
  std::vector<int> abelian_coordinates(GroupElement a) const;
  /// Element from (unreduced) abelian coordinates.
  GroupElement abelian_element(const std::vector<int>& coordinates) const;
  /// Permutation images when kind() == permutation.
  const std::vector<int>& permutation(GroupElement a) const;

  /// Subgroup generated by the given elements, in BFS discovery order.
  std::vector<GroupElement> generated_subgroup(const std::vector<GroupElement>& gens) const;

  friend FiniteGroup build_group(const GroupSpec& spec);

  struct Impl;

 private:
  explicit FiniteGroup(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

FiniteGroup build_group(const GroupSpec& spec);

/// Least m >= 1 with g^m = id.
int element_order(const FiniteGroup& group, GroupElement g);

/// Partition of G into left cosets g<h>, sorted by representative index.
std::vector<Coset> left_cosets_of_cyclic(const FiniteGroup& group, GroupElement h);

}  // namespace surfkernel
