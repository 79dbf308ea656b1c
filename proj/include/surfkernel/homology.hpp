#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surfkernel/matrix.hpp"
#include "surfkernel/reducer.hpp"
#include "surfkernel/schreier.hpp"

namespace surfkernel {

/// Integer coordinates over the surviving generators.
using HomologyVector = std::vector<std::int64_t>;

/// Every Schreier generator resolved to survivor coordinates through the
/// ledger. Immutable after construction, so safe to share across threads.
class HomologyBasis {
 public:
  /// Throws LedgerError when a generator is neither a survivor nor resolvable.
  HomologyBasis(const SchreierSystem& sys, const ReducedPresentation& reduced);

  const SchreierSystem& system() const noexcept { return *sys_; }
  std::size_t rank() const noexcept { return survivors_.size(); }
  const std::vector<std::uint32_t>& survivors() const noexcept { return survivors_; }
  const HomologyVector& resolved(std::uint32_t generator) const { return resolved_.at(generator); }

  HomologyVector abelianize(const KernelWord& word) const;
  /// g_K(s) = tau(K s K^-1) with phi(K) = g, abelianized.
  HomologyVector act(GroupElement g, std::uint32_t generator) const;

 private:
  const SchreierSystem* sys_;
  std::vector<std::uint32_t> survivors_;
  std::vector<HomologyVector> resolved_;
};

HomologyVector abelianize(const KernelWord& word, const HomologyBasis& basis);
HomologyVector act(const HomologyBasis& basis, GroupElement g, std::uint32_t generator);

struct ActionMatrix {
  GroupElement element;
  std::string label;
  IntMatrix matrix;  // row i holds the coordinates of g(survivor i)
};

ActionMatrix action_matrix(const HomologyBasis& basis, GroupElement g);
/// One matrix per group element, in element order. jobs > 1 computes them
/// on that many threads.
std::vector<ActionMatrix> full_representation(const HomologyBasis& basis, unsigned jobs = 1);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Representation law (rho(g) rho(h) = rho(hg) for row vectors), identity,
/// element orders and determinants.
std::vector<Check> check_representation(const FiniteGroup& group, const std::vector<ActionMatrix>& rep,
                                        std::size_t max_law_pairs = 1'000'000);

/// Number of points of the surface fixed by g, counted as cosets of the
/// branch stabilizers. Throws DomainError for the identity.
std::size_t fixed_point_count(const FiniteGroup& group, const Signature& sig, const GeneratingVector& vec,
                              GroupElement g);

struct LefschetzLine {
  GroupElement element;
  std::string label;
  std::int64_t trace = 0;
  std::int64_t expected = 0;
  std::size_t fixed_points = 0;  // 0 for the identity
  bool passed = false;
};

struct LefschetzReport {
  std::vector<LefschetzLine> lines;
  std::int64_t trace_sum = 0;
  std::int64_t expected_sum = 0;
  bool ok() const noexcept;
};

LefschetzReport lefschetz_check(const FiniteGroup& group, const Signature& sig, const GeneratingVector& vec,
                                const std::vector<ActionMatrix>& rep);
/// Throws VerificationError naming the first mismatch.
void verify_lefschetz(const LefschetzReport& report);

enum class BasisItem { free_orbit, cyclic_block, translate, fixed_by_subgroup, unclassified };

const char* to_string(BasisItem item);

struct SurvivorClass {
  std::uint32_t generator = 0;
  std::string name;
  BasisItem item = BasisItem::unclassified;
  std::string detail;
};

/// gamma, h gamma, ..., h^{m-2} gamma as basis positions, with
/// h^{m-1} gamma = -(sum of them).
struct CyclicBlock {
  GroupElement h;
  std::string label;
  int order = 0;
  std::vector<std::size_t> members;
};

struct ElementInventory {
  GroupElement element;
  std::string label;
  std::vector<std::size_t> super_permutation_blocks;  // block sizes
  std::vector<std::size_t> permutation_cycles;        // cycle lengths
  std::size_t m_rows = 0;
  std::size_t fixed_dimension = 0;
  std::size_t fixed_points = 0;
};

struct RemovedGenerator {
  std::uint32_t generator = 0;
  std::string name;
  std::string expansion;
};

struct AdaptedBasisReport {
  std::vector<SurvivorClass> survivors;
  std::vector<CyclicBlock> blocks;
  std::vector<ElementInventory> inventory;
  std::vector<RemovedGenerator> removed;
  std::vector<Check> checks;
  std::vector<std::string> flags;
  std::vector<std::uint32_t> unclassified;

  std::size_t count(BasisItem item) const;
};

/// Builds the report without throwing on unclassified survivors.
AdaptedBasisReport build_adapted_basis_report(const HomologyBasis& basis, const ReducedPresentation& reduced,
                                              const std::vector<ActionMatrix>& rep);
/// As above, but throws ClassificationError when a survivor fits no item.
AdaptedBasisReport adapted_basis_report(const HomologyBasis& basis, const ReducedPresentation& reduced,
                                        const std::vector<ActionMatrix>& rep);

}  // namespace surfkernel
