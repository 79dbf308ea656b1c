#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surfkernel/schreier.hpp"

namespace surfkernel {

/// A relation of the kernel presentation. For relations produced by
/// rewriting K W K^-1, [core_begin, core_end) is the image of W; the rest
/// comes from the conjugating representative and consists of M-generators.
struct KernelRelation {
  KernelWord word;
  std::string tag;
  std::size_t core_begin = 0;
  std::size_t core_end = 0;
};

struct EllipticRelation {
  int letter = 0;               // ordinal of x_j
  std::uint32_t start_coset = 0;  // K with the relation tau(K x_j^m K^-1)
  KernelRelation relation;
};

/// Generators and relations of the kernel from the Reidemeister-Schreier
/// theorem: one R-relation per representative, one E-relation per coset of
/// <phi(x_j)>, and the M-generators set to 1.
struct KernelPresentation {
  std::size_t generator_count = 0;
  std::vector<KernelRelation> r_relations;
  std::vector<EllipticRelation> e_relations;
  std::vector<std::uint32_t> m_generators;
  std::size_t dropped_conjugates = 0;
  std::vector<std::string> notes;

  std::size_t relation_count() const noexcept {
    return r_relations.size() + e_relations.size() + m_generators.size();
  }
};

KernelPresentation kernel_presentation(const SchreierSystem& sys);

/// Checks relation counts and that every non-M generator occurs in the
/// R-relation cores as many times as rewriting predicts. Throws InternalError.
void check_presentation(const SchreierSystem& sys, const KernelPresentation& kp);

enum class EliminationKind { elliptic, glue, m };

const char* to_string(EliminationKind kind);

struct LedgerEntry {
  std::uint32_t generator = 0;
  EliminationKind kind = EliminationKind::m;
  KernelWord expression;  // value of the generator in not-yet-eliminated ones
  std::size_t order = 0;
  KernelWord source;      // relation solved for the generator (empty for M)
  std::string source_tag;
};

class SubstitutionLedger {
 public:
  explicit SubstitutionLedger(std::size_t generator_count = 0);

  void record(LedgerEntry entry);
  bool contains(std::uint32_t generator) const;
  const LedgerEntry& at(std::uint32_t generator) const;
  const std::vector<LedgerEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t count(EliminationKind kind) const;

 private:
  std::vector<LedgerEntry> entries_;
  std::vector<std::int64_t> index_;
};

struct EllipticResult {
  std::vector<KernelRelation> relations;  // modified R-relations
  std::vector<LedgerEntry> entries;
};

/// Solves each E-relation for its last factor and substitutes the solution
/// into the R-relations.
EllipticResult elliptic_eliminate(const SchreierSystem& sys, const KernelPresentation& kp);

struct GlueResult {
  KernelWord merged;
  KernelWord solution;  // X = V2 V1
};

/// Sews rel1 = W1 X W2 and rel2 = V1 X^-1 V2 along X into W1 V2 V1 W2.
GlueResult glue(const KernelWord& rel1, const KernelWord& rel2, std::uint32_t x);

enum class GluingStrategy { sequential, cycles };

struct StageSnapshot {
  std::string stage;
  std::size_t generators = 0;
  std::size_t relations = 0;
};

struct ReducedPresentation {
  std::vector<std::uint32_t> survivors;
  KernelWord final_relation;
  SubstitutionLedger ledger;
  std::vector<StageSnapshot> snapshots;
  GluingStrategy strategy = GluingStrategy::sequential;
  std::vector<std::size_t> cycle_lengths;  // only for the cycles strategy
  std::vector<std::string> log;
};

/// Elliptic elimination, n - 1 gluings, then M-removal.
ReducedPresentation reduce_to_single_relation(const SchreierSystem& sys, const KernelPresentation& kp,
                                              GluingStrategy strategy = GluingStrategy::sequential);

struct AuditLine {
  std::string stage;
  std::size_t expected_generators = 0;
  std::size_t generators = 0;
  std::size_t expected_relations = 0;
  std::size_t relations = 0;
  bool passed = false;
};

struct AuditReport {
  std::vector<AuditLine> lines;
  std::vector<std::string> notes;
  bool ok() const noexcept;
};

AuditReport count_audit(const SchreierSystem& sys, const std::vector<StageSnapshot>& snapshots);

}  // namespace surfkernel
