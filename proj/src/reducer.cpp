#include "surfkernel/reducer.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "surfkernel/errors.hpp"

namespace surfkernel {

namespace {

KernelRelation conjugate_relation(const SchreierSystem& sys, std::uint32_t coset, const Gamma0Word& w,
                                  std::string tag) {
  const Gamma0Word& k = sys.representative(coset);
  KernelRelation rel;
  rel.word = sys.rewrite(concat(concat(k, w), inverse(k)));
  rel.tag = std::move(tag);
  rel.core_begin = k.size();
  rel.core_end = k.size() + w.size();
  return rel;
}

bool is_m(const SchreierSystem& sys, std::uint32_t id) {
  return sys.generator(id).cls == GeneratorClass::M;
}

// Value of x solved from word = W1 x^e W2, where position holds x^e.
KernelWord solve_at(const KernelWord& word, std::size_t position) {
  KernelWord w1(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(position));
  KernelWord w2(word.begin() + static_cast<std::ptrdiff_t>(position) + 1, word.end());
  KernelWord out;
  if (word[position].exponent > 0) {
    out = inverse(w1);
    KernelWord t = inverse(w2);
    out.insert(out.end(), t.begin(), t.end());
  } else {
    out = w2;
    out.insert(out.end(), w1.begin(), w1.end());
  }
  return free_reduce(out);
}

KernelWord substitute(const KernelWord& word, std::uint32_t x, const KernelWord& value) {
  KernelWord out;
  out.reserve(word.size());
  KernelWord value_inv;
  bool have_inv = false;
  for (const KernelLetter& l : word) {
    if (l.generator != x) {
      out.push_back(l);
      continue;
    }
    if (l.exponent > 0) {
      out.insert(out.end(), value.begin(), value.end());
    } else {
      if (!have_inv) {
        value_inv = inverse(value);
        have_inv = true;
      }
      out.insert(out.end(), value_inv.begin(), value_inv.end());
    }
  }
  return out;
}

std::size_t occurrences(const KernelWord& word, std::uint32_t x) {
  return static_cast<std::size_t>(
      std::count_if(word.begin(), word.end(), [x](const KernelLetter& l) { return l.generator == x; }));
}

}  // namespace

KernelPresentation kernel_presentation(const SchreierSystem& sys) {
  const Signature& sig = sys.signature();
  const FiniteGroup& group = sys.group();
  const std::size_t n = sys.size();

  KernelPresentation kp;
  kp.generator_count = sys.generator_count();

  const Gamma0Word r = long_relation(sig);
  for (std::uint32_t k = 0; k < n; ++k)
    kp.r_relations.push_back(conjugate_relation(sys, k, r, "R[" + std::to_string(k) + "]"));

  for (int j = 1; j <= sig.period_count(); ++j) {
    const int letter = generator_ordinal(sig, {GeneratorKind::x, j});
    const int m = sig.periods[static_cast<std::size_t>(j - 1)];
    const GroupElement h = generator_image(sig, sys.vector(), letter);
    const Gamma0Word power(static_cast<std::size_t>(m), Letter{static_cast<std::uint16_t>(letter), 1});

    for (const Coset& coset : left_cosets_of_cyclic(group, h)) {
      // Rotate the starting point until the last factor S_{bar(K x^{m-1}), x}
      // is not an M-generator; some factor always is not.
      std::optional<GroupElement> start;
      for (int s = 0; s < m && !start; ++s) {
        GroupElement k = coset.members[static_cast<std::size_t>(s)];
        GroupElement last = group.multiply(k, group.power(h, m - 1));
        if (!is_m(sys, sys.generator_id_for(last, letter))) start = k;
      }
      if (!start) throw InternalError("elliptic relation consists of M-generators only");
      const std::uint32_t coset_index = sys.coset_of(*start);
      EllipticRelation e;
      e.letter = letter;
      e.start_coset = coset_index;
      e.relation = conjugate_relation(sys, coset_index, power,
                                      "E[" + generator_name(sig, letter) + "," + std::to_string(coset_index) + "]");
      kp.e_relations.push_back(std::move(e));
    }
    kp.dropped_conjugates += n - n / static_cast<std::size_t>(m);
  }

  for (const SchreierGenerator& s : sys.generators())
    if (s.cls == GeneratorClass::M) kp.m_generators.push_back(s.id);

  if (kp.dropped_conjugates > 0) {
    kp.notes.push_back("dropped " + std::to_string(kp.dropped_conjugates) +
                       " elliptic relations that are cyclic conjugates of kept ones");
  }
  return kp;
}

void check_presentation(const SchreierSystem& sys, const KernelPresentation& kp) {
  const Signature& sig = sys.signature();
  const std::size_t n = sys.size();
  std::size_t expected_e = 0;
  for (int m : sig.periods) expected_e += n / static_cast<std::size_t>(m);
  if (kp.r_relations.size() != n || kp.e_relations.size() != expected_e || kp.m_generators.size() != n - 1)
    throw InternalError("kernel presentation relation counts do not match the closed forms");

  std::vector<int> plus(sys.generator_count(), 0), minus(sys.generator_count(), 0);
  for (const KernelRelation& rel : kp.r_relations)
    for (std::size_t p = rel.core_begin; p < rel.core_end; ++p)
      (rel.word[p].exponent > 0 ? plus : minus)[rel.word[p].generator]++;

  for (const SchreierGenerator& s : sys.generators()) {
    if (s.cls == GeneratorClass::M) continue;
    const bool elliptic = generator_at(sig, s.letter).kind == GeneratorKind::x;
    const int want_minus = elliptic ? 0 : 1;
    if (plus[s.id] != 1 || minus[s.id] != want_minus)
      throw InternalError("generator " + sys.display(s.id) + " occurs " + std::to_string(plus[s.id]) +
                          "/" + std::to_string(minus[s.id]) + " times in the R-relations");
  }
}

const char* to_string(EliminationKind kind) {
  switch (kind) {
    case EliminationKind::elliptic: return "elliptic";
    case EliminationKind::glue: return "glue";
    case EliminationKind::m: return "M";
  }
  return "?";
}

SubstitutionLedger::SubstitutionLedger(std::size_t generator_count) : index_(generator_count, -1) {}

void SubstitutionLedger::record(LedgerEntry entry) {
  if (entry.generator >= index_.size()) index_.resize(entry.generator + 1, -1);
  if (index_[entry.generator] >= 0) throw LedgerError("generator eliminated twice");
  entry.order = entries_.size();
  index_[entry.generator] = static_cast<std::int64_t>(entries_.size());
  entries_.push_back(std::move(entry));
}

bool SubstitutionLedger::contains(std::uint32_t g) const {
  return g < index_.size() && index_[g] >= 0;
}

const LedgerEntry& SubstitutionLedger::at(std::uint32_t g) const {
  if (!contains(g)) throw LedgerError("generator has no ledger entry");
  return entries_[static_cast<std::size_t>(index_[g])];
}

std::size_t SubstitutionLedger::count(EliminationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [kind](const LedgerEntry& e) { return e.kind == kind; }));
}

EllipticResult elliptic_eliminate(const SchreierSystem& sys, const KernelPresentation& kp) {
  EllipticResult result;
  result.relations = kp.r_relations;
  std::vector<bool> eliminated(sys.generator_count(), false);
  std::vector<KernelWord> pending;
  for (const auto& e : kp.e_relations) pending.push_back(e.relation.word);

  for (std::size_t idx = 0; idx < kp.e_relations.size(); ++idx) {
    const EllipticRelation& e = kp.e_relations[idx];
    const KernelWord& word = pending[idx];
    const std::size_t pos = e.relation.core_end - 1;
    const std::uint32_t x = word[pos].generator;
    if (eliminated[x] || is_m(sys, x))
      throw InternalError("last factor of " + e.relation.tag + " cannot be eliminated");
    KernelWord value = solve_at(word, pos);

    LedgerEntry entry;
    entry.generator = x;
    entry.kind = EliminationKind::elliptic;
    entry.expression = value;
    entry.source = word;
    entry.source_tag = e.relation.tag;
    result.entries.push_back(std::move(entry));
    eliminated[x] = true;

    for (auto& rel : result.relations) rel.word = substitute(rel.word, x, value);
    for (std::size_t later = idx + 1; later < pending.size(); ++later)
      pending[later] = substitute(pending[later], x, value);
  }
  return result;
}

GlueResult glue(const KernelWord& rel1, const KernelWord& rel2, std::uint32_t x) {
  if (occurrences(rel1, x) != 1 || occurrences(rel2, x) != 1)
    throw GlueError("gluing generator must occur exactly once in each relation");
  auto p1 = std::find_if(rel1.begin(), rel1.end(), [x](const KernelLetter& l) { return l.generator == x; });
  auto p2 = std::find_if(rel2.begin(), rel2.end(), [x](const KernelLetter& l) { return l.generator == x; });
  if (p1->exponent != 1 || p2->exponent != -1)
    throw GlueError("gluing needs X in the first relation and X^-1 in the second");

  KernelWord w1(rel1.begin(), p1), w2(p1 + 1, rel1.end());
  KernelWord v1(rel2.begin(), p2), v2(p2 + 1, rel2.end());
  GlueResult out;
  out.merged = w1;
  out.merged.insert(out.merged.end(), v2.begin(), v2.end());
  out.merged.insert(out.merged.end(), v1.begin(), v1.end());
  out.merged.insert(out.merged.end(), w2.begin(), w2.end());
  out.solution = v2;
  out.solution.insert(out.solution.end(), v1.begin(), v1.end());
  out.solution = free_reduce(out.solution);
  return out;
}

namespace {

class Pipeline {
 public:
  Pipeline(const SchreierSystem& sys, const KernelPresentation& kp, GluingStrategy strategy)
      : sys_(sys), kp_(kp), strategy_(strategy) {
    out_.ledger = SubstitutionLedger(sys.generator_count());
    out_.strategy = strategy;
  }

  ReducedPresentation run() {
    const std::size_t n = sys_.size();
    snapshot("initial", kp_.relation_count());

    EllipticResult er = elliptic_eliminate(sys_, kp_);
    for (auto& e : er.entries) out_.ledger.record(std::move(e));
    for (auto& rel : er.relations) {
      relations_.push_back(std::move(rel.word));
      tags_.push_back(std::move(rel.tag));
    }
    alive_.assign(relations_.size(), true);
    index_holders();
    snapshot("elliptic", relations_.size() + kp_.m_generators.size());

    for (std::size_t step = 0; step + 1 < n; ++step) glue_step();
    if (strategy_ == GluingStrategy::cycles && current_cycle_ > 0) out_.cycle_lengths.push_back(current_cycle_);
    snapshot("glue", 1 + kp_.m_generators.size());

    remove_m();
    snapshot("M", 1);
    return std::move(out_);
  }

 private:
  void snapshot(const char* stage, std::size_t relations) {
    out_.snapshots.push_back({stage, sys_.generator_count() - out_.ledger.size(), relations});
  }

  std::string dump_state() const {
    std::ostringstream out;
    out << "live relations:\n";
    for (std::size_t i = 0; i < relations_.size(); ++i)
      if (alive_[i]) out << "  " << tags_[i] << ": " << sys_.display(relations_[i]) << '\n';
    return out.str();
  }

  // Live relation other than `self` that contains generator y.
  std::optional<std::size_t> partner(std::uint32_t y, std::size_t self) const {
    for (std::size_t i : holders_[y])
      if (alive_[i] && i != self) return i;
    return std::nullopt;
  }

  void index_holders() {
    holders_.assign(sys_.generator_count(), {});
    for (std::size_t i = 0; i < relations_.size(); ++i)
      for (const KernelLetter& l : relations_[i]) {
        auto& h = holders_[l.generator];
        if (std::find(h.begin(), h.end(), i) == h.end()) h.push_back(i);
      }
  }

  void glue_step() {
    const std::size_t w = 0;
    const KernelWord& work = relations_[w];

    struct Candidate {
      std::size_t position;
      std::size_t other;
    };
    std::optional<Candidate> chosen, fallback;
    std::vector<std::uint32_t> in_work(sys_.generator_count(), 0);
    for (const KernelLetter& l : work) ++in_work[l.generator];
    for (std::size_t p = 0; p < work.size(); ++p) {
      const std::uint32_t y = work[p].generator;
      if (is_m(sys_, y) || in_work[y] != 1) continue;
      auto other = partner(y, w);
      if (!other || occurrences(relations_[*other], y) != 1) continue;
      Candidate c{p, *other};
      if (strategy_ == GluingStrategy::sequential) {
        chosen = c;
        break;
      }
      if (!fallback) fallback = c;
      if (cycle_letter_ && sys_.generator(y).letter == *cycle_letter_) {
        chosen = c;
        break;
      }
    }
    if (!chosen && fallback) {
      chosen = fallback;
      if (current_cycle_ > 0) out_.cycle_lengths.push_back(current_cycle_);
      current_cycle_ = 0;
      cycle_letter_ = sys_.generator(work[fallback->position].generator).letter;
    }
    if (!chosen) {
      throw ReductionError("no gluing generator available after " +
                           std::to_string(out_.ledger.count(EliminationKind::glue)) + " gluings\n" +
                           dump_state());
    }

    const std::uint32_t x = work[chosen->position].generator;
    const bool positive = work[chosen->position].exponent > 0;
    const std::size_t other = chosen->other;
    GlueResult g = positive ? glue(relations_[w], relations_[other], x)
                            : glue(relations_[other], relations_[w], x);

    LedgerEntry entry;
    entry.generator = x;
    entry.kind = EliminationKind::glue;
    entry.expression = g.solution;
    entry.source = positive ? relations_[other] : relations_[w];
    entry.source_tag = positive ? tags_[other] : tags_[w];
    out_.ledger.record(std::move(entry));
    out_.log.push_back("glued " + tags_[w] + " and " + tags_[other] + " along " + sys_.display(x));

    for (const KernelLetter& l : relations_[other]) {
      auto& h = holders_[l.generator];
      if (std::find(h.begin(), h.end(), w) == h.end()) h.push_back(w);
    }
    relations_[w] = std::move(g.merged);
    alive_[other] = false;
    ++current_cycle_;
  }

  void remove_m() {
    for (std::uint32_t m : kp_.m_generators) {
      LedgerEntry entry;
      entry.generator = m;
      entry.kind = EliminationKind::m;
      out_.ledger.record(std::move(entry));
    }
    for (const KernelLetter& l : relations_[0])
      if (!is_m(sys_, l.generator)) out_.final_relation.push_back(l);

    for (std::uint32_t id = 0; id < sys_.generator_count(); ++id)
      if (!out_.ledger.contains(id)) out_.survivors.push_back(id);

    const int genus = riemann_hurwitz_genus(sys_.size(), sys_.signature());
    if (out_.survivors.size() != static_cast<std::size_t>(2 * genus)) {
      throw ReductionError("reduction left " + std::to_string(out_.survivors.size()) +
                           " generators, expected 2g = " + std::to_string(2 * genus));
    }
    std::map<std::uint32_t, std::pair<int, int>> seen;
    for (const KernelLetter& l : out_.final_relation) {
      auto& [plus, minus] = seen[l.generator];
      (l.exponent > 0 ? plus : minus)++;
    }
    bool shape_ok = seen.size() == out_.survivors.size();
    for (std::uint32_t s : out_.survivors) {
      auto it = seen.find(s);
      shape_ok = shape_ok && it != seen.end() && it->second == std::make_pair(1, 1);
    }
    if (!shape_ok) {
      throw ReductionError("final relation does not contain every survivor and its inverse exactly once: " +
                           sys_.display(out_.final_relation));
    }
  }

  const SchreierSystem& sys_;
  const KernelPresentation& kp_;
  GluingStrategy strategy_;
  ReducedPresentation out_;
  std::vector<KernelWord> relations_;
  std::vector<std::string> tags_;
  std::vector<bool> alive_;
  std::vector<std::vector<std::size_t>> holders_;
  std::optional<int> cycle_letter_;
  std::size_t current_cycle_ = 0;
};

}  // namespace

ReducedPresentation reduce_to_single_relation(const SchreierSystem& sys, const KernelPresentation& kp,
                                              GluingStrategy strategy) {
  return Pipeline(sys, kp, strategy).run();
}

bool AuditReport::ok() const noexcept {
  return std::all_of(lines.begin(), lines.end(), [](const AuditLine& l) { return l.passed; });
}

AuditReport count_audit(const SchreierSystem& sys, const std::vector<StageSnapshot>& snapshots) {
  const Signature& sig = sys.signature();
  const std::size_t n = sys.size();
  const auto g0 = static_cast<std::size_t>(sig.orbit_genus);
  const auto r = static_cast<std::size_t>(sig.period_count());
  std::size_t elliptic = 0;
  for (int m : sig.periods) elliptic += n / static_cast<std::size_t>(m);

  const std::size_t initial = 2 * n * g0 + n * r;
  const std::size_t genus = static_cast<std::size_t>(riemann_hurwitz_genus(n, sig));
  const std::map<std::string, std::pair<std::size_t, std::size_t>> expected{
      {"initial", {initial, n + (n - 1) + elliptic}},
      {"elliptic", {initial - elliptic, n + (n - 1)}},
      {"glue", {initial - elliptic - (n - 1), 1 + (n - 1)}},
      {"M", {2 * genus, 1}},
  };

  AuditReport report;
  for (const StageSnapshot& s : snapshots) {
    AuditLine line;
    line.stage = s.stage;
    line.generators = s.generators;
    line.relations = s.relations;
    auto it = expected.find(s.stage);
    if (it != expected.end()) {
      line.expected_generators = it->second.first;
      line.expected_relations = it->second.second;
      line.passed = line.generators == line.expected_generators && line.relations == line.expected_relations;
    }
    report.lines.push_back(line);
  }
  if (initial - elliptic - 2 * (n - 1) != 2 * genus) {
    report.lines.push_back({"closed-form", 2 * genus, initial - elliptic - 2 * (n - 1), 1, 1, false});
  }
  report.notes.push_back("relation total read as n + (n-1) + sum n/m_j: one elliptic relation per coset of <phi(x_j)>");
  return report;
}

}  // namespace surfkernel
