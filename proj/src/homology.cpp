#include "surfkernel/homology.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "surfkernel/errors.hpp"

namespace surfkernel {

HomologyBasis::HomologyBasis(const SchreierSystem& sys, const ReducedPresentation& reduced)
    : sys_(&sys), survivors_(reduced.survivors) {
  const std::size_t count = sys.generator_count();
  const std::size_t dim = survivors_.size();
  resolved_.assign(count, HomologyVector(dim, 0));

  enum State : std::uint8_t { pending, active, done };
  std::vector<State> state(count, pending);
  for (std::size_t i = 0; i < dim; ++i) {
    resolved_[survivors_[i]][i] = 1;
    state[survivors_[i]] = done;
  }

  // Depth-first over ledger expressions; an active generator seen again is a cycle.
  auto resolve = [&](auto&& self, std::uint32_t id) -> void {
    if (state[id] == done) return;
    if (state[id] == active)
      throw LedgerError("ledger cycle through " + sys.display(id));
    if (!reduced.ledger.contains(id))
      throw LedgerError("generator " + sys.display(id) + " is neither a survivor nor in the ledger");
    state[id] = active;
    const LedgerEntry& e = reduced.ledger.at(id);
    HomologyVector v(dim, 0);
    if (e.kind != EliminationKind::m) {
      for (const KernelLetter& l : e.expression) {
        self(self, l.generator);
        const HomologyVector& part = resolved_[l.generator];
        for (std::size_t k = 0; k < dim; ++k) v[k] += l.exponent * part[k];
      }
    }
    resolved_[id] = std::move(v);
    state[id] = done;
  };
  for (std::uint32_t id = 0; id < count; ++id) resolve(resolve, id);
}

HomologyVector HomologyBasis::abelianize(const KernelWord& word) const {
  HomologyVector out(rank(), 0);
  for (const KernelLetter& l : word) {
    const HomologyVector& part = resolved_.at(l.generator);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += l.exponent * part[k];
  }
  return out;
}

HomologyVector HomologyBasis::act(GroupElement g, std::uint32_t generator) const {
  return abelianize(sys_->rewrite_conjugate(g, sys_->expand(generator)));
}

HomologyVector abelianize(const KernelWord& word, const HomologyBasis& basis) { return basis.abelianize(word); }

HomologyVector act(const HomologyBasis& basis, GroupElement g, std::uint32_t generator) {
  return basis.act(g, generator);
}

ActionMatrix action_matrix(const HomologyBasis& basis, GroupElement g) {
  const std::size_t dim = basis.rank();
  ActionMatrix out{g, basis.system().group().label(g), IntMatrix(dim, dim)};
  for (std::size_t i = 0; i < dim; ++i) {
    HomologyVector row = basis.act(g, basis.survivors()[i]);
    for (std::size_t j = 0; j < dim; ++j) out.matrix(i, j) = row[j];
  }
  return out;
}

std::vector<ActionMatrix> full_representation(const HomologyBasis& basis, unsigned jobs) {
  const auto elements = basis.system().group().elements();
  std::vector<ActionMatrix> out(elements.size());
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(elements.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < elements.size(); ++i) out[i] = action_matrix(basis, elements[i]);
    return out;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned t = 0; t < jobs; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < elements.size(); i += jobs) out[i] = action_matrix(basis, elements[i]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<Check> check_representation(const FiniteGroup& group, const std::vector<ActionMatrix>& rep,
                                        std::size_t max_law_pairs) {
  const std::size_t n = group.order();
  if (rep.size() != n) throw ShapeError("representation has the wrong number of matrices");
  const std::size_t dim = rep.empty() ? 0 : rep[0].matrix.rows();
  const IntMatrix id = IntMatrix::identity(dim);
  std::vector<Check> out;

  {
    Check c{"identity", rep[group.identity().index].matrix == id, ""};
    if (!c.passed) c.detail = "matrix of the identity is not I";
    out.push_back(c);
  }
  {
    Check c{"order", true, ""};
    for (const auto& a : rep) {
      const int m = element_order(group, a.element);
      if (!(a.matrix.power(static_cast<unsigned>(m)) == id)) {
        c.passed = false;
        c.detail = "rho(" + a.label + ")^" + std::to_string(m) + " != I";
        break;
      }
    }
    out.push_back(c);
  }
  {
    Check c{"determinant", true, ""};
    for (const auto& a : rep) {
      auto d = a.matrix.determinant();
      if (d != 1) {
        c.passed = false;
        c.detail = "det rho(" + a.label + ") = " + d.str();
        break;
      }
    }
    out.push_back(c);
  }
  {
    // Rows are images, so composing g after h multiplies rho(h) rho(g).
    Check c{"representation_law", true, ""};
    std::size_t pairs = 0;
    const std::size_t stride = n * n <= max_law_pairs ? 1 : (n * n) / max_law_pairs + 1;
    for (std::size_t k = 0; k < n * n && c.passed; k += stride, ++pairs) {
      const auto& a = rep[k / n];
      const auto& b = rep[k % n];
      const GroupElement ba = group.multiply(b.element, a.element);
      if (!(a.matrix * b.matrix == rep[ba.index].matrix)) {
        c.passed = false;
        c.detail = "rho(" + a.label + ") rho(" + b.label + ") != rho(" + group.label(ba) + ")";
      }
    }
    if (c.passed) c.detail = std::to_string(pairs) + " pairs";
    out.push_back(c);
  }
  return out;
}

std::size_t fixed_point_count(const FiniteGroup& group, const Signature& sig, const GeneratingVector& vec,
                              GroupElement g) {
  if (g == group.identity()) throw DomainError("fixed points of the identity are not isolated");
  if (!group.contains(g)) throw IndexError("element outside the group");
  std::size_t total = 0;
  for (std::size_t j = 0; j < vec.x.size() && j < sig.periods.size(); ++j) {
    for (const Coset& c : left_cosets_of_cyclic(group, vec.x[j])) {
      const GroupElement moved = group.multiply(g, c.representative);
      if (std::find(c.members.begin(), c.members.end(), moved) != c.members.end()) ++total;
    }
  }
  return total;
}

bool LefschetzReport::ok() const noexcept {
  return trace_sum == expected_sum &&
         std::all_of(lines.begin(), lines.end(), [](const LefschetzLine& l) { return l.passed; });
}

LefschetzReport lefschetz_check(const FiniteGroup& group, const Signature& sig, const GeneratingVector& vec,
                                const std::vector<ActionMatrix>& rep) {
  LefschetzReport out;
  for (const ActionMatrix& a : rep) {
    LefschetzLine line{a.element, a.label, a.matrix.trace(), 0, 0, false};
    if (a.element == group.identity()) {
      line.expected = static_cast<std::int64_t>(a.matrix.rows());
    } else {
      line.fixed_points = fixed_point_count(group, sig, vec, a.element);
      line.expected = 2 - static_cast<std::int64_t>(line.fixed_points);
    }
    line.passed = line.trace == line.expected;
    out.trace_sum += line.trace;
    out.lines.push_back(line);
  }
  out.expected_sum = static_cast<std::int64_t>(group.order()) * 2 * sig.orbit_genus;
  return out;
}

void verify_lefschetz(const LefschetzReport& report) {
  for (const LefschetzLine& l : report.lines) {
    if (!l.passed)
      throw VerificationError("trace of rho(" + l.label + ") is " + std::to_string(l.trace) + ", expected " +
                              std::to_string(l.expected));
  }
  if (report.trace_sum != report.expected_sum)
    throw VerificationError("sum of traces is " + std::to_string(report.trace_sum) + ", expected " +
                            std::to_string(report.expected_sum));
}

const char* to_string(BasisItem item) {
  switch (item) {
    case BasisItem::free_orbit: return "free_orbit";
    case BasisItem::cyclic_block: return "cyclic_block";
    case BasisItem::translate: return "translate";
    case BasisItem::fixed_by_subgroup: return "fixed_by_subgroup";
    case BasisItem::unclassified: return "unclassified";
  }
  return "?";
}

std::size_t AdaptedBasisReport::count(BasisItem item) const {
  return static_cast<std::size_t>(
      std::count_if(survivors.begin(), survivors.end(), [item](const SurvivorClass& s) { return s.item == item; }));
}

namespace {

// Position k when row i of m is +e_k, else -1.
long basis_image(const IntMatrix& m, std::size_t i) {
  long hit = -1;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const std::int64_t v = m(i, j);
    if (v == 0) continue;
    if (v != 1 || hit >= 0) return -1;
    hit = static_cast<long>(j);
  }
  return hit;
}

// Follows gamma under m through +basis vectors. Returns the chain
// gamma, m gamma, ... up to the first non-basis image or a repeat; sets
// closes when the chain returns to gamma.
std::vector<std::size_t> basis_chain(const IntMatrix& m, std::size_t start, bool& closes) {
  std::vector<std::size_t> chain{start};
  closes = false;
  for (;;) {
    const long next = basis_image(m, chain.back());
    if (next < 0) return chain;
    if (static_cast<std::size_t>(next) == start) {
      closes = true;
      return chain;
    }
    if (std::find(chain.begin(), chain.end(), static_cast<std::size_t>(next)) != chain.end()) return chain;
    chain.push_back(static_cast<std::size_t>(next));
  }
}

// True when row `last` of m equals minus the sum of e_k over chain.
bool closes_negatively(const IntMatrix& m, std::size_t last, const std::vector<std::size_t>& chain) {
  std::vector<std::int64_t> want(m.cols(), 0);
  for (std::size_t k : chain) want[k] = -1;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(last, j) != want[j]) return false;
  return true;
}

IntMatrix block_matrix(const IntMatrix& m, const std::vector<std::size_t>& members) {
  IntMatrix out(members.size(), members.size());
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = 0; b < members.size(); ++b) out(a, b) = m(members[a], members[b]);
  return out;
}

ElementInventory inventory_for(const FiniteGroup& group, const Signature& sig, const GeneratingVector& vec,
                               const ActionMatrix& a) {
  ElementInventory inv;
  inv.element = a.element;
  inv.label = a.label;
  const IntMatrix& m = a.matrix;
  const std::size_t dim = m.rows();
  std::vector<bool> used(dim, false);
  for (std::size_t i = 0; i < dim; ++i) {
    if (used[i]) continue;
    bool closes = false;
    auto chain = basis_chain(m, i, closes);
    bool clean = std::none_of(chain.begin(), chain.end(), [&](std::size_t k) { return used[k]; });
    if (!clean) continue;
    if (closes) {
      inv.permutation_cycles.push_back(chain.size());
      for (std::size_t k : chain) used[k] = true;
    } else if (closes_negatively(m, chain.back(), chain)) {
      inv.super_permutation_blocks.push_back(chain.size());
      for (std::size_t k : chain) used[k] = true;
    }
  }
  inv.m_rows = static_cast<std::size_t>(std::count(used.begin(), used.end(), false));
  inv.fixed_dimension = dim - (m - IntMatrix::identity(dim)).rank();
  if (a.element != group.identity()) inv.fixed_points = fixed_point_count(group, sig, vec, a.element);
  std::sort(inv.super_permutation_blocks.rbegin(), inv.super_permutation_blocks.rend());
  std::sort(inv.permutation_cycles.rbegin(), inv.permutation_cycles.rend());
  return inv;
}

}  // namespace

AdaptedBasisReport build_adapted_basis_report(const HomologyBasis& basis, const ReducedPresentation& reduced,
                                              const std::vector<ActionMatrix>& rep) {
  const SchreierSystem& sys = basis.system();
  const FiniteGroup& group = sys.group();
  const std::size_t n = group.order();
  const std::size_t dim = basis.rank();
  AdaptedBasisReport out;

  std::vector<int> assigned(dim, -1);  // block index
  std::vector<bool> is_start(dim, false);
  if (n > 1) {
    for (const ActionMatrix& a : rep) {
      if (a.element == group.identity()) continue;
      const int m = element_order(group, a.element);
      for (std::size_t i = 0; i < dim; ++i) {
        if (assigned[i] >= 0) continue;
        bool closes = false;
        auto chain = basis_chain(a.matrix, i, closes);
        if (closes || chain.size() < static_cast<std::size_t>(m - 1)) continue;
        chain.resize(static_cast<std::size_t>(m - 1));
        if (!closes_negatively(a.matrix, chain.back(), chain)) continue;
        if (std::any_of(chain.begin(), chain.end(), [&](std::size_t k) { return assigned[k] >= 0; })) continue;
        CyclicBlock b{a.element, a.label, m, chain};
        for (std::size_t k : chain) assigned[k] = static_cast<int>(out.blocks.size());
        is_start[chain.front()] = true;
        out.blocks.push_back(std::move(b));
      }
    }
  }

  for (std::size_t i = 0; i < dim; ++i) {
    SurvivorClass c;
    c.generator = basis.survivors()[i];
    c.name = sys.display(c.generator);
    if (n == 1) {
      c.item = BasisItem::fixed_by_subgroup;
      c.detail = "trivial group";
    } else if (assigned[i] >= 0) {
      const CyclicBlock& b = out.blocks[static_cast<std::size_t>(assigned[i])];
      const auto pos = std::find(b.members.begin(), b.members.end(), i) - b.members.begin();
      c.item = is_start[i] ? BasisItem::cyclic_block : BasisItem::translate;
      c.detail = "h=" + b.label + " m=" + std::to_string(b.order) + " q=" + std::to_string(pos) + " start=" +
                 sys.display(basis.survivors()[b.members.front()]);
    } else {
      std::vector<long> orbit;
      bool free = true;
      std::vector<std::string> stabilizer;
      for (const ActionMatrix& a : rep) {
        const long k = basis_image(a.matrix, i);
        if (k < 0 || std::find(orbit.begin(), orbit.end(), k) != orbit.end()) free = false;
        orbit.push_back(k);
        if (a.element != group.identity() && k == static_cast<long>(i)) stabilizer.push_back(a.label);
      }
      if (free) {
        c.item = BasisItem::free_orbit;
        c.detail = "orbit of " + std::to_string(n);
      } else if (!stabilizer.empty()) {
        c.item = BasisItem::fixed_by_subgroup;
        std::ostringstream d;
        d << "fixed by";
        for (const auto& s : stabilizer) d << ' ' << s;
        c.detail = d.str();
      } else {
        c.item = BasisItem::unclassified;
        out.unclassified.push_back(c.generator);
      }
    }
    out.survivors.push_back(std::move(c));
  }

  for (const ActionMatrix& a : rep) out.inventory.push_back(inventory_for(group, sys.signature(), sys.vector(), a));

  for (const LedgerEntry& e : reduced.ledger.entries()) {
    if (e.kind != EliminationKind::m) continue;
    out.removed.push_back({e.generator, sys.display(e.generator), format_word(sys.signature(), sys.expand(e.generator))});
  }

  {
    Check c{"null_homologous_count", out.removed.size() == n - 1,
            std::to_string(out.removed.size()) + " removed, expected " + std::to_string(n - 1)};
    out.checks.push_back(c);
  }
  {
    Check c{"super_permutation_blocks", true, std::to_string(out.blocks.size()) + " blocks"};
    for (const CyclicBlock& b : out.blocks) {
      IntMatrix sub = block_matrix(rep[b.h.index].matrix, b.members);
      if (!(sub.power(static_cast<unsigned>(b.order)) == IntMatrix::identity(sub.rows()))) {
        c.passed = false;
        c.detail = "block of " + b.label + " does not have order " + std::to_string(b.order);
        break;
      }
    }
    out.checks.push_back(c);
  }
  {
    Check c{"fixed_point_free_fixed_space", true, ""};
    std::size_t seen = 0;
    for (const ElementInventory& inv : out.inventory) {
      if (inv.element == group.identity() || inv.fixed_points != 0) continue;
      ++seen;
      if (inv.fixed_dimension < 2) {
        c.passed = false;
        c.detail = inv.label + " fixes a space of dimension " + std::to_string(inv.fixed_dimension);
        break;
      }
    }
    if (c.passed) c.detail = std::to_string(seen) + " fixed-point-free elements, each fixing rank >= 2";
    out.checks.push_back(c);
  }

  out.flags.push_back("null-homologous count: the definition of an adapted generating set says exactly n (" +
                      std::to_string(n) + "); the presentation forces n-1 (" + std::to_string(n - 1) +
                      ") M-generators, which is what is removed here");
  if (!out.unclassified.empty())
    out.flags.push_back(std::to_string(out.unclassified.size()) + " survivor(s) fit no adapted-basis item");
  return out;
}

AdaptedBasisReport adapted_basis_report(const HomologyBasis& basis, const ReducedPresentation& reduced,
                                        const std::vector<ActionMatrix>& rep) {
  AdaptedBasisReport out = build_adapted_basis_report(basis, reduced, rep);
  if (!out.unclassified.empty()) {
    std::string names;
    for (std::uint32_t id : out.unclassified) names += " " + basis.system().display(id);
    throw ClassificationError("survivors fit no adapted-basis item:" + names);
  }
  return out;
}

}  // namespace surfkernel
