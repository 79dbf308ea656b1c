#pragma once

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "surfkernel/errors.hpp"
#include "surfkernel/io.hpp"

namespace support {

using namespace surfkernel;

inline std::string fixture(const std::string& name) { return std::string(SURFKERNEL_FIXTURE_DIR) + "/" + name; }
inline std::string golden(const std::string& name) { return std::string(SURFKERNEL_GOLDEN_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Random word over all letters and their inverses, resampled until it lies
/// in the kernel.
inline Gamma0Word random_kernel_word(const SchreierSystem& sys, std::mt19937_64& rng, std::size_t max_len) {
  const int gens = sys.signature().generator_count();
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> gen(0, gens - 1), sign(0, 1);
  for (;;) {
    Gamma0Word w;
    const std::size_t l = len(rng);
    for (std::size_t i = 0; i < l; ++i)
      w.push_back({static_cast<std::uint16_t>(gen(rng)), static_cast<std::int8_t>(sign(rng) ? 1 : -1)});
    if (sys.phi(w) == sys.group().identity()) return w;
  }
}

/// Expanding X^-1 * expression gives a cyclic conjugate of the consumed
/// relation or of its inverse; M entries expand to the empty word.
inline bool ledger_entry_sound(const SchreierSystem& sys, const LedgerEntry& e) {
  if (e.kind == EliminationKind::m) return free_reduce(sys.expand(e.generator)).empty();
  KernelWord w{{e.generator, -1}};
  w.insert(w.end(), e.expression.begin(), e.expression.end());
  const Gamma0Word lhs = sys.expand(w);
  const Gamma0Word src = sys.expand(e.source);
  return cyclically_equal(lhs, src) || cyclically_equal(lhs, inverse(src));
}

struct SweepCase {
  std::string group_name;
  FiniteGroup group;
  Signature sig;
  GeneratingVector vec;
  int genus = 0;
};

inline std::vector<std::pair<std::string, FiniteGroup>> sweep_groups() {
  return {
      {"Z2", build_group(AbelianSpec{{2}})},
      {"Z3", build_group(AbelianSpec{{3}})},
      {"Z4", build_group(AbelianSpec{{4}})},
      {"Z2xZ2", build_group(AbelianSpec{{2, 2}})},
      {"S3", build_group(PermutationSpec{3, {{1, 2, 0}, {1, 0, 2}}})},
  };
}

/// Every valid generating vector over the sweep groups whose genus lies in
/// [gmin, gmax], passed to visit one at a time.
inline void for_each_sweep_case(int gmin, int gmax, const std::function<void(const SweepCase&)>& visit) {
  for (const auto& [name, group] : sweep_groups()) {
    const std::size_t n = group.order();
    const auto elements = group.elements();
    std::vector<int> orders;
    for (GroupElement g : elements) {
      const int m = element_order(group, g);
      if (m > 1 && std::find(orders.begin(), orders.end(), m) == orders.end()) orders.push_back(m);
    }
    std::sort(orders.begin(), orders.end());

    for (int g0 = 0; g0 <= gmax; ++g0) {
      // Non-decreasing period lists, extended while the genus can still fit.
      std::vector<std::vector<int>> lists{{}};
      for (std::size_t k = 0; k < lists.size(); ++k) {
        const std::vector<int> periods = lists[k];
        for (int m : orders) {
          if (!periods.empty() && m < periods.back()) continue;
          std::vector<int> next = periods;
          next.push_back(m);
          // 2g - 2 grows with every period, so stop once g exceeds gmax.
          double chi = static_cast<double>(n) * (2 * g0 - 2);
          for (int p : next) chi += static_cast<double>(n) * (1.0 - 1.0 / p);
          if ((chi + 2) / 2 > gmax + 1e-9) continue;
          lists.push_back(next);
        }
      }
      for (const auto& periods : lists) {
        Signature sig{g0, periods};
        int genus = 0;
        try {
          genus = riemann_hurwitz_genus(n, sig);
        } catch (const GenusError&) {
          continue;
        }
        if (genus < gmin || genus > gmax) continue;

        std::vector<std::vector<GroupElement>> choices;
        for (int i = 0; i < 2 * g0; ++i) choices.push_back(elements);
        for (int m : periods) {
          std::vector<GroupElement> c;
          for (GroupElement e : elements)
            if (element_order(group, e) == m) c.push_back(e);
          choices.push_back(c);
        }
        std::vector<std::size_t> idx(choices.size(), 0);
        for (;;) {
          GeneratingVector vec;
          for (std::size_t k = 0; k < choices.size(); ++k) {
            GroupElement e = choices[k][idx[k]];
            if (k < static_cast<std::size_t>(g0)) vec.a.push_back(e);
            else if (k < static_cast<std::size_t>(2 * g0)) vec.b.push_back(e);
            else vec.x.push_back(e);
          }
          if (validate_generating_vector(group, sig, vec).ok()) visit({name, group, sig, vec, genus});
          std::size_t k = 0;
          while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
          if (k == idx.size()) break;
        }
      }
    }
  }
}

}  // namespace support
