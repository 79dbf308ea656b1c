#include "surfkernel/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "surfkernel/errors.hpp"

namespace surfkernel {

struct FiniteGroup::Impl {
  std::size_t n = 1;
  std::uint32_t identity = 0;
  GroupKind kind = GroupKind::abelian;
  std::vector<std::uint32_t> table;  // row-major n x n
  std::vector<std::uint32_t> inverse;
  std::vector<std::string> labels;
  std::vector<int> invariants;
  std::vector<std::vector<int>> permutations;
};

namespace {

std::string tuple_label(const std::vector<int>& coords) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out << ',';
    out << coords[i];
  }
  out << ')';
  return out.str();
}

std::string cycle_label(const std::vector<int>& perm) {
  std::ostringstream out;
  std::vector<bool> seen(perm.size(), false);
  bool any = false;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (seen[start] || perm[start] == static_cast<int>(start)) continue;
    any = true;
    out << '(';
    std::size_t p = start;
    bool first = true;
    while (!seen[p]) {
      seen[p] = true;
      if (!first) out << ' ';
      out << p;
      first = false;
      p = static_cast<std::size_t>(perm[p]);
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

// Fills inverse and identity from the table, validating the group axioms.
void check_and_complete(FiniteGroup::Impl& impl) {
  const std::size_t n = impl.n;
  auto at = [&](std::size_t a, std::size_t b) { return impl.table[a * n + b]; };

  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (std::size_t b = 0; b < n; ++b) {
      row[at(a, b)] = true;
      col[at(b, a)] = true;
    }
    if (std::find(row.begin(), row.end(), false) != row.end() ||
        std::find(col.begin(), col.end(), false) != col.end()) {
      throw ValidationError("multiplication table row/column " + std::to_string(a) +
                            " is not a permutation");
    }
  }

  std::optional<std::uint32_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = at(e, a) == a && at(a, e) == a;
    if (ok) identity = static_cast<std::uint32_t>(e);
  }
  if (!identity) throw ValidationError("multiplication table has no identity");
  impl.identity = *identity;

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (at(at(a, b), c) != at(a, at(b, c))) {
          std::ostringstream msg;
          msg << "multiplication table is not associative at (" << a << ',' << b << ',' << c
              << ')';
          throw ValidationError(msg.str());
        }

  impl.inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (at(a, b) == impl.identity) {
        if (at(b, a) != impl.identity)
          throw ValidationError("element " + std::to_string(a) + " has no two-sided inverse");
        impl.inverse[a] = static_cast<std::uint32_t>(b);
        break;
      }
    }
  }
}

std::shared_ptr<FiniteGroup::Impl> from_abelian(const AbelianSpec& spec) {
  auto impl = std::make_shared<FiniteGroup::Impl>();
  impl->kind = GroupKind::abelian;
  std::size_t n = 1;
  for (int m : spec.invariants) {
    if (m < 1) throw ValidationError("abelian invariant must be positive, got " + std::to_string(m));
    n *= static_cast<std::size_t>(m);
    if (n > 1'000'000) throw SizeError("abelian group order exceeds 10^6");
  }
  impl->n = n;
  impl->invariants = spec.invariants;
  const std::size_t k = spec.invariants.size();

  std::vector<std::vector<int>> coords(n, std::vector<int>(k, 0));
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = k; i-- > 0;) {
      auto m = static_cast<std::size_t>(spec.invariants[i]);
      coords[idx][i] = static_cast<int>(rest % m);
      rest /= m;
    }
  }
  auto index_of = [&](const std::vector<int>& c) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k; ++i) idx = idx * spec.invariants[i] + c[i];
    return static_cast<std::uint32_t>(idx);
  };

  impl->table.resize(n * n);
  impl->inverse.resize(n);
  impl->labels.resize(n);
  std::vector<int> sum(k);
  for (std::size_t a = 0; a < n; ++a) {
    impl->labels[a] = tuple_label(coords[a]);
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < k; ++i) sum[i] = (coords[a][i] + coords[b][i]) % spec.invariants[i];
      impl->table[a * n + b] = index_of(sum);
    }
    for (std::size_t i = 0; i < k; ++i)
      sum[i] = (spec.invariants[i] - coords[a][i]) % spec.invariants[i];
    impl->inverse[a] = index_of(sum);
  }
  impl->identity = 0;
  return impl;
}

std::shared_ptr<FiniteGroup::Impl> from_table(const TableSpec& spec) {
  auto impl = std::make_shared<FiniteGroup::Impl>();
  impl->kind = GroupKind::table;
  const std::size_t n = spec.table.size();
  if (n == 0) throw ValidationError("multiplication table is empty");
  impl->n = n;
  impl->table.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (spec.table[a].size() != n) throw ValidationError("multiplication table is not square");
    for (std::size_t b = 0; b < n; ++b) {
      int v = spec.table[a][b];
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw ValidationError("multiplication table entry out of range");
      impl->table[a * n + b] = static_cast<std::uint32_t>(v);
    }
  }
  check_and_complete(*impl);
  impl->labels.resize(n);
  for (std::size_t a = 0; a < n; ++a) impl->labels[a] = std::to_string(a);
  return impl;
}

std::shared_ptr<FiniteGroup::Impl> from_permutations(const PermutationSpec& spec) {
  auto impl = std::make_shared<FiniteGroup::Impl>();
  impl->kind = GroupKind::permutation;
  const auto d = static_cast<std::size_t>(spec.degree);
  if (spec.degree < 0) throw ValidationError("permutation degree must be non-negative");
  for (const auto& g : spec.generators) {
    if (g.size() != d) throw ValidationError("permutation generator has wrong length");
    std::vector<bool> hit(d, false);
    for (int v : g) {
      if (v < 0 || static_cast<std::size_t>(v) >= d || hit[v])
        throw ValidationError("permutation generator is not a bijection");
      hit[v] = true;
    }
  }

  std::vector<int> id(d);
  for (std::size_t i = 0; i < d; ++i) id[i] = static_cast<int>(i);

  // compose(p, q) = "p then q" so that products read left to right.
  auto compose = [&](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = q[static_cast<std::size_t>(p[i])];
    return r;
  };

  std::map<std::vector<int>, std::uint32_t> seen;
  std::vector<std::vector<int>>& perms = impl->permutations;
  perms.push_back(id);
  seen.emplace(id, 0);
  for (std::size_t head = 0; head < perms.size(); ++head) {
    for (const auto& g : spec.generators) {
      auto next = compose(perms[head], g);
      if (seen.count(next)) continue;
      if (perms.size() >= spec.max_order)
        throw SizeError("permutation group closure exceeds " + std::to_string(spec.max_order) +
                        " elements");
      seen.emplace(next, static_cast<std::uint32_t>(perms.size()));
      perms.push_back(std::move(next));
    }
  }

  const std::size_t n = perms.size();
  impl->n = n;
  impl->identity = 0;
  impl->table.resize(n * n);
  impl->inverse.resize(n);
  impl->labels.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    impl->labels[a] = cycle_label(perms[a]);
    for (std::size_t b = 0; b < n; ++b) impl->table[a * n + b] = seen.at(compose(perms[a], perms[b]));
    std::vector<int> inv(d);
    for (std::size_t i = 0; i < d; ++i) inv[static_cast<std::size_t>(perms[a][i])] = static_cast<int>(i);
    impl->inverse[a] = seen.at(inv);
  }
  return impl;
}

}  // namespace

FiniteGroup::FiniteGroup() : FiniteGroup(from_abelian(AbelianSpec{})) {}

FiniteGroup::FiniteGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

FiniteGroup build_group(const GroupSpec& spec) {
  std::shared_ptr<FiniteGroup::Impl> impl = std::visit(
      [](const auto& s) -> std::shared_ptr<FiniteGroup::Impl> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AbelianSpec>) return from_abelian(s);
        else if constexpr (std::is_same_v<T, TableSpec>) return from_table(s);
        else return from_permutations(s);
      },
      spec);
  return FiniteGroup(std::move(impl));
}

std::size_t FiniteGroup::order() const noexcept { return impl_->n; }
GroupElement FiniteGroup::identity() const noexcept { return {impl_->identity}; }
GroupKind FiniteGroup::kind() const noexcept { return impl_->kind; }

bool FiniteGroup::contains(GroupElement a) const noexcept { return a.index < impl_->n; }

GroupElement FiniteGroup::multiply(GroupElement a, GroupElement b) const {
  return {impl_->table[static_cast<std::size_t>(a.index) * impl_->n + b.index]};
}

GroupElement FiniteGroup::inverse(GroupElement a) const { return {impl_->inverse[a.index]}; }

GroupElement FiniteGroup::power(GroupElement a, long long exponent) const {
  if (exponent < 0) {
    a = inverse(a);
    exponent = -exponent;
  }
  GroupElement result = identity();
  while (exponent > 0) {
    if (exponent & 1) result = multiply(result, a);
    a = multiply(a, a);
    exponent >>= 1;
  }
  return result;
}

GroupElement FiniteGroup::commutator(GroupElement a, GroupElement b) const {
  return multiply(multiply(a, b), multiply(inverse(a), inverse(b)));
}

std::vector<GroupElement> FiniteGroup::elements() const {
  std::vector<GroupElement> out(impl_->n);
  for (std::size_t i = 0; i < impl_->n; ++i) out[i] = {static_cast<std::uint32_t>(i)};
  return out;
}

const std::string& FiniteGroup::label(GroupElement a) const { return impl_->labels.at(a.index); }

const std::vector<int>& FiniteGroup::abelian_invariants() const noexcept {
  return impl_->invariants;
}

std::vector<int> FiniteGroup::abelian_coordinates(GroupElement a) const {
  if (impl_->kind != GroupKind::abelian) throw DomainError("group is not given by abelian invariants");
  const auto& inv = impl_->invariants;
  std::vector<int> coords(inv.size());
  std::size_t rest = a.index;
  for (std::size_t i = inv.size(); i-- > 0;) {
    coords[i] = static_cast<int>(rest % static_cast<std::size_t>(inv[i]));
    rest /= static_cast<std::size_t>(inv[i]);
  }
  return coords;
}

GroupElement FiniteGroup::abelian_element(const std::vector<int>& coordinates) const {
  if (impl_->kind != GroupKind::abelian) throw DomainError("group is not given by abelian invariants");
  const auto& inv = impl_->invariants;
  if (coordinates.size() != inv.size())
    throw ShapeError("expected " + std::to_string(inv.size()) + " coordinates, got " +
                     std::to_string(coordinates.size()));
  std::size_t idx = 0;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    int c = coordinates[i] % inv[i];
    if (c < 0) c += inv[i];
    idx = idx * static_cast<std::size_t>(inv[i]) + static_cast<std::size_t>(c);
  }
  return {static_cast<std::uint32_t>(idx)};
}

const std::vector<int>& FiniteGroup::permutation(GroupElement a) const {
  if (impl_->kind != GroupKind::permutation) throw DomainError("group is not a permutation group");
  return impl_->permutations.at(a.index);
}

std::vector<GroupElement> FiniteGroup::generated_subgroup(
    const std::vector<GroupElement>& gens) const {
  std::vector<bool> seen(impl_->n, false);
  std::vector<GroupElement> out{identity()};
  seen[identity().index] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (GroupElement g : gens) {
      GroupElement next = multiply(out[head], g);
      if (!seen[next.index]) {
        seen[next.index] = true;
        out.push_back(next);
      }
    }
  }
  return out;
}

int element_order(const FiniteGroup& group, GroupElement g) {
  int m = 1;
  for (GroupElement p = g; p != group.identity(); p = group.multiply(p, g)) ++m;
  return m;
}

std::vector<Coset> left_cosets_of_cyclic(const FiniteGroup& group, GroupElement h) {
  const int m = element_order(group, h);
  std::vector<bool> covered(group.order(), false);
  std::vector<Coset> cosets;
  for (GroupElement g : group.elements()) {
    if (covered[g.index]) continue;
    Coset coset{g, {}};
    GroupElement p = g;
    for (int q = 0; q < m; ++q) {
      covered[p.index] = true;
      coset.members.push_back(p);
      p = group.multiply(p, h);
    }
    cosets.push_back(std::move(coset));
  }
  return cosets;
}

}  // namespace surfkernel
