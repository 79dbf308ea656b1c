#include "surfkernel/orbifold.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <map>
#include <sstream>

#include "surfkernel/errors.hpp"

namespace surfkernel {

int generator_ordinal(const Signature& sig, Gamma0Generator gen) {
  const int g0 = sig.orbit_genus;
  switch (gen.kind) {
    case GeneratorKind::a:
      if (gen.index < 1 || gen.index > g0) break;
      return gen.index - 1;
    case GeneratorKind::b:
      if (gen.index < 1 || gen.index > g0) break;
      return g0 + gen.index - 1;
    case GeneratorKind::x:
      if (gen.index < 1 || gen.index > sig.period_count()) break;
      return 2 * g0 + gen.index - 1;
  }
  throw IndexError("generator index out of range");
}

Gamma0Generator generator_at(const Signature& sig, int ordinal) {
  const int g0 = sig.orbit_genus;
  if (ordinal < 0 || ordinal >= sig.generator_count()) throw IndexError("generator ordinal out of range");
  if (ordinal < g0) return {GeneratorKind::a, ordinal + 1};
  if (ordinal < 2 * g0) return {GeneratorKind::b, ordinal - g0 + 1};
  return {GeneratorKind::x, ordinal - 2 * g0 + 1};
}

std::string generator_name(const Signature& sig, int ordinal) {
  Gamma0Generator gen = generator_at(sig, ordinal);
  const char prefix = gen.kind == GeneratorKind::a ? 'a' : gen.kind == GeneratorKind::b ? 'b' : 'x';
  return prefix + std::to_string(gen.index);
}

Gamma0Word inverse(const Gamma0Word& word) {
  Gamma0Word out;
  out.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Gamma0Word concat(const Gamma0Word& lhs, const Gamma0Word& rhs) {
  Gamma0Word out = lhs;
  out.insert(out.end(), rhs.begin(), rhs.end());
  return out;
}

Gamma0Word free_reduce(const Gamma0Word& word) {
  Gamma0Word out;
  out.reserve(word.size());
  for (const Letter& l : word) {
    if (!out.empty() && out.back() == l.inverse()) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

Gamma0Word cyclic_reduce(const Gamma0Word& word) {
  Gamma0Word w = free_reduce(word);
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return Gamma0Word(w.begin() + static_cast<std::ptrdiff_t>(lo), w.begin() + static_cast<std::ptrdiff_t>(hi));
}

bool cyclically_equal(const Gamma0Word& lhs, const Gamma0Word& rhs) {
  Gamma0Word u = cyclic_reduce(lhs), v = cyclic_reduce(rhs);
  if (u.size() != v.size()) return false;
  if (u.empty()) return true;
  Gamma0Word doubled = concat(u, u);
  return std::search(doubled.begin(), doubled.end(), v.begin(), v.end()) != doubled.end();
}

std::string format_word(const Signature& sig, const Gamma0Word& word) {
  if (word.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out << ' ';
    out << generator_name(sig, word[i].generator);
    if (word[i].exponent < 0) out << "^-1";
  }
  return out.str();
}

namespace {

Letter letter(int ordinal, int exponent = 1) {
  return {static_cast<std::uint16_t>(ordinal), static_cast<std::int8_t>(exponent)};
}

Gamma0Word commutator_word(int a, int b) {
  return {letter(a), letter(b), letter(a, -1), letter(b, -1)};
}

Gamma0Word single(int ordinal, int exponent = 1) { return {letter(ordinal, exponent)}; }

Gamma0Word cat(std::initializer_list<Gamma0Word> parts) {
  Gamma0Word out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

Gamma0Word long_relation(const Signature& sig) {
  Gamma0Word word;
  for (int i = 1; i <= sig.orbit_genus; ++i) {
    auto c = commutator_word(generator_ordinal(sig, {GeneratorKind::a, i}),
                             generator_ordinal(sig, {GeneratorKind::b, i}));
    word.insert(word.end(), c.begin(), c.end());
  }
  for (int j = 1; j <= sig.period_count(); ++j)
    word.push_back(letter(generator_ordinal(sig, {GeneratorKind::x, j})));
  return word;
}

Gamma0Presentation gamma0_presentation(const Signature& sig) {
  Gamma0Presentation p;
  for (int k = 0; k < sig.generator_count(); ++k) p.generators.push_back(generator_at(sig, k));
  p.long_relation = long_relation(sig);
  for (int j = 1; j <= sig.period_count(); ++j) {
    int ord = generator_ordinal(sig, {GeneratorKind::x, j});
    p.power_relations.emplace_back(static_cast<std::size_t>(sig.periods[j - 1]), letter(ord));
  }
  return p;
}

GroupElement generator_image(const Signature& sig, const GeneratingVector& vec, int ordinal) {
  Gamma0Generator gen = generator_at(sig, ordinal);
  const auto idx = static_cast<std::size_t>(gen.index - 1);
  switch (gen.kind) {
    case GeneratorKind::a: return vec.a.at(idx);
    case GeneratorKind::b: return vec.b.at(idx);
    case GeneratorKind::x: return vec.x.at(idx);
  }
  return {};
}

GroupElement evaluate(const FiniteGroup& group, const Signature& sig, const GeneratingVector& vec,
                      const Gamma0Word& word) {
  GroupElement acc = group.identity();
  for (const Letter& l : word) {
    GroupElement g = generator_image(sig, vec, l.generator);
    acc = group.multiply(acc, l.exponent > 0 ? g : group.inverse(g));
  }
  return acc;
}

bool ValidationReport::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const VectorCheck& c) { return c.passed; });
}

ValidationReport validate_generating_vector(const FiniteGroup& group, const Signature& sig,
                                            const GeneratingVector& vec) {
  const auto g0 = static_cast<std::size_t>(sig.orbit_genus);
  const auto r = static_cast<std::size_t>(sig.period_count());
  if (vec.a.size() != g0 || vec.b.size() != g0 || vec.x.size() != r) {
    std::ostringstream msg;
    msg << "generating vector has shape (" << vec.a.size() << ',' << vec.b.size() << ','
        << vec.x.size() << "), signature needs (" << g0 << ',' << g0 << ',' << r << ')';
    throw ShapeError(msg.str());
  }
  std::vector<GroupElement> all;
  for (const auto* part : {&vec.a, &vec.b, &vec.x})
    for (GroupElement e : *part) {
      if (!group.contains(e)) throw ValidationError("generating vector entry is not a group element");
      all.push_back(e);
    }
  for (int m : sig.periods)
    if (m < 2) throw ValidationError("periods must be at least 2");

  ValidationReport report;

  GroupElement product = evaluate(group, sig, vec, long_relation(sig));
  report.checks.push_back({"long_relation", product == group.identity(),
                           "product of commutators and elliptic images is " + group.label(product)});

  VectorCheck orders{"periods", true, {}};
  std::ostringstream detail;
  for (std::size_t j = 0; j < r; ++j) {
    int ord = element_order(group, vec.x[j]);
    if (ord != sig.periods[j]) {
      orders.passed = false;
      detail << "x" << j + 1 << " = " << group.label(vec.x[j]) << " has order " << ord
             << ", expected " << sig.periods[j] << "; ";
    }
  }
  orders.detail = orders.passed ? "every elliptic image has its exact period" : detail.str();
  report.checks.push_back(orders);

  std::size_t reached = group.generated_subgroup(all).size();
  report.checks.push_back({"generates", reached == group.order(),
                           "entries generate a subgroup of order " + std::to_string(reached) +
                               " in a group of order " + std::to_string(group.order())});
  return report;
}

int riemann_hurwitz_genus(std::size_t group_order, const Signature& sig) {
  using Q = boost::rational<long long>;
  if (group_order < 1) throw DomainError("group order must be positive");
  const auto n = static_cast<long long>(group_order);
  Q branch(0);
  for (int m : sig.periods) {
    if (m < 2) throw ValidationError("periods must be at least 2");
    branch += Q(1) - Q(1, m);
  }
  // 2g - 2 = n(2 g0 - 2) + n * sum(1 - 1/m)
  Q g = (Q(n * (2LL * sig.orbit_genus - 2)) + Q(n) * branch + Q(2)) / Q(2);
  if (g.denominator() != 1 || g.numerator() < 2) {
    std::ostringstream msg;
    msg << "Riemann-Hurwitz gives g = " << g.numerator();
    if (g.denominator() != 1) msg << '/' << g.denominator();
    msg << ", need an integer genus >= 2";
    throw GenusError(msg.str(), g.numerator(), g.denominator());
  }
  return static_cast<int>(g.numerator());
}

std::string Automorphism::name() const {
  switch (kind) {
    case AutomorphismKind::U: return "U_" + std::to_string(i);
    case AutomorphismKind::B: return "B_" + std::to_string(i);
    case AutomorphismKind::R: return "R_" + std::to_string(i);
    case AutomorphismKind::sigma: return "sigma_" + std::to_string(i);
    case AutomorphismKind::Z: return "Z_" + std::to_string(i);
    case AutomorphismKind::B_mixed: return "B_" + std::to_string(i) + "," + std::to_string(j);
    case AutomorphismKind::U_mixed: return "U_" + std::to_string(i) + "," + std::to_string(j);
  }
  return "?";
}

std::vector<Gamma0Word> automorphism_images(const Signature& sig, const Automorphism& aut) {
  const int g0 = sig.orbit_genus;
  const int r = sig.period_count();
  std::vector<Gamma0Word> images;
  for (int k = 0; k < sig.generator_count(); ++k) images.push_back(single(k));

  const bool pair_kind = aut.kind == AutomorphismKind::sigma || aut.kind == AutomorphismKind::Z;
  const bool mixed = aut.kind == AutomorphismKind::B_mixed || aut.kind == AutomorphismKind::U_mixed;
  const int i_max = pair_kind ? g0 - 1 : g0;
  if (aut.i < 1 || aut.i > i_max) throw IndexError(aut.name() + ": handle index out of range");
  if (mixed && (aut.j < 1 || aut.j > r)) throw IndexError(aut.name() + ": elliptic index out of range");

  const int a = generator_ordinal(sig, {GeneratorKind::a, aut.i});
  const int b = generator_ordinal(sig, {GeneratorKind::b, aut.i});

  switch (aut.kind) {
    case AutomorphismKind::U:
      images[b] = cat({single(b), single(a)});
      break;
    case AutomorphismKind::B:
      images[a] = cat({single(a), single(b)});
      break;
    case AutomorphismKind::R:
      images[a] = cat({single(a), single(b), single(a, -1)});
      images[b] = single(a, -1);
      break;
    case AutomorphismKind::sigma: {
      const int c = generator_ordinal(sig, {GeneratorKind::a, aut.i + 1});
      const int d = generator_ordinal(sig, {GeneratorKind::b, aut.i + 1});
      Gamma0Word delta = commutator_word(a, b);
      images[a] = cat({delta, single(c), inverse(delta)});
      images[b] = cat({delta, single(d), inverse(delta)});
      images[c] = single(a);
      images[d] = single(b);
      break;
    }
    case AutomorphismKind::Z: {
      const int c = generator_ordinal(sig, {GeneratorKind::a, aut.i + 1});
      const int d = generator_ordinal(sig, {GeneratorKind::b, aut.i + 1});
      Gamma0Word eps = commutator_word(c, b);
      eps[0] = letter(c, -1);  // [a_{i+1}^-1, b_i]
      eps[2] = letter(c, 1);
      images[a] = cat({single(a), single(c)});
      images[b] = cat({single(c, -1), single(b), single(c)});
      images[c] = cat({eps, single(c)});
      images[d] = cat({single(d), single(b, -1), single(c)});
      break;
    }
    case AutomorphismKind::B_mixed:
    case AutomorphismKind::U_mixed: {
      const int xj = generator_ordinal(sig, {GeneratorKind::x, aut.j});
      Gamma0Word w2;
      for (int k = aut.i + 1; k <= g0; ++k) {
        auto c = commutator_word(generator_ordinal(sig, {GeneratorKind::a, k}),
                                 generator_ordinal(sig, {GeneratorKind::b, k}));
        w2.insert(w2.end(), c.begin(), c.end());
      }
      for (int k = 1; k < aut.j; ++k) w2.push_back(letter(generator_ordinal(sig, {GeneratorKind::x, k})));

      if (aut.kind == AutomorphismKind::B_mixed) {
        Gamma0Word u = cat({single(b), single(a, -1), single(b, -1), w2});
        Gamma0Word v = cat({inverse(w2), single(b), single(a), u});
        images[a] = free_reduce(cat({single(a), u, single(xj), inverse(u)}));
        images[xj] = free_reduce(cat({v, single(xj), inverse(v)}));
      } else {
        Gamma0Word x = cat({single(a, -1), single(b, -1), w2});
        Gamma0Word y = cat({inverse(x), single(a, -1), x});
        images[b] = free_reduce(cat({single(b), x, single(xj), inverse(x)}));
        images[xj] = free_reduce(cat({y, single(xj), inverse(y)}));
      }
      break;
    }
  }
  return images;
}

GeneratingVector apply_automorphism(const FiniteGroup& group, const Signature& sig,
                                    const GeneratingVector& vec, const Automorphism& aut) {
  const auto images = automorphism_images(sig, aut);
  GeneratingVector out = vec;
  for (int k = 0; k < sig.generator_count(); ++k) {
    GroupElement e = evaluate(group, sig, vec, images[static_cast<std::size_t>(k)]);
    Gamma0Generator gen = generator_at(sig, k);
    const auto idx = static_cast<std::size_t>(gen.index - 1);
    switch (gen.kind) {
      case GeneratorKind::a: out.a[idx] = e; break;
      case GeneratorKind::b: out.b[idx] = e; break;
      case GeneratorKind::x: out.x[idx] = e; break;
    }
  }
  return out;
}

std::vector<Automorphism> all_automorphisms(const Signature& sig) {
  std::vector<Automorphism> out;
  const int g0 = sig.orbit_genus;
  for (int i = 1; i <= g0; ++i) {
    out.push_back({AutomorphismKind::U, i, 0});
    out.push_back({AutomorphismKind::B, i, 0});
    out.push_back({AutomorphismKind::R, i, 0});
  }
  for (int i = 1; i < g0; ++i) {
    out.push_back({AutomorphismKind::sigma, i, 0});
    out.push_back({AutomorphismKind::Z, i, 0});
  }
  for (int i = 1; i <= g0; ++i)
    for (int j = 1; j <= sig.period_count(); ++j) {
      out.push_back({AutomorphismKind::B_mixed, i, j});
      out.push_back({AutomorphismKind::U_mixed, i, j});
    }
  return out;
}

namespace {

struct HandleScore {
  int collisions = 0;  // handles with alpha == beta
  int identities = 0;  // handle entries equal to the identity

  auto operator<=>(const HandleScore&) const = default;
};

HandleScore score(const FiniteGroup& group, const GeneratingVector& vec) {
  HandleScore s;
  for (std::size_t i = 0; i < vec.a.size(); ++i) {
    if (vec.a[i] == vec.b[i]) ++s.collisions;
    if (vec.a[i] == group.identity()) ++s.identities;
    if (vec.b[i] == group.identity()) ++s.identities;
  }
  return s;
}

std::vector<std::uint32_t> key(const GeneratingVector& v) {
  std::vector<std::uint32_t> k;
  for (const auto* part : {&v.a, &v.b, &v.x})
    for (GroupElement e : *part) k.push_back(e.index);
  return k;
}

}  // namespace

NormalizedVector normalize_vector(const FiniteGroup& group, const Signature& sig,
                                  const GeneratingVector& vec, int max_depth) {
  struct Node {
    GeneratingVector vector;
    std::vector<std::string> path;
  };
  const HandleScore goal{};
  NormalizedVector best{vec, {}};
  HandleScore best_score = score(group, vec);
  if (best_score == goal || sig.orbit_genus == 0) return best;

  const auto autos = all_automorphisms(sig);
  std::map<std::vector<std::uint32_t>, bool> seen{{key(vec), true}};
  std::vector<Node> frontier{{vec, {}}};
  for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (const Automorphism& aut : autos) {
        GeneratingVector v = apply_automorphism(group, sig, node.vector, aut);
        if (!seen.emplace(key(v), true).second) continue;
        Node child{std::move(v), node.path};
        child.path.push_back(aut.name());
        HandleScore s = score(group, child.vector);
        if (s < best_score) {
          best_score = s;
          best = {child.vector, child.path};
          if (s == goal) return best;
        }
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  if (best_score.collisions > 0) {
    throw NormalizationError("no automorphism sequence of length <= " + std::to_string(max_depth) +
                             " separates the alpha and beta images of every handle");
  }
  return best;
}

}  // namespace surfkernel
