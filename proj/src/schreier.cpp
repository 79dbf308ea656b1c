#include "surfkernel/schreier.hpp"

#include <algorithm>
#include <sstream>

#include "surfkernel/errors.hpp"

namespace surfkernel {

std::vector<Letter> ordered_alphabet(const Signature& sig) {
  std::vector<Letter> out;
  auto push = [&](Gamma0Generator g, int e) {
    out.push_back({static_cast<std::uint16_t>(generator_ordinal(sig, g)), static_cast<std::int8_t>(e)});
  };
  for (int j = 1; j <= sig.period_count(); ++j) push({GeneratorKind::x, j}, 1);
  for (int i = 1; i <= sig.orbit_genus; ++i) {
    push({GeneratorKind::a, i}, 1);
    push({GeneratorKind::a, i}, -1);
  }
  for (int i = 1; i <= sig.orbit_genus; ++i) {
    push({GeneratorKind::b, i}, 1);
    push({GeneratorKind::b, i}, -1);
  }
  return out;
}

char class_code(GeneratorClass c) {
  switch (c) {
    case GeneratorClass::H: return 'H';
    case GeneratorClass::E: return 'E';
    case GeneratorClass::M: return 'M';
  }
  return '?';
}

KernelWord inverse(const KernelWord& word) {
  KernelWord out;
  out.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(it->inverse());
  return out;
}

KernelWord free_reduce(const KernelWord& word) {
  KernelWord out;
  out.reserve(word.size());
  for (const KernelLetter& l : word) {
    if (!out.empty() && out.back() == l.inverse()) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

SchreierSystem::SchreierSystem(FiniteGroup group, Signature sig, GeneratingVector vec)
    : group_(std::move(group)), sig_(std::move(sig)), vec_(std::move(vec)) {
  const std::size_t n = group_.order();
  const auto alphabet = ordered_alphabet(sig_);
  std::vector<GroupElement> letter_image;
  for (const Letter& l : alphabet) {
    GroupElement g = generator_image(sig_, vec_, l.generator);
    letter_image.push_back(l.exponent > 0 ? g : group_.inverse(g));
  }

  constexpr std::uint32_t unset = UINT32_MAX;
  coset_of_element_.assign(n, unset);
  std::vector<Gamma0Word> words{{}};
  std::vector<GroupElement> images{group_.identity()};
  coset_of_element_[group_.identity().index] = 0;
  auto take = [&](Gamma0Word w, GroupElement g) {
    coset_of_element_[g.index] = 0;
    words.push_back(std::move(w));
    images.push_back(g);
  };
  // Power chains of the elliptic letters come first, so that x^q is the
  // representative of phi(x)^q whenever no earlier chain reached it.
  for (std::size_t k = 0; k < alphabet.size(); ++k) {
    if (generator_at(sig_, alphabet[k].generator).kind != GeneratorKind::x) continue;
    Gamma0Word w;
    GroupElement g = group_.identity();
    for (;;) {
      g = group_.multiply(g, letter_image[k]);
      if (coset_of_element_[g.index] != unset) break;
      w.push_back(alphabet[k]);
      take(w, g);
    }
  }
  // Remaining cosets breadth-first in length-then-alphabet order, extending
  // only representatives so that prefix closure is kept.
  for (std::size_t head = 0; words.size() < n && head < words.size(); ++head) {
    for (std::size_t k = 0; k < alphabet.size() && words.size() < n; ++k) {
      GroupElement next = group_.multiply(images[head], letter_image[k]);
      if (coset_of_element_[next.index] != unset) continue;
      Gamma0Word w = words[head];
      w.push_back(alphabet[k]);
      take(std::move(w), next);
    }
  }
  if (words.size() != n) {
    throw ValidationError("generating vector reaches only " + std::to_string(words.size()) +
                          " of " + std::to_string(n) + " cosets");
  }

  auto letter_rank = [&](const Letter& l) {
    for (std::size_t k = 0; k < alphabet.size(); ++k)
      if (alphabet[k] == l) return k;
    return alphabet.size();
  };
  std::vector<std::size_t> order(words.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (words[a].size() != words[b].size()) return words[a].size() < words[b].size();
    for (std::size_t i = 0; i < words[a].size(); ++i) {
      const std::size_t ra = letter_rank(words[a][i]), rb = letter_rank(words[b][i]);
      if (ra != rb) return ra < rb;
    }
    return false;
  });
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    reps_.push_back(std::move(words[order[pos]]));
    rep_element_.push_back(images[order[pos]]);
    coset_of_element_[rep_element_.back().index] = static_cast<std::uint32_t>(pos);
  }

  const int gens = sig_.generator_count();
  generators_.reserve(n * static_cast<std::size_t>(gens));
  for (std::uint32_t k = 0; k < n; ++k) {
    for (int v = 0; v < gens; ++v) {
      SchreierGenerator s;
      s.id = static_cast<std::uint32_t>(generators_.size());
      s.coset = k;
      s.letter = static_cast<std::uint16_t>(v);
      // Freely trivial: K v reduces to the representative of Kv. This also
      // covers K ending in v^-1.
      Gamma0Word kv = reps_[k];
      kv.push_back({static_cast<std::uint16_t>(v), 1});
      GroupElement target = group_.multiply(rep_element_[k], generator_image(sig_, vec_, v));
      if (free_reduce(kv) == reps_[coset_of_element_[target.index]]) {
        s.cls = GeneratorClass::M;
        ++counts_.m;
      } else if (generator_at(sig_, v).kind == GeneratorKind::x) {
        s.cls = GeneratorClass::E;
        ++counts_.elliptic;
      } else {
        s.cls = GeneratorClass::H;
        ++counts_.hyperbolic;
      }
      generators_.push_back(s);
    }
  }
  if (counts_.m != n - 1) {
    throw InternalError("found " + std::to_string(counts_.m) + " M-generators, expected " +
                        std::to_string(n - 1));
  }
}

GroupElement SchreierSystem::phi(const Gamma0Word& word) const {
  return evaluate(group_, sig_, vec_, word);
}

std::uint32_t SchreierSystem::bar(const Gamma0Word& word) const { return coset_of(phi(word)); }

std::uint32_t SchreierSystem::generator_id(std::uint32_t coset, int letter) const {
  if (coset >= reps_.size() || letter < 0 || letter >= sig_.generator_count())
    throw IndexError("Schreier generator index out of range");
  return coset * static_cast<std::uint32_t>(sig_.generator_count()) + static_cast<std::uint32_t>(letter);
}

std::uint32_t SchreierSystem::generator_id_for(GroupElement coset_element, int letter) const {
  return generator_id(coset_of(coset_element), letter);
}

std::string SchreierSystem::display(std::uint32_t id) const {
  const SchreierGenerator& s = generators_.at(id);
  return "S[" + std::to_string(s.coset) + "," + generator_name(sig_, s.letter) + "]";
}

std::string SchreierSystem::display(const KernelWord& word) const {
  if (word.empty()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out << ' ';
    out << display(word[i].generator);
    if (word[i].exponent < 0) out << "^-1";
  }
  return out.str();
}

std::string SchreierSystem::format_representative(std::size_t coset) const {
  return format_word(sig_, reps_.at(coset));
}

KernelWord SchreierSystem::rewrite_from(GroupElement start, const Gamma0Word& word,
                                        GroupElement* end) const {
  KernelWord out;
  out.reserve(word.size());
  GroupElement current = start;
  for (const Letter& l : word) {
    GroupElement g = generator_image(sig_, vec_, l.generator);
    if (l.exponent > 0) {
      out.push_back({generator_id(coset_of(current), l.generator), 1});
      current = group_.multiply(current, g);
    } else {
      current = group_.multiply(current, group_.inverse(g));
      out.push_back({generator_id(coset_of(current), l.generator), -1});
    }
  }
  if (end) *end = current;
  return out;
}

KernelWord SchreierSystem::rewrite(const Gamma0Word& word) const {
  GroupElement end;
  KernelWord out = rewrite_from(group_.identity(), word, &end);
  if (end != group_.identity())
    throw NotInKernelError("word " + format_word(sig_, word) + " maps to " + group_.label(end) +
                           ", not the identity");
  return out;
}

KernelWord SchreierSystem::rewrite_conjugate(GroupElement g, const Gamma0Word& word) const {
  const Gamma0Word& k = reps_.at(coset_of(g));
  return rewrite(concat(concat(k, word), surfkernel::inverse(k)));
}

Gamma0Word SchreierSystem::expand(std::uint32_t id) const {
  const SchreierGenerator& s = generators_.at(id);
  Gamma0Word out = reps_[s.coset];
  out.push_back({s.letter, 1});
  GroupElement target = group_.multiply(rep_element_[s.coset], generator_image(sig_, vec_, s.letter));
  Gamma0Word tail = surfkernel::inverse(reps_[coset_of(target)]);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

Gamma0Word SchreierSystem::expand(const KernelWord& word) const {
  Gamma0Word out;
  for (const KernelLetter& l : word) {
    Gamma0Word part = expand(l.generator);
    if (l.exponent < 0) part = surfkernel::inverse(part);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

bool SchreierSystem::is_maximal_power(int letter) const {
  GroupElement g = generator_image(sig_, vec_, letter);
  const int m = element_order(group_, g);
  Gamma0Word power;
  for (int q = 1; q < m; ++q) {
    power.push_back({static_cast<std::uint16_t>(letter), 1});
    if (reps_[coset_of(group_.power(g, q))] != power) return false;
  }
  return true;
}

SchreierSystem build_schreier_system(const FiniteGroup& group, const Signature& sig,
                                     const GeneratingVector& vec) {
  return SchreierSystem(group, sig, vec);
}

const Gamma0Word& bar(const SchreierSystem& sys, const Gamma0Word& word) {
  return sys.representative(sys.bar(word));
}

KernelWord rewrite_tau(const SchreierSystem& sys, const Gamma0Word& word) { return sys.rewrite(word); }

GeneratorClassification classify_generators(const SchreierSystem& sys) {
  return {sys.generators(), sys.counts()};
}

bool detect_maximal_power(const SchreierSystem& sys, Gamma0Generator v) {
  return sys.is_maximal_power(generator_ordinal(sys.signature(), v));
}

}  // namespace surfkernel
