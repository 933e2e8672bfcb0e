#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tracelang/dfa.hpp"
#include "tracelang/omega.hpp"

namespace tracelang {

using Element = std::uint32_t;

struct SemigroupOptions {
  std::size_t max_elements = 4096;
  std::size_t eager_associativity_limit = 128;  // check all triples up to this size
  std::size_t associativity_samples = 200000;
};

/// Finite semigroup given by its Cayley table (s·t at s * size + t) and a
/// morphism from Σ⁺ fixed by the image of each letter.
class FiniteSemigroup {
 public:
  FiniteSemigroup(DependenceAlphabet alphabet, std::size_t size, std::vector<Element> table,
                  std::vector<Element> generators, std::vector<std::string> names = {},
                  const SemigroupOptions& options = {})
      : alphabet_(std::move(alphabet)),
        size_(size),
        table_(std::move(table)),
        generators_(std::move(generators)),
        names_(std::move(names)) {
    if (size_ == 0) throw Error(ErrorKind::InvalidAutomaton, "a semigroup needs at least one element");
    if (table_.size() != size_ * size_) throw Error(ErrorKind::InvalidAutomaton, "Cayley table has the wrong size");
    for (Element x : table_)
      if (x >= size_) throw Error(ErrorKind::InvalidAutomaton, "Cayley table entry out of range");
    if (generators_.size() != alphabet_.size())
      throw Error(ErrorKind::InvalidAutomaton, "one generator image per letter is required");
    for (Element g : generators_)
      if (g >= size_) throw Error(ErrorKind::InvalidAutomaton, "generator image out of range");
    if (names_.empty())
      for (std::size_t i = 0; i < size_; ++i) names_.push_back(std::to_string(i));
    check_associative(options);
    compute_representatives();
  }

  const DependenceAlphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return size_; }
  Element multiply(Element s, Element t) const { return table_[s * size_ + t]; }
  Element generator(Letter a) const { return generators_[a]; }
  const std::vector<Element>& generators() const { return generators_; }
  const std::vector<Element>& table() const { return table_; }
  const std::string& name(Element s) const { return names_[s]; }
  bool idempotent(Element e) const { return multiply(e, e) == e; }

  /// Shortest (then least) nonempty word mapped to each element.
  const std::string& representative(Element s) const { return representatives_[s]; }

  /// φ(w) for a nonempty word.
  Element image(std::string_view word) const {
    if (word.empty()) throw Error(ErrorKind::InvalidAutomaton, "the empty word has no image in a semigroup");
    Element s = generator(alphabet_.index(word.front()));
    for (std::size_t i = 1; i < word.size(); ++i) s = multiply(s, generator(alphabet_.index(word[i])));
    return s;
  }

  /// True iff φ(a)φ(b) = φ(b)φ(a) for every independent pair, so that φ
  /// factors through the trace monoid.
  std::optional<std::pair<Letter, Letter>> noncommuting_pair() const {
    for (auto [a, b] : alphabet_.independent_pairs())
      if (multiply(generator(a), generator(b)) != multiply(generator(b), generator(a))) return std::make_pair(a, b);
    return std::nullopt;
  }

 private:
  void check_associative(const SemigroupOptions& options) const {
    auto bad = [&](Element x, Element y, Element z) { return multiply(multiply(x, y), z) != multiply(x, multiply(y, z)); };
    if (size_ <= options.eager_associativity_limit) {
      for (Element x = 0; x < size_; ++x)
        for (Element y = 0; y < size_; ++y)
          for (Element z = 0; z < size_; ++z)
            if (bad(x, y, z)) throw Error(ErrorKind::NotAssociative, "product table is not associative");
      return;
    }
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(size_ - 1));
    for (std::size_t i = 0; i < options.associativity_samples; ++i)
      if (bad(pick(rng), pick(rng), pick(rng)))
        throw Error(ErrorKind::NotAssociative, "product table is not associative");
  }

  void compute_representatives() {
    std::vector<bool> seen(size_, false);
    representatives_.assign(size_, std::string());
    std::deque<Element> queue;
    for (Letter a = 0; a < alphabet_.size(); ++a) {
      Element g = generators_[a];
      if (seen[g]) continue;
      seen[g] = true;
      representatives_[g] = std::string(1, alphabet_.symbol(a));
      queue.push_back(g);
    }
    while (!queue.empty()) {
      Element s = queue.front();
      queue.pop_front();
      for (Letter a = 0; a < alphabet_.size(); ++a) {
        Element t = multiply(s, generators_[a]);
        if (seen[t]) continue;
        seen[t] = true;
        representatives_[t] = representatives_[s] + alphabet_.symbol(a);
        queue.push_back(t);
      }
    }
    for (Element s = 0; s < size_; ++s)
      if (!seen[s]) throw Error(ErrorKind::InvalidAutomaton, "element " + names_[s] + " is not generated by the letters");
  }

  DependenceAlphabet alphabet_;
  std::size_t size_;
  std::vector<Element> table_;
  std::vector<Element> generators_;
  std::vector<std::string> names_;
  std::vector<std::string> representatives_;
};

struct LinkedPair {
  Element s;
  Element e;

  bool operator==(const LinkedPair&) const = default;
  auto operator<=>(const LinkedPair&) const = default;
};

/// All (s, e) with s·e = s and e·e = e, in element order.
inline std::vector<LinkedPair> linked_pairs(const FiniteSemigroup& semigroup) {
  std::vector<LinkedPair> out;
  for (Element s = 0; s < semigroup.size(); ++s)
    for (Element e = 0; e < semigroup.size(); ++e)
      if (semigroup.idempotent(e) && semigroup.multiply(s, e) == s) out.push_back({s, e});
  return out;
}

namespace detail {

// Closes the generator images under right multiplication by generators.
// `compose(x, y)` multiplies two values of type T.
template <typename T, typename Compose, typename Name>
FiniteSemigroup generate(const DependenceAlphabet& alphabet, const std::vector<T>& letter_values, Compose compose,
                         Name name, std::vector<T>& values, const SemigroupOptions& options) {
  std::map<T, Element> index;
  values.clear();
  auto intern = [&](const T& v) {
    auto [it, inserted] = index.emplace(v, static_cast<Element>(values.size()));
    if (inserted) {
      if (values.size() >= options.max_elements)
        throw Error(ErrorKind::SizeLimit, "semigroup exceeds " + std::to_string(options.max_elements) + " elements");
      values.push_back(v);
    }
    return it->second;
  };
  std::vector<Element> generators;
  for (const auto& v : letter_values) generators.push_back(intern(v));
  for (std::size_t i = 0; i < values.size(); ++i)
    for (const auto& g : letter_values) intern(compose(values[i], g));
  const std::size_t m = values.size();
  std::vector<Element> table(m * m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) table[x * m + y] = index.at(compose(values[x], values[y]));
  std::vector<std::string> names;
  for (std::size_t x = 0; x < m; ++x) names.push_back(name(x));
  return FiniteSemigroup(alphabet, m, std::move(table), std::move(generators), std::move(names), options);
}

}  // namespace detail

/// State-map semigroup of the minimal DFA: τ_w(q) = δ(q, w), with products
/// read left to right (s·t applies s first). P collects the maps sending the
/// initial state into F.
struct TransitionRecognizer {
  Dfa automaton;
  FiniteSemigroup semigroup;
  std::vector<std::vector<State>> maps;
  std::vector<bool> accepting;
};

inline TransitionRecognizer transition_semigroup(const Dfa& dfa, const SemigroupOptions& options = {}) {
  Dfa minimal = minimize(dfa);
  using Map = std::vector<State>;
  std::vector<Map> letters;
  for (Letter a = 0; a < minimal.letter_count(); ++a) {
    Map m(minimal.state_count());
    for (State q = 0; q < minimal.state_count(); ++q) m[q] = minimal.next(q, a);
    letters.push_back(std::move(m));
  }
  auto compose = [](const Map& s, const Map& t) {
    Map out(s.size());
    for (std::size_t q = 0; q < s.size(); ++q) out[q] = t[s[q]];
    return out;
  };
  std::vector<Map> maps;
  auto name = [&](std::size_t x) {
    std::string out = "[";
    for (std::size_t q = 0; q < maps[x].size(); ++q) out += (q ? " " : "") + std::to_string(maps[x][q]);
    return out + "]";
  };
  FiniteSemigroup semigroup = detail::generate(minimal.alphabet(), letters, compose, name, maps, options);
  std::vector<bool> accepting(maps.size());
  for (std::size_t x = 0; x < maps.size(); ++x) accepting[x] = minimal.is_final(maps[x][minimal.initial()]);
  return {std::move(minimal), std::move(semigroup), std::move(maps), std::move(accepting)};
}

/// Extended transition profile: per state, the target and whether a final
/// state is entered on the way (the start state itself does not count).
using Profile = std::vector<std::pair<State, bool>>;

inline Profile compose_profiles(const Profile& s, const Profile& t) {
  Profile out(s.size());
  for (std::size_t q = 0; q < s.size(); ++q) {
    auto [mid, flag] = s[q];
    out[q] = {t[mid].first, flag || t[mid].second};
  }
  return out;
}

/// An independent pair whose profiles do not commute, with the first state
/// where τ_ab and τ_ba differ.
struct CommutationFailure {
  Letter a;
  Letter b;
  State state;
  std::pair<State, bool> ab;
  std::pair<State, bool> ba;
};

struct ProfileRecognizer {
  Dfa automaton;
  FiniteSemigroup semigroup;
  std::vector<Profile> profiles;
  std::vector<CommutationFailure> noncommuting;
};

inline ProfileRecognizer profile_semigroup(const OmegaAutomaton& automaton, const SemigroupOptions& options = {}) {
  if (automaton.kind() == AcceptanceKind::Muller)
    throw Error(ErrorKind::InvalidAutomaton, "profiles need a final-state acceptance condition");
  const Dfa& dfa = automaton.structure();
  std::vector<Profile> letters;
  for (Letter a = 0; a < dfa.letter_count(); ++a) {
    Profile p(dfa.state_count());
    for (State q = 0; q < dfa.state_count(); ++q) p[q] = {dfa.next(q, a), dfa.is_final(dfa.next(q, a))};
    letters.push_back(std::move(p));
  }
  std::vector<CommutationFailure> failures;
  for (auto [a, b] : dfa.alphabet().independent_pairs()) {
    Profile ab = compose_profiles(letters[a], letters[b]);
    Profile ba = compose_profiles(letters[b], letters[a]);
    for (State q = 0; q < dfa.state_count(); ++q) {
      if (ab[q] != ba[q]) {
        failures.push_back({a, b, q, ab[q], ba[q]});
        break;
      }
    }
  }
  std::vector<Profile> profiles;
  auto name = [&](std::size_t x) {
    std::string out = "[";
    for (std::size_t q = 0; q < profiles[x].size(); ++q)
      out += (q ? " " : "") + std::to_string(profiles[x][q].first) + (profiles[x][q].second ? "*" : "");
    return out + "]";
  };
  FiniteSemigroup semigroup = detail::generate(dfa.alphabet(), letters, compose_profiles, name, profiles, options);
  return {dfa, std::move(semigroup), std::move(profiles), std::move(failures)};
}

/// Componentwise product of two morphisms on the same alphabet, restricted
/// to the elements reachable from the paired generators.
struct ProductSemigroup {
  FiniteSemigroup semigroup;
  std::vector<std::pair<Element, Element>> components;
};

inline ProductSemigroup product_morphism(const FiniteSemigroup& lhs, const FiniteSemigroup& rhs,
                                         const SemigroupOptions& options = {}) {
  require_same_alphabet(lhs.alphabet(), rhs.alphabet());
  using Pair = std::pair<Element, Element>;
  std::vector<Pair> letters;
  for (Letter a = 0; a < lhs.alphabet().size(); ++a) letters.emplace_back(lhs.generator(a), rhs.generator(a));
  auto compose = [&](const Pair& x, const Pair& y) {
    return Pair{lhs.multiply(x.first, y.first), rhs.multiply(x.second, y.second)};
  };
  std::vector<Pair> components;
  auto name = [&](std::size_t x) {
    return "(" + lhs.name(components[x].first) + "," + rhs.name(components[x].second) + ")";
  };
  FiniteSemigroup semigroup = detail::generate(lhs.alphabet(), letters, compose, name, components, options);
  return {std::move(semigroup), std::move(components)};
}

struct PcutResult {
  bool holds = true;
  std::optional<std::string> hitting;  // φ(w) = e and some prefix lands in s⁻¹P
  std::optional<std::string> missing;  // φ(w) = e and no prefix does
};

/// P-cut property of a linked pair. Prefix index j ranges over 1..k, so the
/// search walks (φ(prefix), hit-so-far) over nonempty prefixes; the property
/// fails iff e is reached with both flag values.
inline PcutResult pcut_check(const FiniteSemigroup& semigroup, const std::vector<bool>& accepting, LinkedPair pair) {
  if (auto bad = semigroup.noncommuting_pair()) {
    const auto& sigma = semigroup.alphabet();
    throw Error(ErrorKind::MorphismNotOnTraces, std::string("images of independent letters ") +
                                                    sigma.symbol(bad->first) + " and " + sigma.symbol(bad->second) +
                                                    " do not commute");
  }
  if (pair.s >= semigroup.size() || pair.e >= semigroup.size() || semigroup.multiply(pair.s, pair.e) != pair.s ||
      !semigroup.idempotent(pair.e))
    throw Error(ErrorKind::NotLinked, "(" + std::to_string(pair.s) + "," + std::to_string(pair.e) + ") is not a linked pair");
  if (accepting.size() != semigroup.size()) throw Error(ErrorKind::InvalidAutomaton, "accepting set has the wrong size");

  const std::size_t m = semigroup.size();
  // e·x ∈ s⁻¹P  ⟺  s·e·x ∈ P  ⟺  s·x ∈ P.
  auto hit = [&](Element x) { return accepting[semigroup.multiply(pair.s, x)]; };
  auto node = [m](Element x, bool flag) { return x + (flag ? m : 0); };
  std::vector<std::optional<std::string>> word(2 * m);
  std::deque<std::pair<Element, bool>> queue;
  const auto& sigma = semigroup.alphabet();
  for (Letter a = 0; a < sigma.size(); ++a) {
    Element g = semigroup.generator(a);
    bool flag = hit(g);
    if (word[node(g, flag)]) continue;
    word[node(g, flag)] = std::string(1, sigma.symbol(a));
    queue.emplace_back(g, flag);
  }
  while (!queue.empty()) {
    auto [x, flag] = queue.front();
    queue.pop_front();
    for (Letter a = 0; a < sigma.size(); ++a) {
      Element y = semigroup.multiply(x, semigroup.generator(a));
      bool f = flag || hit(y);
      if (word[node(y, f)]) continue;
      word[node(y, f)] = *word[node(x, flag)] + sigma.symbol(a);
      queue.emplace_back(y, f);
    }
  }
  PcutResult result;
  result.hitting = word[node(pair.e, true)];
  result.missing = word[node(pair.e, false)];
  result.holds = !(result.hitting && result.missing);
  if (result.holds) {
    result.hitting.reset();
    result.missing.reset();
  }
  return result;
}

/// Linked pairs of the profile semigroup split by membership in P_T: with
/// q = s(q0), the pair is accepted iff the e-profile at q enters F.
struct LimPairs {
  ProfileRecognizer recognizer;
  std::vector<LinkedPair> accepted;
  std::vector<LinkedPair> rejected;
};

inline LimPairs lim_linked_pairs(const OmegaAutomaton& automaton, const SemigroupOptions& options = {}) {
  LimPairs out{profile_semigroup(automaton, options), {}, {}};
  const auto& profiles = out.recognizer.profiles;
  State q0 = out.recognizer.automaton.initial();
  for (LinkedPair pair : linked_pairs(out.recognizer.semigroup)) {
    State q = profiles[pair.s][q0].first;
    (profiles[pair.e][q].second ? out.accepted : out.rejected).push_back(pair);
  }
  return out;
}

}  // namespace tracelang
