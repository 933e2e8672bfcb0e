#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tracelang/alphabet.hpp"
#include "tracelang/error.hpp"

namespace tracelang {

/// A finite Mazurkiewicz trace, stored as its lexicographically least
/// linearization. Two traces are equal iff their canonical words are.
class Trace {
 public:
  Trace(DependenceAlphabet alphabet, std::string canon)
      : alphabet_(std::move(alphabet)), canon_(std::move(canon)) {}

  const DependenceAlphabet& alphabet() const { return alphabet_; }
  const std::string& canon() const { return canon_; }
  std::size_t size() const { return canon_.size(); }
  bool empty() const { return canon_.empty(); }

  /// Number of occurrences of the given symbol.
  std::size_t count(char c) const { return static_cast<std::size_t>(std::count(canon_.begin(), canon_.end(), c)); }

  bool operator==(const Trace& other) const { return canon_ == other.canon_ && alphabet_ == other.alphabet_; }

 private:
  DependenceAlphabet alphabet_;
  std::string canon_;
};

namespace detail {

// Positions of `word` that are minimal in the dependence graph of the
// not-yet-removed letters. The first occurrence of a letter is minimal iff
// no earlier remaining letter depends on it.
inline std::vector<std::size_t> minimal_positions(const DependenceAlphabet& alphabet,
                                                  const std::vector<Letter>& word,
                                                  const std::vector<bool>& removed) {
  std::vector<std::size_t> out;
  LetterMask seen = 0;
  LetterMask reported = 0;
  for (std::size_t p = 0; p < word.size(); ++p) {
    if (removed[p]) continue;
    Letter x = word[p];
    if ((alphabet.dependence_mask(x) & seen) == 0 && (reported & DependenceAlphabet::bit(x)) == 0) {
      out.push_back(p);
      reported |= DependenceAlphabet::bit(x);
    }
    seen |= DependenceAlphabet::bit(x);
  }
  return out;
}

inline void collect_linearizations(const DependenceAlphabet& alphabet, const std::vector<Letter>& word,
                                   std::vector<bool>& removed, std::string& prefix,
                                   std::set<std::string>& out) {
  if (prefix.size() == word.size()) {
    out.insert(prefix);
    return;
  }
  for (std::size_t p : minimal_positions(alphabet, word, removed)) {
    removed[p] = true;
    prefix.push_back(alphabet.symbol(word[p]));
    collect_linearizations(alphabet, word, removed, prefix, out);
    prefix.pop_back();
    removed[p] = false;
  }
}

}  // namespace detail

/// Canonical form Γ(word): repeatedly emit the least letter labelling a
/// minimal vertex of the remaining dependence graph.
inline Trace normal_form(std::string_view word, const DependenceAlphabet& alphabet) {
  std::vector<Letter> letters = alphabet.indices(word);
  std::vector<bool> removed(letters.size(), false);
  std::string canon;
  canon.reserve(letters.size());
  for (std::size_t step = 0; step < letters.size(); ++step) {
    auto candidates = detail::minimal_positions(alphabet, letters, removed);
    std::size_t best = *std::min_element(candidates.begin(), candidates.end(),
                                         [&](std::size_t x, std::size_t y) { return letters[x] < letters[y]; });
    removed[best] = true;
    canon.push_back(alphabet.symbol(letters[best]));
  }
  return Trace(alphabet, std::move(canon));
}

/// u ~_I v.
inline bool equivalent(std::string_view u, std::string_view v, const DependenceAlphabet& alphabet) {
  if (u.size() != v.size()) {
    alphabet.check_word(u);
    alphabet.check_word(v);
    return false;
  }
  return normal_form(u, alphabet).canon() == normal_form(v, alphabet).canon();
}

/// Γ⁻¹(t): every topological ordering of the dependence graph. Exponential in
/// general; intended for short traces.
inline std::set<std::string> linearizations(const Trace& t) {
  std::vector<Letter> letters = t.alphabet().indices(t.canon());
  std::vector<bool> removed(letters.size(), false);
  std::string prefix;
  std::set<std::string> out;
  detail::collect_linearizations(t.alphabet(), letters, removed, prefix, out);
  return out;
}

/// t1 ⊑ t2. Consumes t1 letter by letter from t2's dependence graph; equal
/// labels are dependent, so the minimal vertex carrying a label is unique.
inline bool prefix_of(const Trace& t1, const Trace& t2) {
  require_same_alphabet(t1.alphabet(), t2.alphabet());
  const auto& alphabet = t2.alphabet();
  std::vector<Letter> rest = alphabet.indices(t2.canon());
  std::vector<bool> removed(rest.size(), false);
  for (char c : t1.canon()) {
    Letter x = alphabet.index(c);
    LetterMask seen = 0;
    bool found = false;
    for (std::size_t p = 0; p < rest.size(); ++p) {
      if (removed[p]) continue;
      if (rest[p] == x) {
        if ((alphabet.dependence_mask(x) & seen) != 0) return false;
        removed[p] = true;
        found = true;
        break;
      }
      seen |= DependenceAlphabet::bit(rest[p]);
    }
    if (!found) return false;
  }
  return true;
}

/// t1 ⊔ t2. The i-th occurrence of each letter in t1 is identified with the
/// i-th occurrence in t2; the union of both dependence orders must be acyclic,
/// order every dependent pair, and keep each operand downward closed.
inline Trace lub(const Trace& t1, const Trace& t2) {
  require_same_alphabet(t1.alphabet(), t2.alphabet());
  const auto& alphabet = t1.alphabet();
  const std::size_t k = alphabet.size();

  std::vector<std::size_t> count1(k, 0), count2(k, 0), count(k, 0);
  for (char c : t1.canon()) ++count1[alphabet.index(c)];
  for (char c : t2.canon()) ++count2[alphabet.index(c)];
  std::vector<std::size_t> base(k + 1, 0);
  for (Letter a = 0; a < k; ++a) {
    count[a] = std::max(count1[a], count2[a]);
    base[a + 1] = base[a] + count[a];
  }
  const std::size_t n = base[k];
  std::vector<Letter> label(n);
  for (Letter a = 0; a < k; ++a)
    for (std::size_t i = base[a]; i < base[a + 1]; ++i) label[i] = a;

  // reach[x][y]: x precedes y.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  auto add_order = [&](const std::string& canon) {
    std::vector<std::size_t> seen(k, 0);
    std::vector<std::size_t> vertex;
    for (char c : canon) {
      Letter a = alphabet.index(c);
      vertex.push_back(base[a] + seen[a]++);
    }
    for (std::size_t p = 0; p < vertex.size(); ++p)
      for (std::size_t q = p + 1; q < vertex.size(); ++q)
        if (alphabet.dependent(label[vertex[p]], label[vertex[q]])) reach[vertex[p]][vertex[q]] = true;
  };
  add_order(t1.canon());
  add_order(t2.canon());

  std::vector<bool> in1(n), in2(n);
  for (Letter a = 0; a < k; ++a) {
    for (std::size_t i = 0; i < count[a]; ++i) {
      in1[base[a] + i] = i < count1[a];
      in2[base[a] + i] = i < count2[a];
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (reach[x][y] && ((in1[y] && !in1[x]) || (in2[y] && !in2[x])))
        throw Error(ErrorKind::NoUpperBound, "a vertex outside an operand precedes one of its vertices");

  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t x = 0; x < n; ++x)
      if (reach[x][m])
        for (std::size_t y = 0; y < n; ++y)
          if (reach[m][y]) reach[x][y] = true;

  for (std::size_t x = 0; x < n; ++x) {
    if (reach[x][x]) throw Error(ErrorKind::NoUpperBound, "the aligned orders contradict each other");
    for (std::size_t y = x + 1; y < n; ++y)
      if (alphabet.dependent(label[x], label[y]) && !reach[x][y] && !reach[y][x])
        throw Error(ErrorKind::NoUpperBound, "a dependent pair is left unordered");
  }

  // Any topological order is a linearization of the bound.
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (reach[x][y]) ++indegree[y];
  std::string word;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t x = 0; x < n && pick == n; ++x)
      if (!done[x] && indegree[x] == 0) pick = x;
    done[pick] = true;
    word.push_back(alphabet.symbol(label[pick]));
    for (std::size_t y = 0; y < n; ++y)
      if (reach[pick][y]) --indegree[y];
  }
  return normal_form(word, alphabet);
}

/// t1 ⊙ t2.
inline Trace concat_traces(const Trace& t1, const Trace& t2) {
  require_same_alphabet(t1.alphabet(), t2.alphabet());
  return normal_form(t1.canon() + t2.canon(), t1.alphabet());
}

/// Finite representation u·v^ω of an ultimately periodic ω-word.
struct LassoWord {
  std::string spoke;
  std::string cycle;

  LassoWord(std::string spoke_word, std::string cycle_word)
      : spoke(std::move(spoke_word)), cycle(std::move(cycle_word)) {
    if (cycle.empty()) throw Error(ErrorKind::ParseError, "lasso cycle must be nonempty");
  }

  /// First n letters of u·v^ω.
  std::string prefix(std::size_t n) const {
    std::string out = spoke.substr(0, std::min(n, spoke.size()));
    while (out.size() < n) out.push_back(cycle[(out.size() - spoke.size()) % cycle.size()]);
    return out;
  }

  bool operator==(const LassoWord&) const = default;
};

namespace detail {

// Ultimately periodic word, or a finite one when `cycle` is empty.
struct Projection {
  std::string spoke;
  std::string cycle;
};

inline Projection project(const LassoWord& lasso, const DependenceAlphabet& alphabet, LetterMask keep) {
  auto filter = [&](const std::string& word) {
    std::string out;
    for (char c : word)
      if (keep & DependenceAlphabet::bit(alphabet.index(c))) out.push_back(c);
    return out;
  };
  return {filter(lasso.spoke), filter(lasso.cycle)};
}

inline bool same_projection(const Projection& x, const Projection& y) {
  if (x.cycle.empty() || y.cycle.empty()) {
    return x.cycle.empty() && y.cycle.empty() && x.spoke == y.spoke;
  }
  // Both words are periodic with period lcm(|v1|,|v2|) past the longer spoke.
  std::size_t n = std::max(x.spoke.size(), y.spoke.size()) + std::lcm(x.cycle.size(), y.cycle.size());
  return LassoWord(x.spoke, x.cycle).prefix(n) == LassoWord(y.spoke, y.cycle).prefix(n);
}

}  // namespace detail

/// Γ(u1·v1^ω) = Γ(u2·v2^ω), via projections onto every dependent pair
/// (including each letter with itself).
inline bool lasso_equivalent(const LassoWord& l1, const LassoWord& l2, const DependenceAlphabet& alphabet) {
  for (const auto* l : {&l1, &l2}) {
    alphabet.check_word(l->spoke);
    alphabet.check_word(l->cycle);
  }
  for (Letter a = 0; a < alphabet.size(); ++a) {
    for (Letter b = a; b < alphabet.size(); ++b) {
      if (!alphabet.dependent(a, b)) continue;
      LetterMask keep = DependenceAlphabet::bit(a) | DependenceAlphabet::bit(b);
      if (!detail::same_projection(detail::project(l1, alphabet, keep), detail::project(l2, alphabet, keep)))
        return false;
    }
  }
  return true;
}

}  // namespace tracelang
