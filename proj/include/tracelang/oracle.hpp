#pragma once

// Deliberately naive reference implementations, kept independent of the
// constructions they are used to check.

#include <cstddef>
#include <deque>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tracelang/dfa.hpp"
#include "tracelang/trace.hpp"

namespace tracelang {

struct OracleOptions {
  std::size_t max_length = 10;
};

/// [word]_~ by breadth-first search over single adjacent swaps.
inline std::set<std::string> swap_class(std::string_view word, const DependenceAlphabet& alphabet,
                                        const OracleOptions& options = {}) {
  if (word.size() > options.max_length)
    throw Error(ErrorKind::BoundExceeded, "word longer than " + std::to_string(options.max_length));
  alphabet.check_word(word);
  std::set<std::string> seen{std::string(word)};
  std::deque<std::string> queue{std::string(word)};
  while (!queue.empty()) {
    std::string w = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (!alphabet.independent(w[i], w[i + 1])) continue;
      std::string v = w;
      std::swap(v[i], v[i + 1]);
      if (seen.insert(v).second) queue.push_back(v);
    }
  }
  return seen;
}

struct BoundedLanguage {
  std::size_t bound = 0;
  std::set<std::string> words;

  bool operator==(const BoundedLanguage&) const = default;
};

/// Every word of length at most n, in length-lexicographic order.
inline std::vector<std::string> all_words(const DependenceAlphabet& alphabet, std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t begin = 0; begin < out.size(); ++begin) {
    if (out[begin].size() == n) continue;
    for (char c : alphabet.letters()) out.push_back(out[begin] + c);
  }
  return out;
}

/// L(A) ∩ Σ^{≤n}.
inline BoundedLanguage bounded_language(const Dfa& dfa, std::size_t n) {
  BoundedLanguage out{n, {}};
  for (const auto& w : all_words(dfa.alphabet(), n))
    if (dfa.accepts(w)) out.words.insert(w);
  return out;
}

/// [L(A)]_~ ∩ Σ^{≤n}; exact because swaps preserve length.
inline BoundedLanguage bounded_closure_oracle(const Dfa& dfa, std::size_t n, const OracleOptions& options = {}) {
  if (n > options.max_length) throw Error(ErrorKind::BoundExceeded, "bound larger than " + std::to_string(options.max_length));
  BoundedLanguage out{n, {}};
  for (const auto& w : bounded_language(dfa, n).words) {
    auto cls = swap_class(w, dfa.alphabet(), options);
    out.words.insert(cls.begin(), cls.end());
  }
  return out;
}

namespace detail {

// Length of the scanned prefix of u·v^ω. After |u| letters the pair
// (position in v, state) determines the rest of the run, and among |Q|+1
// consecutive visits to position 0 of v some state repeats; the scan
// therefore covers a full period of the run's eventual cycle.
inline std::size_t scan_length(const Dfa& dfa, const LassoWord& lasso) {
  return lasso.spoke.size() + lasso.cycle.size() * (dfa.state_count() + 1);
}

}  // namespace detail

/// u·v^ω has a prefix in L(A).
inline bool ext_prefix_oracle(const Dfa& dfa, const LassoWord& lasso) {
  std::string scan = lasso.prefix(detail::scan_length(dfa, lasso));
  for (std::size_t n = 0; n <= scan.size(); ++n)
    if (dfa.accepts(scan.substr(0, n))) return true;
  return false;
}

/// u·v^ω has infinitely many prefixes in L(A): some accepted prefix ends
/// inside the stretch that the run repeats forever.
inline bool lim_prefix_oracle(const Dfa& dfa, const LassoWord& lasso) {
  const std::size_t n = dfa.state_count();
  const std::size_t u = lasso.spoke.size();
  const std::size_t v = lasso.cycle.size();
  std::string scan = lasso.prefix(detail::scan_length(dfa, lasso));
  // States at the boundaries u·v^i, i = 0..n; the first repeat closes the period.
  std::vector<std::size_t> first_seen(n, ~std::size_t{0});
  std::size_t start = 0;
  std::size_t stop = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    State q = dfa.run(dfa.initial(), scan.substr(0, u + i * v));
    if (first_seen[q] != ~std::size_t{0}) {
      start = first_seen[q];
      stop = i;
      break;
    }
    first_seen[q] = i;
  }
  for (std::size_t len = u + start * v + 1; len <= u + stop * v; ++len)
    if (dfa.accepts(scan.substr(0, len))) return true;
  return false;
}

/// Direct search for two equivalent cycles that disagree on visiting F,
/// independent of the K_q construction: some reachable p with
/// δ(p,ab) = δ(p,ba) = r for independent a, b, where exactly one of δ(p,a),
/// δ(p,b) is final, p and r are non-final, and r → p → ... → r closes a
/// cycle through non-final states only. The two cycles are then
/// x·ab·y and x·ba·y at r.
inline bool fi_cycle_closed_by_swaps(const Dfa& dfa) {
  const std::size_t n = dfa.state_count();
  // nonfinal_reach[x][y]: y reachable from x through non-final states
  // (endpoints included, x = y allowed via the empty path).
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (State x = 0; x < n; ++x) {
    if (dfa.is_final(x)) continue;
    std::vector<State> stack{x};
    reach[x][x] = true;
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (Letter a = 0; a < dfa.letter_count(); ++a) {
        State t = dfa.next(q, a);
        if (dfa.is_final(t) || reach[x][t]) continue;
        reach[x][t] = true;
        stack.push_back(t);
      }
    }
  }
  auto live = reachable_from(dfa, dfa.initial());
  for (State p = 0; p < n; ++p) {
    if (!live[p] || dfa.is_final(p)) continue;
    for (auto [a, b] : dfa.alphabet().independent_pairs()) {
      State r = dfa.next(dfa.next(p, a), b);
      if (r != dfa.next(dfa.next(p, b), a) || dfa.is_final(r)) continue;
      if (dfa.is_final(dfa.next(p, a)) == dfa.is_final(dfa.next(p, b))) continue;
      if (reach[r][p]) return false;
    }
  }
  return true;
}

}  // namespace tracelang
