#pragma once

#include <chrono>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tracelang/dfa.hpp"
#include "tracelang/omega.hpp"

namespace tracelang {

/// A reachable state q and independent letters a, b with δ(q,ab) ≠ δ(q,ba).
struct DiamondWitness {
  State state;
  Letter a;
  Letter b;

  bool operator==(const DiamondWitness&) const = default;
};

inline std::optional<DiamondWitness> find_diamond_violation(const Dfa& dfa) {
  auto pairs = dfa.alphabet().independent_pairs();
  if (pairs.empty()) return std::nullopt;
  auto seen = reachable_from(dfa, dfa.initial());
  for (State q = 0; q < dfa.state_count(); ++q) {
    if (!seen[q]) continue;
    for (auto [a, b] : pairs)
      if (dfa.next(dfa.next(q, a), b) != dfa.next(dfa.next(q, b), a)) return DiamondWitness{q, a, b};
  }
  return std::nullopt;
}

inline bool is_i_diamond(const Dfa& dfa) { return !find_diamond_violation(dfa).has_value(); }
inline bool is_i_diamond(const OmegaAutomaton& automaton) { return is_i_diamond(automaton.structure()); }

/// A regular language is trace-closed iff its minimal DFA is I-diamond.
inline bool is_trace_closed(const Dfa& dfa) { return is_i_diamond(minimize(dfa)); }

/// Two cycles at `state` labelled by equivalent words; exactly one of them
/// passes through a final state.
struct CycleWitness {
  State state;
  std::string visiting;
  std::string avoiding;

  bool operator==(const CycleWitness&) const = default;
};

struct StabilityReport {
  bool verdict = true;
  std::optional<CycleWitness> witness;
  std::chrono::duration<double, std::milli> elapsed{0};
  std::size_t state_count = 0;
  std::size_t letter_count = 0;
};

/// K_q: nonempty words w with δ(q,w) = q whose run from q enters a final
/// state at some step. Built on Q × {0,1}, the bit recording a final visit.
inline Dfa cycle_language(const Dfa& dfa, State q) {
  const std::size_t n = dfa.state_count();
  auto encode = [n](State p, bool flag) { return static_cast<State>(p + (flag ? n : 0)); };
  std::vector<bool> finals(2 * n, false);
  finals[encode(q, true)] = true;
  return Dfa::from_function(
      dfa.alphabet(), 2 * n, encode(q, false),
      [&](State s, Letter a) {
        State p = s % static_cast<State>(n);
        State t = dfa.next(p, a);
        return encode(t, s >= n || dfa.is_final(t));
      },
      std::move(finals));
}

namespace detail {

// Lexicographically least among the shortest words leading from the initial
// state to each state.
inline std::vector<std::optional<std::string>> access_words(const Dfa& dfa) {
  std::vector<std::optional<std::string>> word(dfa.state_count());
  word[dfa.initial()] = std::string();
  std::deque<State> queue{dfa.initial()};
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (Letter a = 0; a < dfa.letter_count(); ++a) {
      State t = dfa.next(q, a);
      if (!word[t]) {
        word[t] = *word[q] + dfa.alphabet().symbol(a);
        queue.push_back(t);
      }
    }
  }
  return word;
}

// Shortest (then least) z such that exactly one of δ(s,z), δ(t,z) is final.
inline std::optional<std::string> distinguishing_suffix(const Dfa& dfa, State s, State t) {
  const std::size_t n = dfa.state_count();
  std::vector<std::optional<std::string>> word(n * n);
  std::deque<std::pair<State, State>> queue{{s, t}};
  word[s * n + t] = std::string();
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    if (dfa.is_final(x) != dfa.is_final(y)) return word[x * n + y];
    for (Letter a = 0; a < dfa.letter_count(); ++a) {
      State x2 = dfa.next(x, a);
      State y2 = dfa.next(y, a);
      if (!word[x2 * n + y2]) {
        word[x2 * n + y2] = *word[x * n + y] + dfa.alphabet().symbol(a);
        queue.emplace_back(x2, y2);
      }
    }
  }
  return std::nullopt;
}

// From a minimal DFA for K_q that is not I-diamond, the shortest pair
// x·ab·z / x·ba·z with exactly one word in K_q.
inline std::optional<std::pair<std::string, std::string>> cycle_pair(const Dfa& kq) {
  auto access = access_words(kq);
  std::optional<std::tuple<std::size_t, std::string, std::string>> best;
  for (State r = 0; r < kq.state_count(); ++r) {
    if (!access[r]) continue;
    for (auto [a, b] : kq.alphabet().independent_pairs()) {
      State ab = kq.next(kq.next(r, a), b);
      State ba = kq.next(kq.next(r, b), a);
      if (ab == ba) continue;
      auto z = distinguishing_suffix(kq, ab, ba);
      if (!z) continue;
      std::string sa(1, kq.alphabet().symbol(a));
      std::string sb(1, kq.alphabet().symbol(b));
      std::string w1 = *access[r] + sa + sb + *z;
      std::string w2 = *access[r] + sb + sa + *z;
      if (!kq.accepts(w1)) std::swap(w1, w2);
      auto candidate = std::make_tuple(w1.size(), w1, w2);
      if (!best || candidate < *best) best = candidate;
    }
  }
  if (!best) return std::nullopt;
  return std::make_pair(std::get<1>(*best), std::get<2>(*best));
}

}  // namespace detail

/// F,I-cycle closure of an I-diamond automaton read as a Büchi automaton:
/// every K_q must be trace-closed. The first failing state in state order
/// supplies the witness.
inline StabilityReport fi_cycle_closed(const Dfa& dfa) {
  auto start = std::chrono::steady_clock::now();
  if (!is_i_diamond(dfa)) throw Error(ErrorKind::NotIDiamond, "F,I-cycle closure is defined for I-diamond automata");
  StabilityReport report;
  report.state_count = dfa.state_count();
  report.letter_count = dfa.letter_count();
  if (dfa.alphabet().has_independence()) {
    auto seen = reachable_from(dfa, dfa.initial());
    for (State q = 0; q < dfa.state_count() && report.verdict; ++q) {
      if (!seen[q]) continue;
      Dfa kq = minimize(cycle_language(dfa, q));
      if (is_i_diamond(kq)) continue;
      report.verdict = false;
      if (auto pair = detail::cycle_pair(kq)) report.witness = CycleWitness{q, pair->first, pair->second};
    }
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

inline StabilityReport fi_cycle_closed(const OmegaAutomaton& automaton) {
  if (automaton.kind() == AcceptanceKind::Muller)
    throw Error(ErrorKind::InvalidAutomaton, "F,I-cycle closure needs a final-state acceptance condition");
  return fi_cycle_closed(automaton.structure());
}

/// Limit-stability of the trace-closed language L(A), decided on its minimal DFA.
inline StabilityReport is_limit_stable(const Dfa& dfa) {
  auto start = std::chrono::steady_clock::now();
  Dfa minimal = minimize(dfa);
  if (!is_i_diamond(minimal)) throw Error(ErrorKind::NotTraceClosed, "the input language is not trace-closed");
  StabilityReport report = fi_cycle_closed(minimal);
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace tracelang
