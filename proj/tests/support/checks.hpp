#pragma once

// Independent checks shared by the unit tests and the acceptance run.

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracelang.hpp"

namespace testcheck {

using namespace tracelang;

/// Shortest word leading from the initial state to q, by plain BFS.
inline std::optional<std::string> path_to(const Dfa& dfa, State q) {
  std::vector<std::optional<std::string>> word(dfa.state_count());
  word[dfa.initial()] = "";
  std::deque<State> queue{dfa.initial()};
  while (!queue.empty()) {
    State p = queue.front();
    queue.pop_front();
    for (Letter a = 0; a < dfa.letter_count(); ++a) {
      State t = dfa.next(p, a);
      if (word[t]) continue;
      word[t] = *word[p] + dfa.alphabet().symbol(a);
      queue.push_back(t);
    }
  }
  return word[q];
}

inline bool visits_final(const Dfa& dfa, State q, const std::string& w) {
  for (char c : w) {
    q = dfa.next(q, dfa.alphabet().index(c));
    if (dfa.is_final(q)) return true;
  }
  return false;
}

/// Why a negative stability verdict is not genuine, or nothing when it is:
/// u and v must be equivalent cycles at a reachable q, exactly one visiting
/// F, and the lassos x·u^ω and x·v^ω must split the Büchi automaton.
inline std::optional<std::string> witness_problem(const Dfa& dfa, const CycleWitness& w) {
  if (w.visiting.empty()) return "empty cycle";
  if (!equivalent(w.visiting, w.avoiding, dfa.alphabet())) return "cycles are not equivalent";
  if (dfa.run(w.state, w.visiting) != w.state || dfa.run(w.state, w.avoiding) != w.state) return "not cycles at q";
  if (!visits_final(dfa, w.state, w.visiting)) return "u does not visit F";
  if (visits_final(dfa, w.state, w.avoiding)) return "v visits F";
  auto x = path_to(dfa, w.state);
  if (!x) return "q is unreachable";
  LassoWord accepted(*x, w.visiting), rejected(*x, w.avoiding);
  if (!lasso_equivalent(accepted, rejected, dfa.alphabet())) return "lassos are not equivalent";
  auto dba = OmegaAutomaton::buchi(dfa);
  if (!eval_lasso(dba, accepted) || eval_lasso(dba, rejected)) return "Buchi automaton does not split the lassos";
  return std::nullopt;
}

/// Iterates w from `from` until the state repeats; returns that state and the
/// period of w as a cycle through it.
inline std::pair<State, std::string> cycle_through(const Dfa& g, State from, const std::string& w) {
  std::map<State, std::size_t> seen;
  std::vector<State> trail;
  State q = from;
  while (!seen.count(q)) {
    seen[q] = trail.size();
    trail.push_back(q);
    q = g.run(q, w);
  }
  std::string cycle;
  for (std::size_t i = seen[q]; i < trail.size(); ++i) cycle += w;
  return {q, cycle};
}

}  // namespace testcheck
