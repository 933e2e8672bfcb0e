#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tracelang/dfa.hpp"

namespace tracelang {

/// Nondeterministic automaton without ε-moves; used as an intermediate for
/// closure constructions.
struct Nfa {
  DependenceAlphabet alphabet;
  std::size_t state_count = 0;
  std::vector<State> initial;
  std::vector<std::vector<State>> delta;  // indexed by state * |Σ| + letter
  std::vector<bool> finals;

  explicit Nfa(DependenceAlphabet sigma) : alphabet(std::move(sigma)) {}

  State add_state(bool final = false) {
    delta.resize((state_count + 1) * alphabet.size());
    finals.push_back(final);
    return static_cast<State>(state_count++);
  }

  void add_transition(State from, Letter a, State to) { delta[from * alphabet.size() + a].push_back(to); }

  const std::vector<State>& successors(State q, Letter a) const { return delta[q * alphabet.size() + a]; }
};

/// Subset construction over reachable subsets; throws SizeLimit past `max_states`.
inline Dfa determinize(const Nfa& nfa, std::size_t max_states = std::size_t{1} << 16) {
  const std::size_t k = nfa.alphabet.size();
  auto normalize = [](std::vector<State> set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
  };
  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> subsets;
  auto intern = [&](std::vector<State> set) {
    auto [it, inserted] = index.emplace(set, static_cast<State>(subsets.size()));
    if (inserted) {
      if (subsets.size() >= max_states)
        throw Error(ErrorKind::SizeLimit, "subset construction exceeded " + std::to_string(max_states) + " states");
      subsets.push_back(std::move(set));
    }
    return it->second;
  };
  intern(normalize(nfa.initial));
  std::vector<State> delta;
  std::vector<State> next;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (Letter a = 0; a < k; ++a) {
      next.clear();
      for (State q : subsets[i])
        for (State t : nfa.successors(q, a)) next.push_back(t);
      State target = intern(normalize(next));
      delta.push_back(target);
    }
  }
  std::vector<bool> finals(subsets.size(), false);
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (State q : subsets[i])
      if (nfa.finals[q]) finals[i] = true;
  return Dfa(nfa.alphabet, subsets.size(), 0, std::move(delta), std::move(finals));
}

}  // namespace tracelang
