#pragma once

// Random instances for property tests. Every generator is driven by an
// explicit std::mt19937_64 so failures are reproducible from the seed.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tracelang.hpp"

namespace testgen {

using namespace tracelang;
using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::string random_word(Rng& rng, const DependenceAlphabet& sigma, std::size_t min_len, std::size_t max_len) {
  std::string w;
  std::size_t len = uniform(rng, min_len, max_len);
  for (std::size_t i = 0; i < len; ++i) w.push_back(sigma.symbol(uniform(rng, 0, sigma.size() - 1)));
  return w;
}

inline LassoWord random_lasso(Rng& rng, const DependenceAlphabet& sigma, std::size_t max_spoke, std::size_t max_cycle) {
  return LassoWord(random_word(rng, sigma, 0, max_spoke), random_word(rng, sigma, 1, max_cycle));
}

inline std::vector<bool> random_finals(Rng& rng, std::size_t n, double p) {
  std::vector<bool> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = coin(rng, p);
  return f;
}

/// Arbitrary complete DFA.
inline Dfa random_dfa(Rng& rng, const DependenceAlphabet& sigma, std::size_t n, double final_p = 0.3) {
  return Dfa::from_function(
      sigma, n, 0, [&](State, Letter) { return static_cast<State>(uniform(rng, 0, n - 1)); },
      random_finals(rng, n, final_p));
}

/// The alphabets used for random I-diamond automata.
inline std::vector<DependenceAlphabet> diamond_alphabets() {
  return {build_alphabet("ab", {{'a', 'b'}}), build_alphabet("abc", {{'a', 'b'}}),
          build_alphabet("abc", {{'a', 'b'}, {'a', 'c'}}), build_alphabet("abc", {{'b', 'c'}}),
          build_alphabet("ab")};
}

/// Random I-diamond DFA whose reachable part has at most max_states states.
/// States are pairs (x, y); the first letter independent of the others acts
/// on x alone, the letters independent of it act on y alone, and the
/// remaining letters may act arbitrarily. Letters in each group commute with
/// the other group by construction. With `permutations` the per-coordinate
/// maps are bijections, so every state lies on cycles in both coordinates.
inline Dfa random_diamond_dfa(Rng& rng, const DependenceAlphabet& sigma, std::size_t max_states, double final_p,
                              bool permutations = false) {
  const std::size_t k = sigma.size();
  std::vector<int> group(k, 2);  // 0: acts on x, 1: acts on y, 2: arbitrary
  for (Letter a = 0; a < k; ++a) {
    if (sigma.independent_of(a).empty()) continue;
    group[a] = 0;
    for (Letter b : sigma.independent_of(a)) group[b] = 1;
    break;
  }
  // Letters in group 2 may only exist when no independence is present or they
  // depend on everything; arbitrary action on both coordinates is then safe.
  for (Letter a = 0; a < k; ++a)
    if (group[a] == 2 && sigma.has_independence() && !sigma.independent_of(a).empty()) group[a] = 1;
  std::size_t nx = 1, ny = 1;
  if (sigma.has_independence()) {
    nx = uniform(rng, 1, std::max<std::size_t>(1, max_states / 2));
    ny = uniform(rng, 1, std::max<std::size_t>(1, max_states / nx));
  } else {
    nx = uniform(rng, 1, max_states);
  }
  const std::size_t n = nx * ny;
  std::vector<std::vector<State>> fx(k, std::vector<State>(nx)), fy(k, std::vector<State>(ny));
  std::vector<std::vector<State>> full(k, std::vector<State>(n));
  for (Letter a = 0; a < k; ++a) {
    for (auto& t : fx[a]) t = static_cast<State>(uniform(rng, 0, nx - 1));
    for (auto& t : fy[a]) t = static_cast<State>(uniform(rng, 0, ny - 1));
    for (auto& t : full[a]) t = static_cast<State>(uniform(rng, 0, n - 1));
    if (!permutations) continue;
    std::iota(fx[a].begin(), fx[a].end(), State{0});
    std::iota(fy[a].begin(), fy[a].end(), State{0});
    std::shuffle(fx[a].begin(), fx[a].end(), rng);
    std::shuffle(fy[a].begin(), fy[a].end(), rng);
  }
  // Group-1 letters must commute with group-0 letters only; acting on y
  // independently of x guarantees that. Group-2 letters depend on everything.
  Dfa dfa = Dfa::from_function(
      sigma, n, 0,
      [&](State q, Letter a) -> State {
        State x = static_cast<State>(q / ny), y = static_cast<State>(q % ny);
        switch (group[a]) {
          case 0: return static_cast<State>(fx[a][x] * ny + y);
          case 1: return static_cast<State>(x * ny + fy[a][y]);
          default: return full[a][q];
        }
      },
      random_finals(rng, n, final_p));
  return canonical(dfa);
}

/// Random I-diamond DFA over a randomly chosen alphabet from diamond_alphabets().
inline Dfa random_diamond_dfa(Rng& rng, std::size_t max_states, bool permutations = false) {
  auto alphabets = diamond_alphabets();
  const auto& sigma = alphabets[uniform(rng, 0, alphabets.size() - 1)];
  double p = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
  return random_diamond_dfa(rng, sigma, max_states, p, permutations);
}

/// Random DACMA over Σ = {a, b, c} with a I c; local transitions read their
/// whole dependence neighbourhood.
inline Dacma random_dacma(Rng& rng, std::size_t max_local = 3) {
  auto sigma = build_alphabet("abc", {{'a', 'c'}});
  std::vector<std::size_t> sizes;
  for (Letter a = 0; a < 3; ++a) sizes.push_back(uniform(rng, 1, max_local));
  std::vector<std::vector<State>> deltas(3);
  for (Letter a = 0; a < 3; ++a) {
    std::size_t total = 1;
    for (Letter b : sigma.dependent_on(a)) total *= sizes[b];
    for (std::size_t i = 0; i < total; ++i) deltas[a].push_back(static_cast<State>(uniform(rng, 0, sizes[a] - 1)));
  }
  return Dacma(sigma, sizes, deltas, {0, 0, 0});
}

/// Random I-diamond DFA from the global view of a random DACMA.
inline Dfa random_dacma_dfa(Rng& rng, std::size_t max_local, double final_p) {
  Dfa g = global_automaton(random_dacma(rng, max_local)).dfa;
  return g.with_finals(random_finals(rng, g.state_count(), final_p));
}

/// Minimal trace-closed DFAs with at most 10 states from three sources. A
/// single final state on a permutation structure is the shape that breaks
/// limit-stability most often.
inline Dfa random_closed_dfa(Rng& rng, int i) {
  switch (i % 3) {
    case 0: return minimize(random_diamond_dfa(rng, 10));
    case 1: {
      Dfa d = random_diamond_dfa(rng, 10, true);
      std::vector<bool> finals(d.state_count(), false);
      finals[uniform(rng, 0, d.state_count() - 1)] = true;
      return minimize(d.with_finals(std::move(finals)));
    }
    default: return minimize(random_dacma_dfa(rng, 2, 0.2));
  }
}

/// Minimal I-diamond DFA with exactly nx·ny states over {a, b, c}, a I b:
/// a permutes x, b permutes y, c moves anywhere. Redrawn until minimal.
inline Dfa exact_diamond_dfa(Rng& rng, std::size_t nx, std::size_t ny, double final_p = 0.3) {
  auto sigma = build_alphabet("abc", {{'a', 'b'}});
  const std::size_t n = nx * ny;
  for (;;) {
    std::vector<State> fx(nx), fy(ny), fc(n);
    std::iota(fx.begin(), fx.end(), State{0});
    std::iota(fy.begin(), fy.end(), State{0});
    std::shuffle(fx.begin(), fx.end(), rng);
    std::shuffle(fy.begin(), fy.end(), rng);
    for (auto& t : fc) t = static_cast<State>(uniform(rng, 0, n - 1));
    Dfa d = Dfa::from_function(
        sigma, n, 0,
        [&](State q, Letter a) -> State {
          State x = static_cast<State>(q / ny), y = static_cast<State>(q % ny);
          if (a == 0) return static_cast<State>(fx[x] * ny + y);
          if (a == 1) return static_cast<State>(x * ny + fy[y]);
          return fc[q];
        },
        random_finals(rng, n, final_p));
    if (minimize(d).state_count() == n) return d;
  }
}

/// A random weak automaton on an I-diamond structure: every SCC gets one
/// random verdict.
inline OmegaAutomaton random_diamond_dwa(Rng& rng, std::size_t max_states) {
  Dfa structure = random_diamond_dfa(rng, max_states);
  SccInfo info = analyze_sccs(structure);
  std::vector<bool> verdict(info.components.size());
  for (std::size_t c = 0; c < verdict.size(); ++c) verdict[c] = coin(rng);
  std::vector<bool> finals(structure.state_count());
  for (State q = 0; q < finals.size(); ++q) finals[q] = verdict[info.component_of[q]];
  return OmegaAutomaton::weak(structure.with_finals(std::move(finals)));
}

/// Random weak automaton on an arbitrary structure.
inline OmegaAutomaton random_dwa(Rng& rng, const DependenceAlphabet& sigma, std::size_t n) {
  Dfa structure = random_dfa(rng, sigma, n);
  SccInfo info = analyze_sccs(structure);
  std::vector<bool> verdict(info.components.size());
  for (std::size_t c = 0; c < verdict.size(); ++c) verdict[c] = coin(rng);
  std::vector<bool> finals(n);
  for (State q = 0; q < n; ++q) finals[q] = verdict[info.component_of[q]];
  return OmegaAutomaton::weak(structure.with_finals(std::move(finals)));
}

inline Formula random_formula(Rng& rng, std::size_t atoms, std::size_t depth) {
  if (depth == 0 || coin(rng, 0.3)) return Formula::leaf(uniform(rng, 0, atoms - 1));
  switch (uniform(rng, 0, 2)) {
    case 0: return Formula::negate(random_formula(rng, atoms, depth - 1));
    case 1: return Formula::all({random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1)});
    default: return Formula::any({random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1)});
  }
}

namespace detail {

inline void random_swaps(Rng& rng, const DependenceAlphabet& sigma, std::string& w, std::size_t count) {
  if (w.size() < 2) return;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t p = uniform(rng, 0, w.size() - 2);
    if (sigma.independent(w[p], w[p + 1])) std::swap(w[p], w[p + 1]);
  }
}

}  // namespace detail

/// A lasso denoting the same infinite trace: unroll the cycle, rotate it,
/// and apply random independent swaps inside the spoke and inside the cycle.
inline LassoWord equivalent_lasso(Rng& rng, const DependenceAlphabet& sigma, const LassoWord& lasso) {
  std::string spoke = lasso.spoke;
  std::string cycle = lasso.cycle;
  for (std::size_t i = uniform(rng, 0, 2); i > 0; --i) spoke += cycle;
  std::string block;
  for (std::size_t i = uniform(rng, 1, 3); i > 0; --i) block += cycle;
  cycle = block;
  for (std::size_t r = uniform(rng, 0, cycle.size() - 1); r > 0; --r) {
    spoke.push_back(cycle.front());
    cycle = cycle.substr(1) + cycle.front();
  }
  detail::random_swaps(rng, sigma, spoke, 3 * spoke.size());
  detail::random_swaps(rng, sigma, cycle, 3 * cycle.size());
  return LassoWord(spoke, cycle);
}

/// A random word with a trace-equivalent partner obtained by swaps.
inline std::pair<std::string, std::string> equivalent_words(Rng& rng, const DependenceAlphabet& sigma,
                                                            std::size_t min_len, std::size_t max_len) {
  std::string u = random_word(rng, sigma, min_len, max_len);
  std::string v = u;
  detail::random_swaps(rng, sigma, v, 4 * v.size());
  return {u, v};
}

}  // namespace testgen
