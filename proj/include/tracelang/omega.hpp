#pragma once

#include <algorithm>
#include <cstddef>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tracelang/dfa.hpp"
#include "tracelang/trace.hpp"

namespace tracelang {

enum class AcceptanceKind {
  Reach,   // E-condition: some visited state is final
  Buchi,   // some final state is visited infinitely often
  Weak,    // Büchi on an automaton whose SCCs are acceptance-homogeneous
  Muller,  // the set of states visited infinitely often is listed
};

constexpr std::string_view acceptance_name(AcceptanceKind kind) {
  switch (kind) {
    case AcceptanceKind::Reach: return "e";
    case AcceptanceKind::Buchi: return "buchi";
    case AcceptanceKind::Weak: return "weak";
    case AcceptanceKind::Muller: return "muller";
  }
  return "?";
}

/// Strongly connected components of the transition graph.
struct SccInfo {
  /// Components in topological order (every edge goes forward or stays inside);
  /// incomparable components are ordered by their least state. States within
  /// a component are sorted.
  std::vector<std::vector<State>> components;
  std::vector<std::size_t> component_of;
  /// A component is nontrivial if it contains a cycle (possibly a self-loop).
  std::vector<bool> nontrivial;
};

inline SccInfo analyze_sccs(const Dfa& dfa) {
  const std::size_t n = dfa.state_count();
  const std::size_t k = dfa.letter_count();
  constexpr std::size_t kUnvisited = ~std::size_t{0};

  // Iterative Tarjan.
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  std::vector<std::pair<State, Letter>> call;
  std::size_t counter = 0;
  std::size_t comp_count = 0;
  for (State root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next_letter] = call.back();
      if (next_letter < k) {
        State w = dfa.next(v, next_letter++);
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      State done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        State w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comp_count;
        } while (w != done);
        ++comp_count;
      }
    }
  }

  // Deterministic topological order of the condensation (Kahn, least state first).
  std::vector<std::vector<State>> members(comp_count);
  for (State q = 0; q < n; ++q) members[comp[q]].push_back(q);
  std::vector<std::set<std::size_t>> succ(comp_count);
  std::vector<std::size_t> indegree(comp_count, 0);
  std::vector<bool> self_loop(comp_count, false);
  for (State q = 0; q < n; ++q) {
    for (Letter a = 0; a < k; ++a) {
      State t = dfa.next(q, a);
      if (comp[t] == comp[q]) {
        if (t == q) self_loop[comp[q]] = true;
      } else if (succ[comp[q]].insert(comp[t]).second) {
        ++indegree[comp[t]];
      }
    }
  }
  using Entry = std::pair<State, std::size_t>;  // (least state, component)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t c = 0; c < comp_count; ++c)
    if (indegree[c] == 0) ready.emplace(members[c].front(), c);
  SccInfo info;
  info.component_of.assign(n, 0);
  while (!ready.empty()) {
    auto [least, c] = ready.top();
    ready.pop();
    std::size_t id = info.components.size();
    for (State q : members[c]) info.component_of[q] = id;
    info.nontrivial.push_back(members[c].size() > 1 || self_loop[c]);
    info.components.push_back(members[c]);
    for (std::size_t d : succ[c])
      if (--indegree[d] == 0) ready.emplace(members[d].front(), d);
  }
  return info;
}

/// Maximal SCCs in topological order.
inline std::vector<std::vector<State>> scc_decomposition(const Dfa& dfa) { return analyze_sccs(dfa).components; }

/// True iff every nontrivial SCC contains only final or only non-final states.
inline bool is_weak_structure(const Dfa& dfa) {
  SccInfo info = analyze_sccs(dfa);
  for (std::size_t c = 0; c < info.components.size(); ++c) {
    if (!info.nontrivial[c]) continue;
    const auto& states = info.components[c];
    bool first = dfa.is_final(states.front());
    for (State q : states)
      if (dfa.is_final(q) != first) return false;
  }
  return true;
}

/// Deterministic ω-automaton: a complete transition structure plus an
/// acceptance condition. For Muller acceptance the final set of the structure
/// is ignored and `muller_sets` lists the accepting infinity sets.
class OmegaAutomaton {
 public:
  OmegaAutomaton(Dfa structure, AcceptanceKind kind, std::vector<std::vector<State>> muller_sets = {})
      : structure_(std::move(structure)), kind_(kind), muller_(std::move(muller_sets)) {
    for (auto& set : muller_) {
      std::sort(set.begin(), set.end());
      set.erase(std::unique(set.begin(), set.end()), set.end());
      for (State q : set)
        if (q >= structure_.state_count()) throw Error(ErrorKind::InvalidAutomaton, "Muller set names an unknown state");
    }
    if (kind_ != AcceptanceKind::Muller && !muller_.empty())
      throw Error(ErrorKind::InvalidAutomaton, "Muller sets given for a non-Muller condition");
    if (kind_ == AcceptanceKind::Weak && !is_weak_structure(structure_))
      throw Error(ErrorKind::NotWeak, "an SCC mixes accepting and rejecting states");
  }

  static OmegaAutomaton reach(Dfa d) { return {std::move(d), AcceptanceKind::Reach}; }
  static OmegaAutomaton buchi(Dfa d) { return {std::move(d), AcceptanceKind::Buchi}; }
  static OmegaAutomaton weak(Dfa d) { return {std::move(d), AcceptanceKind::Weak}; }
  static OmegaAutomaton muller(Dfa d, std::vector<std::vector<State>> sets) {
    return {std::move(d), AcceptanceKind::Muller, std::move(sets)};
  }

  const Dfa& structure() const { return structure_; }
  const DependenceAlphabet& alphabet() const { return structure_.alphabet(); }
  AcceptanceKind kind() const { return kind_; }
  const std::vector<std::vector<State>>& muller_sets() const { return muller_; }
  std::size_t state_count() const { return structure_.state_count(); }

  bool operator==(const OmegaAutomaton&) const = default;

 private:
  Dfa structure_;
  AcceptanceKind kind_;
  std::vector<std::vector<State>> muller_;
};

/// The run of a deterministic automaton on u·v^ω, split into the finite
/// part and the states repeated forever.
struct LassoRun {
  std::vector<State> visited;  // every state on the run (sorted, unique)
  std::vector<State> infinity;  // states visited infinitely often (sorted, unique)
};

/// Runs u, then iterates v until the pair (position in v, state) repeats.
inline LassoRun run_lasso(const Dfa& dfa, const LassoWord& lasso) {
  const auto& alphabet = dfa.alphabet();
  std::vector<Letter> cycle = alphabet.indices(lasso.cycle);
  std::vector<State> trail{dfa.initial()};
  State q = dfa.initial();
  for (char c : lasso.spoke) {
    q = dfa.next(q, alphabet.index(c));
    trail.push_back(q);
  }
  const std::size_t n = dfa.state_count();
  std::vector<std::size_t> seen(cycle.size() * n, ~std::size_t{0});
  std::vector<State> loop;
  std::size_t pos = 0;
  while (seen[pos * n + q] == ~std::size_t{0}) {
    seen[pos * n + q] = loop.size();
    loop.push_back(q);
    q = dfa.next(q, cycle[pos]);
    pos = (pos + 1) % cycle.size();
  }
  std::size_t start = seen[pos * n + q];
  LassoRun run;
  run.infinity.assign(loop.begin() + static_cast<std::ptrdiff_t>(start), loop.end());
  run.visited = trail;
  run.visited.insert(run.visited.end(), loop.begin(), loop.end());
  for (auto* v : {&run.visited, &run.infinity}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return run;
}

/// Exact acceptance of u·v^ω.
inline bool eval_lasso(const OmegaAutomaton& automaton, const LassoWord& lasso) {
  LassoRun run = run_lasso(automaton.structure(), lasso);
  const Dfa& d = automaton.structure();
  auto any_final = [&](const std::vector<State>& states) {
    return std::any_of(states.begin(), states.end(), [&](State q) { return d.is_final(q); });
  };
  switch (automaton.kind()) {
    case AcceptanceKind::Reach: return any_final(run.visited);
    case AcceptanceKind::Buchi:
    case AcceptanceKind::Weak: return any_final(run.infinity);
    case AcceptanceKind::Muller: {
      const auto& sets = automaton.muller_sets();
      return std::find(sets.begin(), sets.end(), run.infinity) != sets.end();
    }
  }
  return false;
}

/// Monotone coloring of a weak automaton that is pointwise maximal: colors
/// never increase along transitions and a nontrivial SCC gets an even color
/// iff it is accepting. Language-equivalent states receive equal colors.
inline std::vector<std::size_t> maximal_weak_coloring(const Dfa& dfa) {
  SccInfo info = analyze_sccs(dfa);
  const std::size_t top = 2 * info.components.size() + 2;
  std::vector<std::size_t> color_of_comp(info.components.size(), top);
  for (std::size_t c = info.components.size(); c-- > 0;) {
    std::size_t bound = top;
    for (State q : info.components[c])
      for (Letter a = 0; a < dfa.letter_count(); ++a) {
        std::size_t d = info.component_of[dfa.next(q, a)];
        if (d != c) bound = std::min(bound, color_of_comp[d]);
      }
    if (info.nontrivial[c]) {
      bool accepting = dfa.is_final(info.components[c].front());
      if ((bound % 2 == 0) != accepting) --bound;
    }
    color_of_comp[c] = bound;
  }
  std::vector<std::size_t> color(dfa.state_count());
  for (State q = 0; q < dfa.state_count(); ++q) color[q] = color_of_comp[info.component_of[q]];
  return color;
}

/// Minimal DWA: recolor with the maximal coloring, merge Moore-equivalent
/// states with respect to the colors, accept on even colors.
inline OmegaAutomaton minimize_weak(const OmegaAutomaton& automaton) {
  if (automaton.kind() != AcceptanceKind::Weak) throw Error(ErrorKind::NotWeak, "minimize_weak needs weak acceptance");
  Dfa reach = canonical(automaton.structure());
  std::vector<std::size_t> color = maximal_weak_coloring(reach);
  std::vector<bool> even(reach.state_count());
  for (State q = 0; q < reach.state_count(); ++q) even[q] = color[q] % 2 == 0;
  Dfa recolored = reach.with_finals(std::move(even));
  return OmegaAutomaton::weak(quotient(recolored, coarsest_partition(recolored, color)));
}

/// Exact language equivalence of two weak automata. A run settles in a
/// nontrivial SCC of the product whose components are homogeneous, so the
/// languages differ iff some reachable nontrivial product SCC mixes verdicts.
inline bool weak_equivalent(const OmegaAutomaton& lhs, const OmegaAutomaton& rhs) {
  for (const auto* a : {&lhs, &rhs})
    if (a->kind() != AcceptanceKind::Weak) throw Error(ErrorKind::NotWeak, "weak_equivalent needs weak automata");
  Dfa diff = product(lhs.structure(), rhs.structure(), BoolOp::Xor);
  SccInfo info = analyze_sccs(diff);
  for (std::size_t c = 0; c < info.components.size(); ++c)
    if (info.nontrivial[c] && diff.is_final(info.components[c].front())) return false;
  return true;
}

/// L(A) = ∅ for a weak automaton: no reachable accepting cycle.
inline bool weak_is_empty(const OmegaAutomaton& automaton) {
  Dfa reach = canonical(automaton.structure());
  SccInfo info = analyze_sccs(reach);
  for (std::size_t c = 0; c < info.components.size(); ++c)
    if (info.nontrivial[c] && reach.is_final(info.components[c].front())) return false;
  return true;
}

}  // namespace tracelang
