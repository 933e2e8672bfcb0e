#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracelang/boolcombo.hpp"
#include "tracelang/dfa.hpp"
#include "tracelang/omega.hpp"

namespace tracelang {

/// Global state of an asynchronous automaton: one local state per letter.
using LocalTuple = std::vector<State>;

/// Accepting Muller entry: the exact set of local states each component
/// takes infinitely often.
using MullerEntry = std::vector<std::vector<State>>;

/// Deterministic asynchronous cellular automaton with Muller acceptance
/// (DACMA), or with a set of global final tuples (DACA).
///
/// The local transition of letter a reads the components of D_a. Its table
/// is indexed by those components in letter order, mixed radix with the last
/// one varying fastest.
class Dacma {
 public:
  Dacma(DependenceAlphabet alphabet, std::vector<std::size_t> local_sizes, std::vector<std::vector<State>> deltas,
        LocalTuple initial, std::vector<MullerEntry> muller = {}, std::vector<LocalTuple> finals = {})
      : alphabet_(std::move(alphabet)),
        sizes_(std::move(local_sizes)),
        deltas_(std::move(deltas)),
        initial_(std::move(initial)),
        muller_(std::move(muller)),
        finals_(std::move(finals)) {
    const std::size_t k = alphabet_.size();
    if (sizes_.size() != k || deltas_.size() != k || initial_.size() != k)
      throw Error(ErrorKind::InvalidAutomaton, "one local component per letter is required");
    for (Letter a = 0; a < k; ++a) {
      if (sizes_[a] == 0) throw Error(ErrorKind::InvalidAutomaton, "empty local state set");
      if (initial_[a] >= sizes_[a]) throw Error(ErrorKind::InvalidAutomaton, "initial local state out of range");
      if (deltas_[a].size() != domain_size(a))
        throw Error(ErrorKind::InvalidAutomaton, std::string("local transition of '") + alphabet_.symbol(a) +
                                                     "' is not total");
      for (State t : deltas_[a])
        if (t >= sizes_[a]) throw Error(ErrorKind::InvalidAutomaton, "local transition target out of range");
    }
    for (auto& entry : muller_) {
      if (entry.size() != k) throw Error(ErrorKind::InvalidAutomaton, "Muller entry needs one set per letter");
      for (Letter a = 0; a < k; ++a) {
        auto& set = entry[a];
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        for (State q : set)
          if (q >= sizes_[a]) throw Error(ErrorKind::InvalidAutomaton, "Muller entry names an unknown local state");
      }
    }
    for (const auto& tuple : finals_) check_tuple(tuple);
  }

  /// Builds the tables from a function of the full global tuple; only the
  /// D_a components of the argument are meaningful.
  static Dacma from_function(DependenceAlphabet alphabet, std::vector<std::size_t> local_sizes, LocalTuple initial,
                             const std::function<State(Letter, const LocalTuple&)>& local,
                             std::vector<MullerEntry> muller = {}, std::vector<LocalTuple> finals = {}) {
    const std::size_t k = alphabet.size();
    std::vector<std::vector<State>> deltas(k);
    for (Letter a = 0; a < k; ++a) {
      std::vector<Letter> domain = alphabet.dependent_on(a);
      LocalTuple tuple(k, 0);
      std::size_t total = 1;
      for (Letter b : domain) total *= local_sizes[b];
      for (std::size_t code = 0; code < total; ++code) {
        std::size_t rest = code;
        for (std::size_t i = domain.size(); i-- > 0;) {
          tuple[domain[i]] = static_cast<State>(rest % local_sizes[domain[i]]);
          rest /= local_sizes[domain[i]];
        }
        deltas[a].push_back(local(a, tuple));
      }
    }
    return Dacma(std::move(alphabet), std::move(local_sizes), std::move(deltas), std::move(initial), std::move(muller),
                 std::move(finals));
  }

  const DependenceAlphabet& alphabet() const { return alphabet_; }
  const std::vector<std::size_t>& local_sizes() const { return sizes_; }
  const std::vector<std::vector<State>>& deltas() const { return deltas_; }
  const LocalTuple& initial() const { return initial_; }
  const std::vector<MullerEntry>& muller() const { return muller_; }
  const std::vector<LocalTuple>& finals() const { return finals_; }

  std::size_t domain_size(Letter a) const {
    std::size_t total = 1;
    for (Letter b : alphabet_.dependent_on(a)) total *= sizes_[b];
    return total;
  }

  /// δ(q, a): only the a component changes.
  LocalTuple step(const LocalTuple& q, Letter a) const {
    std::size_t code = 0;
    for (Letter b : alphabet_.dependent_on(a)) code = code * sizes_[b] + q[b];
    LocalTuple out = q;
    out[a] = deltas_[a][code];
    return out;
  }

 private:
  void check_tuple(const LocalTuple& tuple) const {
    if (tuple.size() != alphabet_.size()) throw Error(ErrorKind::InvalidAutomaton, "global tuple has the wrong length");
    for (Letter a = 0; a < tuple.size(); ++a)
      if (tuple[a] >= sizes_[a]) throw Error(ErrorKind::InvalidAutomaton, "global tuple names an unknown local state");
  }

  DependenceAlphabet alphabet_;
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<State>> deltas_;
  LocalTuple initial_;
  std::vector<MullerEntry> muller_;
  std::vector<LocalTuple> finals_;
};

/// Reachable global transition structure; states[q] is the tuple of state q.
/// Final states are the DACA finals (none for a pure DACMA).
struct GlobalAutomaton {
  Dfa dfa;
  std::vector<LocalTuple> states;
};

inline GlobalAutomaton global_automaton(const Dacma& machine, std::size_t max_states = std::size_t{1} << 16) {
  const std::size_t k = machine.alphabet().size();
  std::map<LocalTuple, State> index;
  std::vector<LocalTuple> states;
  auto intern = [&](LocalTuple tuple) {
    auto [it, inserted] = index.emplace(tuple, static_cast<State>(states.size()));
    if (inserted) {
      if (states.size() >= max_states)
        throw Error(ErrorKind::SizeLimit, "global automaton exceeds " + std::to_string(max_states) + " states");
      states.push_back(std::move(tuple));
    }
    return it->second;
  };
  intern(machine.initial());
  std::vector<State> delta;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (Letter a = 0; a < k; ++a) delta.push_back(intern(machine.step(states[i], a)));
  std::vector<bool> finals(states.size(), false);
  for (const auto& tuple : machine.finals()) {
    auto it = index.find(tuple);
    if (it != index.end()) finals[it->second] = true;
  }
  return {Dfa(machine.alphabet(), states.size(), 0, std::move(delta), std::move(finals)), std::move(states)};
}

/// A_q: the global structure as a DBA whose final states are the tuples with
/// a-component q.
inline OmegaAutomaton component_dba(const Dacma& machine, const GlobalAutomaton& global, Letter a, State q) {
  if (a >= machine.alphabet().size() || q >= machine.local_sizes()[a])
    throw Error(ErrorKind::UnknownLocalState, "no local state " + std::to_string(q) + " for that letter");
  std::vector<bool> finals(global.states.size());
  for (std::size_t i = 0; i < global.states.size(); ++i) finals[i] = global.states[i][a] == q;
  return OmegaAutomaton::buchi(global.dfa.with_finals(std::move(finals)));
}

inline OmegaAutomaton component_dba(const Dacma& machine, char letter, State q) {
  if (!machine.alphabet().contains(letter))
    throw Error(ErrorKind::UnknownLocalState, std::string("no component for '") + letter + "'");
  return component_dba(machine, global_automaton(machine), machine.alphabet().index(letter), q);
}

/// inf_a of the run on a lasso, per component.
inline std::vector<std::vector<State>> infinity_sets(const Dacma& machine, const GlobalAutomaton& global,
                                                     const LassoWord& lasso) {
  LassoRun run = run_lasso(global.dfa, lasso);
  std::vector<std::vector<State>> inf(machine.alphabet().size());
  for (State g : run.infinity)
    for (Letter a = 0; a < inf.size(); ++a) inf[a].push_back(global.states[g][a]);
  for (auto& set : inf) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return inf;
}

/// Exact Muller acceptance of u·v^ω.
inline bool eval_dacma(const Dacma& machine, const GlobalAutomaton& global, const LassoWord& lasso) {
  auto inf = infinity_sets(machine, global, lasso);
  const auto& table = machine.muller();
  return std::find(table.begin(), table.end(), inf) != table.end();
}

inline bool eval_dacma(const Dacma& machine, const LassoWord& lasso) {
  return eval_dacma(machine, global_automaton(machine), lasso);
}

/// occ_a of the finite run from global state `from` on `word`.
inline std::vector<std::vector<State>> occurrence_sets(const Dacma& machine, const LocalTuple& from,
                                                       std::string_view word) {
  const auto& sigma = machine.alphabet();
  std::vector<std::vector<State>> occ(sigma.size());
  LocalTuple q = from;
  auto record = [&] {
    for (Letter a = 0; a < occ.size(); ++a) occ[a].push_back(q[a]);
  };
  record();
  for (char c : word) {
    q = machine.step(q, sigma.index(c));
    record();
  }
  for (auto& set : occ) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return occ;
}

struct DacmaDecomposition {
  BoolCombo combo;
  std::vector<std::pair<Letter, State>> atom_labels;  // (a, q) behind each atom A_q
};

/// Union over Muller entries (F_a) of ⋂_{q∈F_a} L(A_q) ∩ ⋂_{q∉F_a} complement(L(A_q)).
inline DacmaDecomposition dacma_decompose(const Dacma& machine) {
  GlobalAutomaton global = global_automaton(machine);
  DacmaDecomposition out{{machine.alphabet(), {}, Formula::falsity()}, {}};
  std::map<std::pair<Letter, State>, std::size_t> atom_of;
  auto atom = [&](Letter a, State q) {
    auto [it, inserted] = atom_of.emplace(std::make_pair(a, q), out.combo.atoms.size());
    if (inserted) {
      out.combo.atoms.push_back(component_dba(machine, global, a, q));
      out.atom_labels.emplace_back(a, q);
    }
    return it->second;
  };
  std::vector<Formula> entries;
  for (const auto& entry : machine.muller()) {
    std::vector<Formula> literals;
    for (Letter a = 0; a < entry.size(); ++a) {
      for (State q = 0; q < machine.local_sizes()[a]; ++q) {
        bool member = std::binary_search(entry[a].begin(), entry[a].end(), q);
        Formula leaf = Formula::leaf(atom(a, q));
        literals.push_back(member ? leaf : Formula::negate(std::move(leaf)));
      }
    }
    entries.push_back(Formula::all(std::move(literals)));
  }
  if (!entries.empty()) out.combo.formula = Formula::any(std::move(entries));
  return out;
}

}  // namespace tracelang
