#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "tracelang/boolcombo.hpp"
#include "tracelang/closure.hpp"
#include "tracelang/omega.hpp"
#include "tracelang/stability.hpp"

namespace tracelang {

struct DwaDecomposition {
  BoolCombo combo;
  SccInfo sccs;
  std::vector<std::size_t> atom_scc;    // SCC index behind each atom
  std::vector<Dfa> atom_languages;      // K_S for each atom
};

/// Rewrites an I-diamond DWA as a union over its accepting SCCs S of
/// ext(K_S) minus ext(K_S') for every SCC S' strictly reachable from S,
/// where K_S is the set of words leading into S. Atoms are built from the
/// I-suffix extension of K_S, so each reads as "some linearization visits S".
/// Equivalent words settle in the same SCC of an I-diamond automaton, hence
/// a conjunct holds exactly when the run settles in S.
inline DwaDecomposition dwa_decompose(const OmegaAutomaton& automaton) {
  if (automaton.kind() != AcceptanceKind::Weak) throw Error(ErrorKind::NotWeak, "decomposition needs a weak automaton");
  if (!is_i_diamond(automaton)) throw Error(ErrorKind::NotIDiamond, "decomposition needs an I-diamond automaton");
  Dfa dfa = canonical(automaton.structure());
  DwaDecomposition out{{dfa.alphabet(), {}, Formula::falsity()}, analyze_sccs(dfa), {}, {}};
  const SccInfo& info = out.sccs;
  const std::size_t count = info.components.size();

  // below[c][d]: d is reachable from c after leaving c.
  std::vector<std::vector<bool>> below(count, std::vector<bool>(count, false));
  for (std::size_t c = count; c-- > 0;) {
    for (State q : info.components[c]) {
      for (Letter a = 0; a < dfa.letter_count(); ++a) {
        std::size_t d = info.component_of[dfa.next(q, a)];
        if (d == c) continue;
        below[c][d] = true;
        for (std::size_t e = 0; e < count; ++e)
          if (below[d][e]) below[c][e] = true;
      }
    }
  }

  std::map<std::size_t, std::size_t> atom_of;
  auto atom_for = [&](std::size_t c) {
    auto it = atom_of.find(c);
    if (it != atom_of.end()) return it->second;
    std::vector<bool> finals(dfa.state_count(), false);
    for (State q : info.components[c]) finals[q] = true;
    Dfa k_s = dfa.with_finals(std::move(finals));
    std::size_t index = out.combo.atoms.size();
    out.combo.atoms.push_back(ext_automaton(i_suffix_extension(k_s)));
    out.atom_languages.push_back(minimize(k_s));
    out.atom_scc.push_back(c);
    atom_of.emplace(c, index);
    return index;
  };

  std::vector<Formula> disjuncts;
  for (std::size_t c = 0; c < count; ++c) {
    if (!info.nontrivial[c] || !dfa.is_final(info.components[c].front())) continue;
    std::vector<Formula> conjuncts{Formula::leaf(atom_for(c))};
    for (std::size_t d = 0; d < count; ++d)
      if (below[c][d]) conjuncts.push_back(Formula::negate(Formula::leaf(atom_for(d))));
    disjuncts.push_back(Formula::all(std::move(conjuncts)));
  }
  if (!disjuncts.empty()) out.combo.formula = Formula::any(std::move(disjuncts));
  return out;
}

}  // namespace tracelang
