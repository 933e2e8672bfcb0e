#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tracelang/omega.hpp"

namespace tracelang {

/// Boolean formula over numbered atoms.
struct Formula {
  enum class Op { Atom, And, Or, Not, True, False };

  Op op = Op::False;
  std::size_t atom = 0;
  std::vector<Formula> args;

  static Formula leaf(std::size_t index) { return {Op::Atom, index, {}}; }
  static Formula truth() { return {Op::True, 0, {}}; }
  static Formula falsity() { return {Op::False, 0, {}}; }
  static Formula negate(Formula f) { return {Op::Not, 0, {std::move(f)}}; }
  static Formula all(std::vector<Formula> fs) { return {Op::And, 0, std::move(fs)}; }
  static Formula any(std::vector<Formula> fs) { return {Op::Or, 0, std::move(fs)}; }

  std::size_t depth() const {
    std::size_t d = 0;
    for (const auto& f : args) d = std::max(d, f.depth());
    return d + 1;
  }

  template <typename Leaf>
  bool evaluate(const Leaf& leaf_value) const {
    switch (op) {
      case Op::Atom: return leaf_value(atom);
      case Op::True: return true;
      case Op::False: return false;
      case Op::Not: return !args.front().evaluate(leaf_value);
      case Op::And:
        return std::all_of(args.begin(), args.end(), [&](const Formula& f) { return f.evaluate(leaf_value); });
      case Op::Or:
        return std::any_of(args.begin(), args.end(), [&](const Formula& f) { return f.evaluate(leaf_value); });
    }
    return false;
  }

  std::string to_string() const {
    switch (op) {
      case Op::Atom: return "A" + std::to_string(atom);
      case Op::True: return "true";
      case Op::False: return "false";
      case Op::Not: return "!" + args.front().to_string();
      case Op::And:
      case Op::Or: {
        if (args.empty()) return op == Op::And ? "true" : "false";
        std::string out = "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (i) out += op == Op::And ? " & " : " | ";
          out += args[i].to_string();
        }
        return out + ")";
      }
    }
    return "?";
  }

  bool operator==(const Formula&) const = default;
};

/// A formula whose leaves refer to ω-automata over one alphabet.
struct BoolCombo {
  DependenceAlphabet alphabet;
  std::vector<OmegaAutomaton> atoms;
  Formula formula;
};

/// Semantics on a lasso, by evaluating every leaf automaton.
inline bool evaluate(const BoolCombo& combo, const LassoWord& lasso) {
  std::map<std::size_t, bool> cache;
  return combo.formula.evaluate([&](std::size_t i) {
    auto it = cache.find(i);
    if (it == cache.end()) it = cache.emplace(i, eval_lasso(combo.atoms.at(i), lasso)).first;
    return it->second;
  });
}

struct CompileOptions {
  std::size_t max_depth = 16;
  std::size_t max_conjuncts = 4096;
  std::size_t max_states = std::size_t{1} << 18;
};

/// A conjunction of literals: atom index mapped to its required polarity.
using Conjunct = std::map<std::size_t, bool>;

namespace detail {

inline std::vector<Conjunct> dnf(const Formula& f, bool positive, const CompileOptions& options) {
  using Op = Formula::Op;
  auto cap = [&](std::vector<Conjunct>& terms) {
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    if (terms.size() > options.max_conjuncts)
      throw Error(ErrorKind::SizeLimit, "disjunctive normal form exceeds " + std::to_string(options.max_conjuncts) +
                                            " conjuncts");
  };
  Op op = f.op;
  if (!positive) {
    // De Morgan.
    switch (op) {
      case Op::True: op = Op::False; break;
      case Op::False: op = Op::True; break;
      case Op::And: op = Op::Or; break;
      case Op::Or: op = Op::And; break;
      default: break;
    }
  }
  switch (op) {
    case Op::True: return {Conjunct{}};
    case Op::False: return {};
    case Op::Atom: return {Conjunct{{f.atom, positive}}};
    case Op::Not: return dnf(f.args.front(), !positive, options);
    case Op::Or: {
      std::vector<Conjunct> out;
      for (const auto& g : f.args) {
        auto part = dnf(g, positive, options);
        out.insert(out.end(), part.begin(), part.end());
        cap(out);
      }
      return out;
    }
    case Op::And: {
      std::vector<Conjunct> out{Conjunct{}};
      for (const auto& g : f.args) {
        auto part = dnf(g, positive, options);
        std::vector<Conjunct> next;
        for (const auto& left : out) {
          for (const auto& right : part) {
            Conjunct merged = left;
            bool consistent = true;
            for (auto [atom, sign] : right) {
              auto [it, inserted] = merged.emplace(atom, sign);
              if (!inserted && it->second != sign) consistent = false;
            }
            if (consistent) next.push_back(std::move(merged));
          }
        }
        out = std::move(next);
        cap(out);
      }
      return out;
    }
  }
  return {};
}

}  // namespace detail

/// The formula in disjunctive normal form; contradictory conjuncts are dropped.
inline std::vector<Conjunct> to_dnf(const Formula& formula, const CompileOptions& options = {}) {
  if (formula.depth() > options.max_depth)
    throw Error(ErrorKind::FormulaTooDeep, "formula depth " + std::to_string(formula.depth()) + " exceeds " +
                                               std::to_string(options.max_depth));
  return detail::dnf(formula, true, options);
}

/// Product DWA over the atoms used by the formula; a product state accepts iff
/// its component verdicts satisfy some conjunct of the DNF.
inline OmegaAutomaton compile_bool_combination(const BoolCombo& combo, const CompileOptions& options = {}) {
  for (const auto& atom : combo.atoms) {
    require_same_alphabet(combo.alphabet, atom.alphabet());
    if (atom.kind() != AcceptanceKind::Weak) throw Error(ErrorKind::NotWeak, "every atom must be a weak automaton");
  }
  std::vector<Conjunct> terms = to_dnf(combo.formula, options);

  std::set<std::size_t> used_set;
  for (const auto& term : terms)
    for (const auto& literal : term) used_set.insert(literal.first);
  std::vector<std::size_t> used(used_set.begin(), used_set.end());
  for (std::size_t i : used)
    if (i >= combo.atoms.size()) throw Error(ErrorKind::InvalidAutomaton, "formula refers to a missing atom");

  const std::size_t k = combo.alphabet.size();
  std::map<std::vector<State>, State> index;
  std::vector<std::vector<State>> tuples;
  auto intern = [&](std::vector<State> tuple) {
    auto [it, inserted] = index.emplace(tuple, static_cast<State>(tuples.size()));
    if (inserted) {
      if (tuples.size() >= options.max_states)
        throw Error(ErrorKind::SizeLimit, "product automaton exceeds " + std::to_string(options.max_states) + " states");
      tuples.push_back(std::move(tuple));
    }
    return it->second;
  };
  std::vector<State> start;
  for (std::size_t i : used) start.push_back(combo.atoms[i].structure().initial());
  intern(start);
  std::vector<State> delta;
  for (std::size_t s = 0; s < tuples.size(); ++s) {
    for (Letter a = 0; a < k; ++a) {
      std::vector<State> next(used.size());
      for (std::size_t j = 0; j < used.size(); ++j) next[j] = combo.atoms[used[j]].structure().next(tuples[s][j], a);
      delta.push_back(intern(std::move(next)));
    }
  }
  std::vector<bool> finals(tuples.size());
  for (std::size_t s = 0; s < tuples.size(); ++s) {
    finals[s] = std::any_of(terms.begin(), terms.end(), [&](const Conjunct& term) {
      for (auto [atom, sign] : term) {
        std::size_t j = static_cast<std::size_t>(std::lower_bound(used.begin(), used.end(), atom) - used.begin());
        if (combo.atoms[atom].structure().is_final(tuples[s][j]) != sign) return false;
      }
      return true;
    });
  }
  return OmegaAutomaton::weak(Dfa(combo.alphabet, tuples.size(), 0, std::move(delta), std::move(finals)));
}

}  // namespace tracelang
