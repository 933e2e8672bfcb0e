#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracelang/dfa.hpp"
#include "tracelang/nfa.hpp"
#include "tracelang/omega.hpp"
#include "tracelang/stability.hpp"

namespace tracelang {

struct ClosureOptions {
  std::size_t max_rounds = 32;
  std::size_t max_states = std::size_t{1} << 16;
};

struct ClosureResult {
  Dfa automaton;
  std::size_t iterations = 0;  // rounds that enlarged the language
  bool stabilized = false;
};

namespace detail {

// Words obtained from L(dfa) by moving letters to the right past blocks of
// letters independent of them (several disjoint moves per word). State
// (q, idle) simulates dfa; (q, x) means x was read early by dfa and is still
// owed in the input.
inline Nfa shift_image(const Dfa& dfa) {
  const std::size_t n = dfa.state_count();
  const std::size_t k = dfa.letter_count();
  const auto& alphabet = dfa.alphabet();
  Nfa nfa(alphabet);
  for (std::size_t i = 0; i < n * (k + 1); ++i) nfa.add_state(i < n && dfa.is_final(static_cast<State>(i)));
  auto idle = [](State q) { return q; };
  auto owing = [n](State q, Letter x) { return static_cast<State>(n * (x + 1) + q); };
  nfa.initial.push_back(idle(dfa.initial()));
  for (State q = 0; q < n; ++q) {
    for (Letter y = 0; y < k; ++y) {
      nfa.add_transition(idle(q), y, idle(dfa.next(q, y)));
      for (Letter x = 0; x < k; ++x) {
        if (!alphabet.independent(x, y)) continue;
        nfa.add_transition(idle(q), y, owing(dfa.next(dfa.next(q, x), y), x));
        nfa.add_transition(owing(q, x), y, owing(dfa.next(q, y), x));
      }
    }
    for (Letter x = 0; x < k; ++x) nfa.add_transition(owing(q, x), x, idle(q));
  }
  return nfa;
}

}  // namespace detail

/// Saturates L(A) under commutation of independent letters. Each round adds
/// the shifted image and compares minimal DFAs; the closure of a regular
/// language need not be regular, so the bound can be hit.
inline ClosureResult trace_closure(const Dfa& dfa, const ClosureOptions& options = {}) {
  Dfa current = minimize(dfa);
  for (std::size_t round = 0; round <= options.max_rounds; ++round) {
    Dfa next = minimize(determinize(detail::shift_image(current), options.max_states));
    if (next == current) return {std::move(current), round, true};
    current = std::move(next);
  }
  throw Error(ErrorKind::NotStabilized,
              "closure still growing after " + std::to_string(options.max_rounds) + " rounds");
}

/// [X·a·I_a*]_~ for a trace-closed X given by `dfa` with acceptance
/// δ(q,a) ∈ F (so X = K·a⁻¹). A word is split on the fly into an X part,
/// the distinguished a, and a tail over I_a; tail letters read so far are
/// kept as a mask, and an X letter may not follow a tail letter it depends on.
inline Dfa suffix_term(const Dfa& dfa, Letter a, std::size_t max_states = std::size_t{1} << 16) {
  const auto& alphabet = dfa.alphabet();
  const std::size_t n = dfa.state_count();
  const std::size_t k = alphabet.size();
  std::vector<Letter> tail_letters = alphabet.independent_of(a);
  LetterMask tail_alphabet = 0;
  for (Letter b : tail_letters) tail_alphabet |= DependenceAlphabet::bit(b);
  if (tail_letters.size() > 16) throw Error(ErrorKind::SizeLimit, "too many letters independent of one letter");

  // Tail masks are stored compactly over tail_letters.
  const std::size_t masks = std::size_t{1} << tail_letters.size();
  auto compact = [&](LetterMask full) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < tail_letters.size(); ++i)
      if (full & DependenceAlphabet::bit(tail_letters[i])) out |= std::size_t{1} << i;
    return out;
  };
  auto expand = [&](std::size_t small) {
    LetterMask out = 0;
    for (std::size_t i = 0; i < tail_letters.size(); ++i)
      if (small & (std::size_t{1} << i)) out |= DependenceAlphabet::bit(tail_letters[i]);
    return out;
  };
  auto id = [&](State q, bool after, std::size_t mask) {
    return static_cast<State>((q * 2 + (after ? 1 : 0)) * masks + mask);
  };

  Nfa nfa(alphabet);
  for (State q = 0; q < n; ++q)
    for (int after = 0; after < 2; ++after)
      for (std::size_t m = 0; m < masks; ++m) nfa.add_state(after && dfa.is_final(dfa.next(q, a)));
  nfa.initial.push_back(id(dfa.initial(), false, 0));
  for (State q = 0; q < n; ++q) {
    for (int after = 0; after < 2; ++after) {
      for (std::size_t m = 0; m < masks; ++m) {
        LetterMask tail = expand(m);
        State from = id(q, after, m);
        for (Letter c = 0; c < k; ++c) {
          LetterMask cbit = DependenceAlphabet::bit(c);
          bool forced = (alphabet.dependence_mask(c) & tail) != 0;
          if (!forced && (!after || alphabet.independent(a, c)))
            nfa.add_transition(from, c, id(dfa.next(q, c), after, m));
          if (tail_alphabet & cbit) nfa.add_transition(from, c, id(q, after, compact(tail | cbit)));
          if (!after && c == a) nfa.add_transition(from, c, id(q, true, m));
        }
      }
    }
  }
  return minimize(determinize(nfa, max_states));
}

/// K_I = K ∪ ⋃_a [K·a⁻¹·a·I_a*]_~ for a trace-closed K.
inline Dfa i_suffix_extension(const Dfa& dfa, const ClosureOptions& options = {}) {
  Dfa minimal = minimize(dfa);
  if (!is_i_diamond(minimal)) throw Error(ErrorKind::NotTraceClosed, "the I-suffix extension needs a trace-closed language");
  Dfa result = minimal;
  for (Letter a = 0; a < minimal.letter_count(); ++a)
    result = minimize(unite(result, suffix_term(minimal, a, options.max_states)));
  return result;
}

enum class Polarity { Positive, Negative };

/// DWA for ext(L(A)) (or its complement): non-final states of the minimal DFA
/// plus an absorbing ⊥ entered on reaching F.
inline OmegaAutomaton ext_automaton(const Dfa& dfa, Polarity polarity = Polarity::Positive) {
  Dfa minimal = minimize(dfa);
  const std::size_t n = minimal.state_count();
  const auto bottom = static_cast<State>(n);
  const std::size_t k = minimal.letter_count();
  std::vector<State> delta((n + 1) * k, bottom);
  for (State q = 0; q < n; ++q) {
    if (minimal.is_final(q)) continue;
    for (Letter a = 0; a < k; ++a) {
      State t = minimal.next(q, a);
      delta[q * k + a] = minimal.is_final(t) ? bottom : t;
    }
  }
  std::vector<bool> finals(n + 1, polarity == Polarity::Negative);
  finals[bottom] = polarity == Polarity::Positive;
  State initial = minimal.is_final(minimal.initial()) ? bottom : minimal.initial();
  return OmegaAutomaton::weak(canonical(Dfa(minimal.alphabet(), n + 1, initial, std::move(delta), std::move(finals))));
}

struct LimResult {
  OmegaAutomaton dba;
  bool limit_stable = false;
  std::optional<StabilityReport> report;  // absent when L(A) is not trace-closed
};

/// The minimal DFA read as a DBA recognizes lim(L(A)) as a word language.
inline LimResult lim_automaton(const Dfa& dfa) {
  Dfa minimal = minimize(dfa);
  LimResult result{OmegaAutomaton::buchi(minimal), false, std::nullopt};
  if (is_i_diamond(minimal)) {
    result.report = fi_cycle_closed(minimal);
    result.limit_stable = result.report->verdict;
  }
  return result;
}

}  // namespace tracelang
