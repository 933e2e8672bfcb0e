#pragma once

// Named automata used throughout the tests, the demos and the CLI corpus.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tracelang/async.hpp"
#include "tracelang/dfa.hpp"
#include "tracelang/omega.hpp"
#include "tracelang/semigroup.hpp"

namespace tracelang::fixtures {

/// Σ = {a, b, c} with b I c.
inline DependenceAlphabet example1_alphabet() { return build_alphabet("abc", {{'b', 'c'}}); }

/// Σ = {a, b}, independent or fully dependent.
inline DependenceAlphabet ab_alphabet(bool independent = true) {
  return independent ? build_alphabet("ab", {{'a', 'b'}}) : build_alphabet("ab");
}

/// Minimal DFA of a finite word set (a trie plus a rejecting sink).
inline Dfa finite_language(const DependenceAlphabet& alphabet, const std::set<std::string>& words) {
  std::map<std::string, State> node{{"", 0}};
  std::vector<std::string> order{""};
  for (const auto& w : words)
    for (std::size_t n = 1; n <= w.size(); ++n)
      if (node.emplace(w.substr(0, n), static_cast<State>(order.size())).second) order.push_back(w.substr(0, n));
  const auto sink = static_cast<State>(order.size());
  std::vector<bool> finals(order.size() + 1, false);
  for (const auto& w : words) finals[node.at(w)] = true;
  Dfa trie = Dfa::from_function(
      alphabet, order.size() + 1, 0,
      [&](State q, Letter a) {
        if (q == sink) return sink;
        auto it = node.find(order[q] + alphabet.symbol(a));
        return it == node.end() ? sink : it->second;
      },
      std::move(finals));
  return minimize(trie);
}

/// K = [ab]_~ over Σ = {a, b, c}, b I c.
inline Dfa example1_k() { return finite_language(example1_alphabet(), {"ab"}); }

/// The nine-state minimal DFA of [(aa)⁺(bb)⁺]_~ over a I b.
inline Dfa fig2_dfa() {
  const std::vector<State> delta = {1, 2, 3, 4, 4, 5, 1, 6, 6, 7, 7, 2, 4, 8, 8, 4, 7, 6};
  std::vector<bool> finals(9, false);
  finals[8] = true;
  return Dfa(ab_alphabet(), 9, 0, delta, finals);
}

inline OmegaAutomaton fig2_buchi() { return OmegaAutomaton::buchi(fig2_dfa()); }

/// The same structure with the Muller table {{6,8},{7,8},{4,6,7},{4,6,8},
/// {4,7,8},{6,7,8},{4,6,7,8}}.
inline OmegaAutomaton fig2_muller() {
  return OmegaAutomaton::muller(fig2_dfa(), {{6, 8}, {7, 8}, {4, 6, 7}, {4, 6, 8}, {4, 7, 8}, {6, 7, 8}, {4, 6, 7, 8}});
}

/// Words containing at least one a.
inline Dfa contains_letter(const DependenceAlphabet& alphabet, char letter) {
  Letter x = alphabet.index(letter);
  return Dfa::from_function(
      alphabet, 2, 0, [x](State q, Letter a) { return q == 1 || a == x ? State{1} : State{0}; }, {false, true});
}

inline Dfa contains_a() { return contains_letter(ab_alphabet(), 'a'); }

inline Dfa sigma_star(const DependenceAlphabet& alphabet) { return universal_dfa(alphabet, true); }

/// Minimal DFA of [(a^m)⁺(b^n)⁺]_~ over a I b: each letter drives a counter
/// 0 → 1 → … → m → 1, and a word is accepted when both counters sit at the top.
inline Dfa counting_family(std::size_t m, std::size_t n) {
  auto step = [](State c, std::size_t top) { return c == top ? State{1} : static_cast<State>(c + 1); };
  const std::size_t width = n + 1;
  std::vector<bool> finals((m + 1) * width, false);
  finals[m * width + n] = true;
  Dfa product = Dfa::from_function(
      ab_alphabet(), (m + 1) * width, 0,
      [&](State q, Letter a) {
        State x = static_cast<State>(q / width);
        State y = static_cast<State>(q % width);
        if (a == 0) x = step(x, m);
        else y = step(y, n);
        return static_cast<State>(x * width + y);
      },
      std::move(finals));
  return minimize(product);
}

/// Trace-closed languages used as a shared corpus by tests and tools.
inline std::vector<std::pair<std::string, Dfa>> curated_trace_closed() {
  auto ex1 = example1_alphabet();
  return {{"[ab] with b I c", example1_k()},
          {"[aa] with a I b", finite_language(ab_alphabet(), {"aa"})},
          {"{a, bc, cb} with b I c", finite_language(ex1, {"a", "bc", "cb"})},
          {"contains an a", contains_a()},
          {"contains a b with b I c", contains_letter(ex1, 'b')},
          {"[(aa)+(bb)+]", fig2_dfa()},
          {"[(aa)+(bbb)+]", counting_family(2, 3)},
          {"sigma star", sigma_star(ex1)}};
}

/// Capped parity counter 0 → 1 → 2 → 3 → 2 per letter over a I b: the local
/// states stand for count 0, count 1, even ≥ 2 and odd ≥ 3. Muller table
/// {({2},{2,3}), ({2,3},{2}), ({2,3},{2,3})}: "a-count even or infinite,
/// b-count even or infinite, at least one of them infinite".
inline Dacma counter_dacma() {
  auto chain = [](State q) { return q == 3 ? State{2} : static_cast<State>(q + 1); };
  return Dacma::from_function(
      ab_alphabet(), {4, 4}, {0, 0}, [&](Letter a, const LocalTuple& q) { return chain(q[a]); },
      {{{2}, {2, 3}}, {{2, 3}, {2}}, {{2, 3}, {2, 3}}});
}

/// Σ = {a, b, c} with a I c. The letters a and c toggle their own bit; b
/// stores the parity of the a and c bits. The Muller entries ask for a to be
/// eventually idle.
inline Dacma relay_dacma() {
  auto sigma = build_alphabet("abc", {{'a', 'c'}});
  return Dacma::from_function(
      sigma, {2, 2, 2}, {0, 0, 0},
      [](Letter a, const LocalTuple& q) -> State {
        if (a == 1) return (q[0] + q[2]) % 2;
        return 1 - q[a];
      },
      {{{0}, {0, 1}, {0, 1}}, {{1}, {0, 1}, {0, 1}}, {{0}, {0, 1}, {0}}, {{1}, {0, 1}, {1}}});
}

/// Σ = {a, b, c}, a I b, c dependent on both: c counts (q_a + q_b) steps
/// modulo 3 while a and b are mod-2 and mod-3 counters.
inline Dacma sync_dacma() {
  auto sigma = build_alphabet("abc", {{'a', 'b'}});
  return Dacma::from_function(
      sigma, {2, 3, 3}, {0, 0, 0},
      [](Letter a, const LocalTuple& q) -> State {
        switch (a) {
          case 0: return (q[0] + 1) % 2;
          case 1: return (q[1] + 1) % 3;
          default: return (q[2] + q[0] + q[1]) % 3;
        }
      },
      {{{0, 1}, {0, 1, 2}, {0, 1, 2}}, {{0}, {0}, {0, 1, 2}}, {{0, 1}, {0}, {0}}, {{1}, {2}, {0}}});
}

/// Capped parity counter semigroup C = {0,1,2,3} on one letter; every other
/// letter maps to the identity 0.
inline FiniteSemigroup capped_counter(const DependenceAlphabet& alphabet, char letter) {
  auto add = [](Element x, Element y) -> Element {
    Element n = x + y;
    return n < 2 ? n : static_cast<Element>(2 + n % 2);
  };
  std::vector<Element> table(16);
  for (Element x = 0; x < 4; ++x)
    for (Element y = 0; y < 4; ++y) table[x * 4 + y] = add(x, y);
  std::vector<Element> generators(alphabet.size(), 0);
  generators[alphabet.index(letter)] = 1;
  return FiniteSemigroup(alphabet, 4, table, generators);
}

/// C × C recognizing [(aa)⁺(bb)⁺]_~ with P = {(2,2)}.
struct CountingRecognizer {
  ProductSemigroup product;
  std::vector<bool> accepting;

  Element element(Element x, Element y) const {
    for (Element s = 0; s < product.components.size(); ++s)
      if (product.components[s] == std::make_pair(x, y)) return s;
    throw Error(ErrorKind::InvalidAutomaton, "no such element");
  }
};

inline CountingRecognizer fig2_counter_recognizer() {
  auto sigma = ab_alphabet();
  CountingRecognizer out{product_morphism(capped_counter(sigma, 'a'), capped_counter(sigma, 'b')), {}};
  for (const auto& c : out.product.components) out.accepting.push_back(c == std::make_pair(Element{2}, Element{2}));
  return out;
}

}  // namespace tracelang::fixtures
