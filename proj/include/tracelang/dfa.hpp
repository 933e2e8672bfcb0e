#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracelang/alphabet.hpp"
#include "tracelang/error.hpp"

namespace tracelang {

using State = std::uint32_t;

/// Complete deterministic finite automaton over a dependence alphabet.
/// States are 0..n-1; delta is stored row-major by (state, letter).
class Dfa {
 public:
  Dfa(DependenceAlphabet alphabet, std::size_t state_count, State initial, std::vector<State> delta,
      std::vector<bool> finals)
      : alphabet_(std::move(alphabet)),
        state_count_(state_count),
        initial_(initial),
        delta_(std::move(delta)),
        finals_(std::move(finals)) {
    if (state_count_ == 0) throw Error(ErrorKind::InvalidAutomaton, "an automaton needs at least one state");
    if (initial_ >= state_count_) throw Error(ErrorKind::InvalidAutomaton, "initial state out of range");
    if (delta_.size() != state_count_ * alphabet_.size())
      throw Error(ErrorKind::InvalidAutomaton, "transition table is not total");
    for (State t : delta_)
      if (t >= state_count_) throw Error(ErrorKind::InvalidAutomaton, "transition target out of range");
    if (finals_.empty()) finals_.assign(state_count_, false);
    if (finals_.size() != state_count_) throw Error(ErrorKind::InvalidAutomaton, "final-state vector has wrong size");
  }

  /// Builds the table by calling `next(q, a)` for every state and letter.
  static Dfa from_function(const DependenceAlphabet& alphabet, std::size_t state_count, State initial,
                           const std::function<State(State, Letter)>& next, std::vector<bool> finals) {
    std::vector<State> delta(state_count * alphabet.size());
    for (State q = 0; q < state_count; ++q)
      for (Letter a = 0; a < alphabet.size(); ++a) delta[q * alphabet.size() + a] = next(q, a);
    return Dfa(alphabet, state_count, initial, std::move(delta), std::move(finals));
  }

  const DependenceAlphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return state_count_; }
  std::size_t letter_count() const { return alphabet_.size(); }
  State initial() const { return initial_; }
  const std::vector<State>& transitions() const { return delta_; }
  const std::vector<bool>& finals() const { return finals_; }
  bool is_final(State q) const { return finals_[q]; }

  State next(State q, Letter a) const { return delta_[q * alphabet_.size() + a]; }

  State run(State q, std::string_view word) const {
    for (char c : word) q = next(q, alphabet_.index(c));
    return q;
  }

  bool accepts(std::string_view word) const { return finals_[run(initial_, word)]; }

  std::vector<State> final_states() const {
    std::vector<State> out;
    for (State q = 0; q < state_count_; ++q)
      if (finals_[q]) out.push_back(q);
    return out;
  }

  Dfa with_finals(std::vector<bool> finals) const {
    return Dfa(alphabet_, state_count_, initial_, delta_, std::move(finals));
  }

  Dfa with_initial(State initial) const { return Dfa(alphabet_, state_count_, initial, delta_, finals_); }

  bool operator==(const Dfa&) const = default;

 private:
  DependenceAlphabet alphabet_;
  std::size_t state_count_;
  State initial_;
  std::vector<State> delta_;
  std::vector<bool> finals_;
};

/// States reachable from `from`, as a membership vector.
inline std::vector<bool> reachable_from(const Dfa& dfa, State from) {
  std::vector<bool> seen(dfa.state_count(), false);
  std::vector<State> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Letter a = 0; a < dfa.letter_count(); ++a) {
      State t = dfa.next(q, a);
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

/// Reachable part, renumbered in BFS order from the initial state with
/// letters visited in alphabet order. Byte-stable for equal inputs.
inline Dfa canonical(const Dfa& dfa) {
  const std::size_t k = dfa.letter_count();
  constexpr State kUnset = ~State{0};
  std::vector<State> rename(dfa.state_count(), kUnset);
  std::vector<State> order{dfa.initial()};
  rename[dfa.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Letter a = 0; a < k; ++a) {
      State t = dfa.next(order[i], a);
      if (rename[t] == kUnset) {
        rename[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }
  std::vector<State> delta(order.size() * k);
  std::vector<bool> finals(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    finals[i] = dfa.is_final(order[i]);
    for (Letter a = 0; a < k; ++a) delta[i * k + a] = rename[dfa.next(order[i], a)];
  }
  return Dfa(dfa.alphabet(), order.size(), 0, std::move(delta), std::move(finals));
}

/// Hopcroft partition refinement: the coarsest partition that refines
/// `labels` and is compatible with the transition function. Returns a
/// class index per state.
inline std::vector<std::size_t> coarsest_partition(const Dfa& dfa, const std::vector<std::size_t>& labels) {
  const std::size_t n = dfa.state_count();
  const std::size_t k = dfa.letter_count();

  // Predecessor lists in CSR form, keyed by (letter, target).
  std::vector<std::size_t> offset(k * n + 1, 0);
  for (State q = 0; q < n; ++q)
    for (Letter a = 0; a < k; ++a) ++offset[a * n + dfa.next(q, a) + 1];
  for (std::size_t i = 1; i < offset.size(); ++i) offset[i] += offset[i - 1];
  std::vector<State> preds(n * k);
  {
    std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
    for (State q = 0; q < n; ++q)
      for (Letter a = 0; a < k; ++a) preds[fill[a * n + dfa.next(q, a)]++] = q;
  }

  struct Block {
    std::size_t begin;
    std::size_t end;
    std::size_t marked;
  };
  std::vector<State> elems(n);
  for (State q = 0; q < n; ++q) elems[q] = q;
  std::stable_sort(elems.begin(), elems.end(), [&](State x, State y) { return labels[x] < labels[y]; });
  std::vector<std::size_t> pos(n), block_of(n);
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || labels[elems[i]] != labels[elems[i - 1]]) blocks.push_back({i, i, 0});
    blocks.back().end = i + 1;
    pos[elems[i]] = i;
    block_of[elems[i]] = blocks.size() - 1;
  }

  std::vector<std::pair<std::size_t, Letter>> work;
  std::vector<bool> in_work;
  auto push = [&](std::size_t b, Letter a) {
    if (in_work.size() < (b + 1) * k) in_work.resize((b + 1) * k, false);
    if (!in_work[b * k + a]) {
      in_work[b * k + a] = true;
      work.emplace_back(b, a);
    }
  };
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (Letter a = 0; a < k; ++a) push(b, a);

  std::vector<State> splitter;
  std::vector<std::size_t> touched;
  while (!work.empty()) {
    auto [b, a] = work.back();
    work.pop_back();
    in_work[b * k + a] = false;

    splitter.clear();
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      State q = elems[i];
      for (std::size_t j = offset[a * n + q]; j < offset[a * n + q + 1]; ++j) splitter.push_back(preds[j]);
    }
    touched.clear();
    for (State p : splitter) {
      std::size_t y = block_of[p];
      Block& blk = blocks[y];
      std::size_t boundary = blk.begin + blk.marked;
      if (pos[p] < boundary) continue;
      State other = elems[boundary];
      std::swap(elems[pos[p]], elems[boundary]);
      pos[other] = pos[p];
      pos[p] = boundary;
      if (blk.marked++ == 0) touched.push_back(y);
    }
    for (std::size_t y : touched) {
      const std::size_t marked = blocks[y].marked;
      const std::size_t begin = blocks[y].begin;
      blocks[y].marked = 0;
      if (marked == blocks[y].end - begin) continue;
      std::size_t z = blocks.size();
      blocks.push_back({begin, begin + marked, 0});
      blocks[y].begin += marked;
      for (std::size_t i = blocks[z].begin; i < blocks[z].end; ++i) block_of[elems[i]] = z;
      const std::size_t size_y = blocks[y].end - blocks[y].begin;
      const std::size_t size_z = blocks[z].end - blocks[z].begin;
      for (Letter d = 0; d < k; ++d) {
        if (y * k + d < in_work.size() && in_work[y * k + d]) {
          push(z, d);
        } else {
          push(size_z <= size_y ? z : y, d);
        }
      }
    }
  }
  return block_of;
}

/// Merges states with equal class index; the result is canonical.
inline Dfa quotient(const Dfa& dfa, const std::vector<std::size_t>& classes) {
  std::size_t count = 0;
  std::unordered_map<std::size_t, State> dense;
  std::vector<State> cls(dfa.state_count());
  for (State q = 0; q < dfa.state_count(); ++q) {
    auto [it, inserted] = dense.emplace(classes[q], static_cast<State>(count));
    if (inserted) ++count;
    cls[q] = it->second;
  }
  const std::size_t k = dfa.letter_count();
  std::vector<State> delta(count * k);
  std::vector<bool> finals(count, false);
  for (State q = 0; q < dfa.state_count(); ++q) {
    finals[cls[q]] = dfa.is_final(q);
    for (Letter a = 0; a < k; ++a) delta[cls[q] * k + a] = cls[dfa.next(q, a)];
  }
  return canonical(Dfa(dfa.alphabet(), count, cls[dfa.initial()], std::move(delta), std::move(finals)));
}

/// The unique minimal DFA with canonical numbering.
inline Dfa minimize(const Dfa& dfa) {
  Dfa reach = canonical(dfa);
  std::vector<std::size_t> labels(reach.state_count());
  for (State q = 0; q < reach.state_count(); ++q) labels[q] = reach.is_final(q) ? 1 : 0;
  return quotient(reach, coarsest_partition(reach, labels));
}

inline Dfa complement(const Dfa& dfa) {
  std::vector<bool> finals(dfa.state_count());
  for (State q = 0; q < dfa.state_count(); ++q) finals[q] = !dfa.is_final(q);
  return dfa.with_finals(std::move(finals));
}

enum class BoolOp { And, Or, Xor, Minus };

inline bool apply(BoolOp op, bool x, bool y) {
  switch (op) {
    case BoolOp::And: return x && y;
    case BoolOp::Or: return x || y;
    case BoolOp::Xor: return x != y;
    case BoolOp::Minus: return x && !y;
  }
  return false;
}

/// Synchronous product over the reachable pairs, in canonical order.
/// `pairs`, when given, receives the component states of each product state.
inline Dfa product(const Dfa& lhs, const Dfa& rhs, BoolOp op,
                   std::vector<std::pair<State, State>>* pairs = nullptr) {
  require_same_alphabet(lhs.alphabet(), rhs.alphabet());
  const std::size_t k = lhs.letter_count();
  std::unordered_map<std::uint64_t, State> index;
  std::vector<std::pair<State, State>> order;
  auto key = [](State p, State q) { return (std::uint64_t{p} << 32) | q; };
  auto intern = [&](State p, State q) {
    auto [it, inserted] = index.emplace(key(p, q), static_cast<State>(order.size()));
    if (inserted) order.emplace_back(p, q);
    return it->second;
  };
  intern(lhs.initial(), rhs.initial());
  std::vector<State> delta;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto [p, q] = order[i];
    for (Letter a = 0; a < k; ++a) delta.push_back(intern(lhs.next(p, a), rhs.next(q, a)));
  }
  std::vector<bool> finals(order.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    finals[i] = apply(op, lhs.is_final(order[i].first), rhs.is_final(order[i].second));
  if (pairs) *pairs = order;
  return Dfa(lhs.alphabet(), order.size(), 0, std::move(delta), std::move(finals));
}

inline Dfa intersect(const Dfa& lhs, const Dfa& rhs) { return product(lhs, rhs, BoolOp::And); }
inline Dfa unite(const Dfa& lhs, const Dfa& rhs) { return product(lhs, rhs, BoolOp::Or); }

/// Shortest accepted word, ties broken lexicographically in letter order.
inline std::optional<std::string> shortest_accepted(const Dfa& dfa) {
  constexpr State kUnset = ~State{0};
  std::vector<State> parent(dfa.state_count(), kUnset);
  std::vector<Letter> via(dfa.state_count(), 0);
  std::deque<State> queue{dfa.initial()};
  parent[dfa.initial()] = dfa.initial();
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    if (dfa.is_final(q)) {
      std::string word;
      while (q != dfa.initial()) {
        word.push_back(dfa.alphabet().symbol(via[q]));
        q = parent[q];
      }
      std::reverse(word.begin(), word.end());
      return word;
    }
    for (Letter a = 0; a < dfa.letter_count(); ++a) {
      State t = dfa.next(q, a);
      if (parent[t] == kUnset) {
        parent[t] = q;
        via[t] = a;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

inline bool is_empty(const Dfa& dfa) {
  auto seen = reachable_from(dfa, dfa.initial());
  for (State q = 0; q < dfa.state_count(); ++q)
    if (seen[q] && dfa.is_final(q)) return false;
  return true;
}

/// L(lhs) = L(rhs), decided by emptiness of the symmetric difference.
inline bool language_equivalent(const Dfa& lhs, const Dfa& rhs) { return is_empty(product(lhs, rhs, BoolOp::Xor)); }

/// K·a⁻¹ = {w | wa ∈ K}.
inline Dfa right_quotient(const Dfa& dfa, Letter a) {
  std::vector<bool> finals(dfa.state_count());
  for (State q = 0; q < dfa.state_count(); ++q) finals[q] = dfa.is_final(dfa.next(q, a));
  return dfa.with_finals(std::move(finals));
}

inline Dfa right_quotient(const Dfa& dfa, char letter) { return right_quotient(dfa, dfa.alphabet().index(letter)); }

/// One-state automata for Σ* and ∅.
inline Dfa universal_dfa(const DependenceAlphabet& alphabet, bool accept = true) {
  return Dfa(alphabet, 1, 0, std::vector<State>(alphabet.size(), 0), std::vector<bool>{accept});
}

}  // namespace tracelang
