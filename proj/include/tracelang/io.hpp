#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "tracelang/async.hpp"
#include "tracelang/dfa.hpp"
#include "tracelang/omega.hpp"

namespace tracelang::io {

namespace detail {

inline std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

inline std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return std::string(line.substr(0, hash));
}

[[noreturn]] inline void fail(std::size_t line_no, const std::string& message) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + message);
}

inline std::size_t to_number(const std::string& token, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) fail(line_no, "expected a number, got '" + token + "'");
  return value;
}

inline char to_letter(const std::string& token, std::size_t line_no) {
  if (token.size() != 1) fail(line_no, "letters are single characters, got '" + token + "'");
  return token.front();
}

struct Line {
  std::size_t number;
  std::vector<std::string> words;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    auto words = split_words(strip_comment(text.substr(pos, end - pos)));
    if (!words.empty()) out.push_back({number, std::move(words)});
    pos = end + 1;
  }
  return out;
}

// `alphabet` and `independent` records shared by both file kinds.
struct AlphabetBuilder {
  std::optional<std::vector<char>> letters;
  std::vector<std::pair<char, char>> pairs;

  bool consume(const Line& line) {
    const auto& w = line.words;
    if (w[0] == "alphabet") {
      if (letters) fail(line.number, "alphabet declared twice");
      letters.emplace();
      for (std::size_t i = 1; i < w.size(); ++i) letters->push_back(to_letter(w[i], line.number));
      return true;
    }
    if (w[0] == "independent") {
      if (w.size() != 3) fail(line.number, "independent takes two letters");
      pairs.emplace_back(to_letter(w[1], line.number), to_letter(w[2], line.number));
      return true;
    }
    return false;
  }

  DependenceAlphabet build() const {
    if (!letters) throw Error(ErrorKind::ParseError, "missing alphabet record");
    return DependenceAlphabet(*letters, pairs);
  }
};

inline void write_alphabet(std::ostream& out, const DependenceAlphabet& sigma) {
  out << "alphabet";
  for (char c : sigma.letters()) out << ' ' << c;
  out << '\n';
  for (auto [a, b] : sigma.independent_pairs()) out << "independent " << sigma.symbol(a) << ' ' << sigma.symbol(b) << '\n';
}

}  // namespace detail

/// Parsed automaton file: a transition structure, and the acceptance
/// condition when one is declared.
struct AutomatonFile {
  Dfa dfa;
  std::optional<AcceptanceKind> acceptance;
  std::vector<std::vector<State>> muller;

  /// The ω-automaton described by the file (Büchi when no condition is given).
  OmegaAutomaton omega() const {
    AcceptanceKind kind = acceptance.value_or(AcceptanceKind::Buchi);
    if (kind == AcceptanceKind::Muller) return OmegaAutomaton::muller(dfa, muller);
    return OmegaAutomaton(dfa, kind);
  }
};

inline std::optional<AcceptanceKind> parse_acceptance(std::string_view name) {
  for (auto kind : {AcceptanceKind::Reach, AcceptanceKind::Buchi, AcceptanceKind::Weak, AcceptanceKind::Muller})
    if (acceptance_name(kind) == name) return kind;
  return std::nullopt;
}

inline AutomatonFile parse_automaton(std::string_view text) {
  detail::AlphabetBuilder alphabet;
  std::optional<std::size_t> states;
  std::optional<State> initial;
  std::vector<State> finals;
  std::vector<std::tuple<State, char, State, std::size_t>> edges;
  std::optional<AcceptanceKind> acceptance;
  std::vector<std::vector<State>> muller;

  for (const auto& line : detail::tokenize(text)) {
    const auto& w = line.words;
    auto number = [&](const std::string& t) { return detail::to_number(t, line.number); };
    if (alphabet.consume(line)) continue;
    if (w[0] == "states") {
      if (w.size() != 2 || states) detail::fail(line.number, "states takes one count and appears once");
      states = number(w[1]);
    } else if (w[0] == "initial") {
      if (w.size() != 2 || initial) detail::fail(line.number, "initial takes one state and appears once");
      initial = static_cast<State>(number(w[1]));
    } else if (w[0] == "final") {
      for (std::size_t i = 1; i < w.size(); ++i) finals.push_back(static_cast<State>(number(w[i])));
    } else if (w[0] == "trans") {
      if (w.size() != 4) detail::fail(line.number, "trans takes <state> <letter> <state>");
      edges.emplace_back(static_cast<State>(number(w[1])), detail::to_letter(w[2], line.number),
                         static_cast<State>(number(w[3])), line.number);
    } else if (w[0] == "acceptance") {
      if (w.size() != 2 || acceptance) detail::fail(line.number, "acceptance takes one condition and appears once");
      acceptance = parse_acceptance(w[1]);
      if (!acceptance) detail::fail(line.number, "unknown acceptance '" + w[1] + "'");
    } else if (w[0] == "muller") {
      std::vector<State> set;
      for (std::size_t i = 1; i < w.size(); ++i) set.push_back(static_cast<State>(number(w[i])));
      muller.push_back(std::move(set));
    } else {
      detail::fail(line.number, "unknown record '" + w[0] + "'");
    }
  }

  DependenceAlphabet sigma = alphabet.build();
  if (!states) throw Error(ErrorKind::ParseError, "missing states record");
  if (!initial) throw Error(ErrorKind::ParseError, "missing initial record");
  if (!muller.empty() && acceptance != AcceptanceKind::Muller)
    throw Error(ErrorKind::ParseError, "muller sets need 'acceptance muller'");
  const std::size_t n = *states;
  const std::size_t k = sigma.size();
  constexpr State kUnset = ~State{0};
  std::vector<State> delta(n * k, kUnset);
  for (auto [from, letter, to, line_no] : edges) {
    if (from >= n || to >= n) detail::fail(line_no, "state out of range");
    if (!sigma.contains(letter)) detail::fail(line_no, std::string("letter '") + letter + "' is not in the alphabet");
    State& slot = delta[from * k + sigma.index(letter)];
    if (slot != kUnset && slot != to) detail::fail(line_no, "conflicting transition (automata are deterministic)");
    slot = to;
  }
  for (std::size_t i = 0; i < delta.size(); ++i)
    if (delta[i] == kUnset)
      throw Error(ErrorKind::InvalidAutomaton, "no transition from state " + std::to_string(i / k) + " on '" +
                                                   sigma.symbol(i % k) + "'");
  std::vector<bool> final_vector(n, false);
  for (State q : finals) {
    if (q >= n) throw Error(ErrorKind::ParseError, "final state out of range");
    final_vector[q] = true;
  }
  AutomatonFile file{Dfa(std::move(sigma), n, *initial, std::move(delta), std::move(final_vector)), acceptance,
                     std::move(muller)};
  (void)file.omega();  // validates Muller sets and weak structure
  return file;
}

inline std::string serialize(const Dfa& dfa, std::optional<AcceptanceKind> acceptance = std::nullopt,
                             const std::vector<std::vector<State>>& muller = {}) {
  std::ostringstream out;
  detail::write_alphabet(out, dfa.alphabet());
  out << "states " << dfa.state_count() << '\n';
  out << "initial " << dfa.initial() << '\n';
  out << "final";
  for (State q : dfa.final_states()) out << ' ' << q;
  out << '\n';
  for (State q = 0; q < dfa.state_count(); ++q)
    for (Letter a = 0; a < dfa.letter_count(); ++a)
      out << "trans " << q << ' ' << dfa.alphabet().symbol(a) << ' ' << dfa.next(q, a) << '\n';
  if (acceptance) out << "acceptance " << acceptance_name(*acceptance) << '\n';
  for (const auto& set : muller) {
    out << "muller";
    for (State q : set) out << ' ' << q;
    out << '\n';
  }
  return out.str();
}

inline std::string serialize(const OmegaAutomaton& automaton) {
  return serialize(automaton.structure(), automaton.kind(), automaton.muller_sets());
}

inline std::string serialize(const AutomatonFile& file) { return serialize(file.dfa, file.acceptance, file.muller); }

/// `u;v` with v nonempty.
inline LassoWord parse_lasso(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos) throw Error(ErrorKind::ParseError, "lasso must have the form u;v");
  std::string spoke(text.substr(0, semi));
  std::string cycle(text.substr(semi + 1));
  if (cycle.find(';') != std::string::npos) throw Error(ErrorKind::ParseError, "lasso has more than one ';'");
  return LassoWord(std::move(spoke), std::move(cycle));
}

inline std::string format_lasso(const LassoWord& lasso) { return lasso.spoke + ";" + lasso.cycle; }

/// True iff the first record of the document is `dacma`.
inline bool is_dacma_document(std::string_view text) {
  auto lines = detail::tokenize(text);
  return !lines.empty() && lines.front().words.front() == "dacma";
}

/// Asynchronous automaton file:
///   dacma
///   alphabet a b
///   independent a b
///   local a 4                       local state count per letter
///   initial 0 0                     one local state per letter
///   delta a <D_a states...> <q>     D_a components in letter order
///   muller {2} {2 3}                one set per letter
///   final 0 1                       a global DACA final tuple
inline Dacma parse_dacma(std::string_view text) {
  auto lines = detail::tokenize(text);
  if (lines.empty() || lines.front().words != std::vector<std::string>{"dacma"})
    throw Error(ErrorKind::ParseError, "an asynchronous automaton file starts with 'dacma'");
  detail::AlphabetBuilder alphabet;
  std::vector<detail::Line> rest;
  for (std::size_t i = 1; i < lines.size(); ++i)
    if (!alphabet.consume(lines[i])) rest.push_back(lines[i]);
  DependenceAlphabet sigma = alphabet.build();
  const std::size_t k = sigma.size();

  std::vector<std::size_t> sizes(k, 0);
  std::optional<LocalTuple> initial;
  std::vector<std::tuple<Letter, std::vector<State>, State, std::size_t>> entries;
  std::vector<MullerEntry> muller;
  std::vector<LocalTuple> finals;
  for (const auto& line : rest) {
    const auto& w = line.words;
    auto number = [&](const std::string& t) { return detail::to_number(t, line.number); };
    auto letter = [&](const std::string& t) {
      char c = detail::to_letter(t, line.number);
      if (!sigma.contains(c)) detail::fail(line.number, std::string("letter '") + c + "' is not in the alphabet");
      return sigma.index(c);
    };
    if (w[0] == "local") {
      if (w.size() != 3) detail::fail(line.number, "local takes <letter> <count>");
      sizes[letter(w[1])] = number(w[2]);
    } else if (w[0] == "initial") {
      if (w.size() != k + 1 || initial) detail::fail(line.number, "initial takes one local state per letter, once");
      initial.emplace();
      for (std::size_t i = 1; i < w.size(); ++i) initial->push_back(static_cast<State>(number(w[i])));
    } else if (w[0] == "delta") {
      if (w.size() < 3) detail::fail(line.number, "delta takes <letter> <D_a states...> <state>");
      Letter a = letter(w[1]);
      if (w.size() != sigma.dependent_on(a).size() + 3) detail::fail(line.number, "delta arity does not match D_a");
      std::vector<State> args;
      for (std::size_t i = 2; i + 1 < w.size(); ++i) args.push_back(static_cast<State>(number(w[i])));
      entries.emplace_back(a, std::move(args), static_cast<State>(number(w.back())), line.number);
    } else if (w[0] == "muller") {
      MullerEntry entry;
      std::optional<std::vector<State>> open;
      for (std::size_t i = 1; i < w.size(); ++i) {
        std::string t = w[i];
        bool opens = !t.empty() && t.front() == '{';
        bool closes = !t.empty() && t.back() == '}';
        if (opens) {
          if (open) detail::fail(line.number, "nested '{'");
          open.emplace();
          t.erase(0, 1);
        }
        if (closes) t.pop_back();
        if (!open) detail::fail(line.number, "muller sets are written {q ...}");
        if (!t.empty()) open->push_back(static_cast<State>(number(t)));
        if (closes) {
          entry.push_back(std::move(*open));
          open.reset();
        }
      }
      if (open) detail::fail(line.number, "unterminated '{'");
      muller.push_back(std::move(entry));
    } else if (w[0] == "final") {
      LocalTuple tuple;
      for (std::size_t i = 1; i < w.size(); ++i) tuple.push_back(static_cast<State>(number(w[i])));
      finals.push_back(std::move(tuple));
    } else {
      detail::fail(line.number, "unknown record '" + w[0] + "'");
    }
  }
  if (!initial) throw Error(ErrorKind::ParseError, "missing initial record");
  std::vector<std::vector<State>> deltas(k);
  std::vector<std::vector<bool>> set(k);
  for (Letter a = 0; a < k; ++a) {
    if (sizes[a] == 0) throw Error(ErrorKind::ParseError, std::string("missing local record for '") + sigma.symbol(a) + "'");
  }
  for (Letter a = 0; a < k; ++a) {
    std::size_t total = 1;
    for (Letter b : sigma.dependent_on(a)) total *= sizes[b];
    deltas[a].assign(total, 0);
    set[a].assign(total, false);
  }
  for (const auto& [a, args, target, line_no] : entries) {
    auto domain = sigma.dependent_on(a);
    std::size_t code = 0;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (args[i] >= sizes[domain[i]]) detail::fail(line_no, "local state out of range");
      code = code * sizes[domain[i]] + args[i];
    }
    if (set[a][code] && deltas[a][code] != target) detail::fail(line_no, "conflicting local transition");
    deltas[a][code] = target;
    set[a][code] = true;
  }
  for (Letter a = 0; a < k; ++a)
    if (std::find(set[a].begin(), set[a].end(), false) != set[a].end())
      throw Error(ErrorKind::InvalidAutomaton, std::string("local transition of '") + sigma.symbol(a) + "' is not total");
  return Dacma(std::move(sigma), std::move(sizes), std::move(deltas), std::move(*initial), std::move(muller),
               std::move(finals));
}

inline std::string serialize(const Dacma& machine) {
  std::ostringstream out;
  const auto& sigma = machine.alphabet();
  out << "dacma\n";
  detail::write_alphabet(out, sigma);
  for (Letter a = 0; a < sigma.size(); ++a) out << "local " << sigma.symbol(a) << ' ' << machine.local_sizes()[a] << '\n';
  out << "initial";
  for (State q : machine.initial()) out << ' ' << q;
  out << '\n';
  for (Letter a = 0; a < sigma.size(); ++a) {
    auto domain = sigma.dependent_on(a);
    for (std::size_t code = 0; code < machine.deltas()[a].size(); ++code) {
      std::vector<State> args(domain.size());
      std::size_t rest = code;
      for (std::size_t i = domain.size(); i-- > 0;) {
        args[i] = static_cast<State>(rest % machine.local_sizes()[domain[i]]);
        rest /= machine.local_sizes()[domain[i]];
      }
      out << "delta " << sigma.symbol(a);
      for (State q : args) out << ' ' << q;
      out << ' ' << machine.deltas()[a][code] << '\n';
    }
  }
  for (const auto& entry : machine.muller()) {
    out << "muller";
    for (const auto& set : entry) {
      out << " {";
      for (std::size_t i = 0; i < set.size(); ++i) out << (i ? " " : "") << set[i];
      out << '}';
    }
    out << '\n';
  }
  for (const auto& tuple : machine.finals()) {
    out << "final";
    for (State q : tuple) out << ' ' << q;
    out << '\n';
  }
  return out.str();
}

/// Graphviz rendering of the transition graph; parallel edges are merged.
inline std::string to_dot(const Dfa& dfa) {
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n  start [shape=point];\n";
  for (State q = 0; q < dfa.state_count(); ++q)
    out << "  q" << q << " [label=\"" << q << "\", shape=" << (dfa.is_final(q) ? "doublecircle" : "circle") << "];\n";
  out << "  start -> q" << dfa.initial() << ";\n";
  for (State q = 0; q < dfa.state_count(); ++q) {
    std::vector<std::pair<State, std::string>> edges;
    for (Letter a = 0; a < dfa.letter_count(); ++a) {
      State t = dfa.next(q, a);
      auto it = std::find_if(edges.begin(), edges.end(), [t](const auto& e) { return e.first == t; });
      if (it == edges.end()) edges.emplace_back(t, std::string(1, dfa.alphabet().symbol(a)));
      else it->second += std::string(",") + dfa.alphabet().symbol(a);
    }
    for (const auto& [t, label] : edges) out << "  q" << q << " -> q" << t << " [label=\"" << label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tracelang::io
