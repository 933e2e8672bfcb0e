#pragma once

// Command-line front end. Decision commands exit 0 for yes and 1 for no;
// every failure exits 2 with "error: <Kind>: message" on stderr.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tracelang/async.hpp"
#include "tracelang/boolcombo.hpp"
#include "tracelang/closure.hpp"
#include "tracelang/decompose.hpp"
#include "tracelang/io.hpp"
#include "tracelang/omega.hpp"
#include "tracelang/oracle.hpp"
#include "tracelang/semigroup.hpp"
#include "tracelang/stability.hpp"
#include "tracelang/trace.hpp"

namespace tracelang::cli {

using Json = nlohmann::ordered_json;

struct Options {
  std::string command;
  std::string in;
  std::string out;
  std::string out_dot;
  std::string lasso;
  std::size_t max_rounds = 32;
  std::size_t bound = 4;
  bool json = false;
  bool negative = false;
  bool profile = false;
  std::string alphabet;
  std::vector<std::string> independent;
  std::vector<std::string> words;
};

/// FNV-1a, 64 bit.
inline std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

namespace detail {

struct Context {
  const Options& options;
  std::ostream& out;
  std::string input;
  Json report;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Context(const Options& o, std::ostream& stream) : options(o), out(stream) {
    report["command"] = o.command;
  }

  const std::string& read_input() {
    if (options.in.empty()) throw Error(ErrorKind::Usage, "--in FILE is required for '" + options.command + "'");
    std::ifstream file(options.in, std::ios::binary);
    if (!file) throw Error(ErrorKind::ParseError, "cannot read " + options.in);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    input = buffer.str();
    return input;
  }

  io::AutomatonFile automaton() {
    const auto& text = read_input();
    if (io::is_dacma_document(text))
      throw Error(ErrorKind::Usage, "'" + options.command + "' expects an automaton file, not a dacma file");
    return io::parse_automaton(text);
  }

  Dacma dacma() { return io::parse_dacma(read_input()); }

  LassoWord lasso() const {
    if (options.lasso.empty()) throw Error(ErrorKind::Usage, "--lasso u;v is required for '" + options.command + "'");
    return io::parse_lasso(options.lasso);
  }

  // Text output of a construction: --out FILE or standard output.
  void emit(const std::string& document, const Dfa& graph) {
    if (!options.out_dot.empty()) write_file(options.out_dot, io::to_dot(graph));
    if (!options.out.empty()) {
      write_file(options.out, document);
      if (!options.json) out << "wrote " << options.out << '\n';
    } else if (!options.json) {
      out << document;
    }
  }

  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::ParseError, "cannot write " + path);
    file << text;
  }

  void line(const std::string& text) {
    if (!options.json) out << text << '\n';
  }

  int finish(bool verdict, int code) {
    if (options.json) {
      Json ordered;
      ordered["command"] = report["command"];
      ordered["verdict"] = verdict;
      for (const char* key : {"witness", "iterations"})
        if (report.contains(key)) ordered[key] = report[key];
      ordered["timing_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      ordered["input_digest"] = digest(input);
      for (auto it = report.begin(); it != report.end(); ++it)
        if (!ordered.contains(it.key())) ordered[it.key()] = it.value();
      out << ordered.dump(2) << '\n';
    }
    return code;
  }

  int decide(bool verdict, const std::string& yes, const std::string& no) {
    line(verdict ? yes : no);
    return finish(verdict, verdict ? 0 : 1);
  }
};

inline std::string word_or_epsilon(const std::string& w) { return w.empty() ? "ε" : w; }

inline DependenceAlphabet alphabet_from(Context& ctx) {
  if (!ctx.options.alphabet.empty()) {
    std::vector<std::pair<char, char>> pairs;
    for (const auto& p : ctx.options.independent) {
      if (p.size() != 2) throw Error(ErrorKind::Usage, "--independent takes letter pairs such as bc");
      pairs.emplace_back(p[0], p[1]);
    }
    return build_alphabet(ctx.options.alphabet, pairs);
  }
  const auto& text = ctx.read_input();
  if (io::is_dacma_document(text)) return io::parse_dacma(text).alphabet();
  return io::parse_automaton(text).dfa.alphabet();
}

inline Json witness_json(const CycleWitness& w) {
  return Json{{"state", w.state}, {"u", w.visiting}, {"v", w.avoiding}};
}

inline int cmd_validate(Context& ctx) {
  const auto& text = ctx.read_input();
  if (io::is_dacma_document(text)) {
    Dacma machine = io::parse_dacma(text);
    auto global = global_automaton(machine);
    ctx.report["kind"] = "dacma";
    ctx.report["global_states"] = global.states.size();
    ctx.line("valid dacma: " + std::to_string(global.states.size()) + " reachable global states");
    return ctx.finish(true, 0);
  }
  auto file = io::parse_automaton(text);
  auto omega = file.omega();
  ctx.report["kind"] = "automaton";
  ctx.report["states"] = file.dfa.state_count();
  ctx.report["acceptance"] = std::string(acceptance_name(omega.kind()));
  ctx.line("valid automaton: " + std::to_string(file.dfa.state_count()) + " states, acceptance " +
           std::string(acceptance_name(omega.kind())));
  return ctx.finish(true, 0);
}

inline int cmd_normal_form(Context& ctx) {
  auto sigma = alphabet_from(ctx);
  Json forms = Json::array();
  for (const auto& w : ctx.options.words) {
    Trace t = normal_form(w, sigma);
    forms.push_back(t.canon());
    ctx.line(t.canon());
  }
  ctx.report["normal_forms"] = forms;
  return ctx.finish(true, 0);
}

inline int cmd_equiv(Context& ctx) {
  auto sigma = alphabet_from(ctx);
  const auto& w = ctx.options.words;
  if (w.size() != 2) throw Error(ErrorKind::Usage, "equiv takes two words or two lassos");
  bool lassos = w[0].find(';') != std::string::npos || w[1].find(';') != std::string::npos;
  bool same = lassos ? lasso_equivalent(io::parse_lasso(w[0]), io::parse_lasso(w[1]), sigma)
                     : equivalent(w[0], w[1], sigma);
  return ctx.decide(same, "equivalent", "not equivalent");
}

inline int cmd_closure(Context& ctx) {
  auto file = ctx.automaton();
  ClosureOptions options;
  options.max_rounds = ctx.options.max_rounds;
  auto result = trace_closure(file.dfa, options);
  ctx.report["iterations"] = result.iterations;
  ctx.report["states"] = result.automaton.state_count();
  ctx.emit(io::serialize(result.automaton), result.automaton);
  return ctx.finish(true, 0);
}

inline int cmd_isuffix(Context& ctx) {
  auto file = ctx.automaton();
  ClosureOptions options;
  options.max_rounds = ctx.options.max_rounds;
  Dfa ki = i_suffix_extension(file.dfa, options);
  ctx.report["states"] = ki.state_count();
  ctx.emit(io::serialize(ki), ki);
  return ctx.finish(true, 0);
}

inline int cmd_ext(Context& ctx) {
  auto file = ctx.automaton();
  auto dwa = ext_automaton(file.dfa, ctx.options.negative ? Polarity::Negative : Polarity::Positive);
  if (!ctx.options.lasso.empty()) {
    bool accept = eval_lasso(dwa, ctx.lasso());
    return ctx.decide(accept, "accept", "reject");
  }
  ctx.report["states"] = dwa.state_count();
  ctx.emit(io::serialize(dwa), dwa.structure());
  return ctx.finish(true, 0);
}

inline int cmd_lim(Context& ctx) {
  auto file = ctx.automaton();
  auto lim = lim_automaton(file.dfa);
  ctx.report["limit_stable"] = lim.limit_stable;
  if (lim.report && lim.report->witness) ctx.report["witness"] = witness_json(*lim.report->witness);
  if (!ctx.options.lasso.empty()) {
    bool accept = eval_lasso(lim.dba, ctx.lasso());
    return ctx.decide(accept, "accept", "reject");
  }
  if (!ctx.options.out.empty() || ctx.options.json) {
    ctx.line(std::string("limit-stable: ") + (lim.limit_stable ? "yes" : "no"));
  } else {
    ctx.out << "# limit-stable: " << (lim.limit_stable ? "yes" : "no") << '\n';
  }
  ctx.emit(io::serialize(lim.dba), lim.dba.structure());
  return ctx.finish(true, 0);
}

inline int cmd_check_trace_closed(Context& ctx) {
  auto file = ctx.automaton();
  Dfa minimal = minimize(file.dfa);
  auto violation = find_diamond_violation(minimal);
  if (violation) {
    const auto& s = minimal.alphabet();
    ctx.report["witness"] = Json{{"state", violation->state},
                                 {"a", std::string(1, s.symbol(violation->a))},
                                 {"b", std::string(1, s.symbol(violation->b))}};
  }
  return ctx.decide(!violation, "trace-closed: yes", "trace-closed: no");
}

inline int cmd_check_i_diamond(Context& ctx) {
  auto file = ctx.automaton();
  auto violation = find_diamond_violation(file.dfa);
  if (violation) {
    const auto& s = file.dfa.alphabet();
    std::string a(1, s.symbol(violation->a));
    std::string b(1, s.symbol(violation->b));
    ctx.report["witness"] = Json{{"state", violation->state}, {"a", a}, {"b", b}};
    ctx.line("witness: state " + std::to_string(violation->state) + ", letters " + a + " " + b);
  }
  return ctx.decide(!violation, "i-diamond: yes", "i-diamond: no");
}

inline int cmd_check_limit_stable(Context& ctx) {
  auto file = ctx.automaton();
  StabilityReport report = is_limit_stable(file.dfa);
  ctx.report["states"] = report.state_count;
  ctx.report["letters"] = report.letter_count;
  if (report.witness) {
    const auto& w = *report.witness;
    ctx.report["witness"] = witness_json(w);
    ctx.line("witness: q=" + std::to_string(w.state) + " u=" + w.visiting + " v=" + w.avoiding);
  }
  return ctx.decide(report.verdict, "limit-stable: yes", "limit-stable: no");
}

inline int cmd_decompose_dwa(Context& ctx) {
  auto file = ctx.automaton();
  auto dwa = file.omega();
  auto parts = dwa_decompose(dwa);
  bool round_trip = weak_equivalent(compile_bool_combination(parts.combo), dwa);
  Json atoms = Json::array();
  ctx.line("formula: " + parts.combo.formula.to_string());
  for (std::size_t i = 0; i < parts.combo.atoms.size(); ++i) {
    const auto& scc = parts.sccs.components[parts.atom_scc[i]];
    std::string states;
    for (State q : scc) states += (states.empty() ? "" : " ") + std::to_string(q);
    atoms.push_back(Json{{"atom", i}, {"scc", scc}, {"language_states", parts.atom_languages[i].state_count()}});
    ctx.line("A" + std::to_string(i) + " = ext(K_S), S = {" + states + "}");
  }
  ctx.report["formula"] = parts.combo.formula.to_string();
  ctx.report["atoms"] = atoms;
  ctx.report["round_trip"] = round_trip;
  return ctx.decide(round_trip, "round-trip: equivalent", "round-trip: NOT equivalent");
}

inline int cmd_eval(Context& ctx) {
  const auto& text = ctx.read_input();
  LassoWord lasso = ctx.lasso();
  bool accept;
  if (io::is_dacma_document(text)) {
    accept = eval_dacma(io::parse_dacma(text), lasso);
  } else {
    accept = eval_lasso(io::parse_automaton(text).omega(), lasso);
  }
  return ctx.decide(accept, "accept", "reject");
}

inline int cmd_daca_global(Context& ctx) {
  Dacma machine = ctx.dacma();
  auto global = global_automaton(machine);
  std::ostringstream doc;
  for (State q = 0; q < global.states.size(); ++q) {
    doc << "# " << q << " =";
    for (State c : global.states[q]) doc << ' ' << c;
    doc << '\n';
  }
  doc << io::serialize(global.dfa);
  ctx.report["states"] = global.states.size();
  ctx.emit(doc.str(), global.dfa);
  return ctx.finish(true, 0);
}

inline int cmd_dacma_decompose(Context& ctx) {
  Dacma machine = ctx.dacma();
  auto parts = dacma_decompose(machine);
  const auto& sigma = machine.alphabet();
  Json atoms = Json::array();
  ctx.line("formula: " + parts.combo.formula.to_string());
  for (std::size_t i = 0; i < parts.atom_labels.size(); ++i) {
    auto [a, q] = parts.atom_labels[i];
    atoms.push_back(Json{{"atom", i}, {"letter", std::string(1, sigma.symbol(a))}, {"local_state", q}});
    ctx.line("A" + std::to_string(i) + " = A_q for " + sigma.symbol(a) + "-state " + std::to_string(q));
  }
  ctx.report["formula"] = parts.combo.formula.to_string();
  ctx.report["atoms"] = atoms;
  if (!ctx.options.lasso.empty()) {
    bool accept = evaluate(parts.combo, ctx.lasso());
    return ctx.decide(accept, "accept", "reject");
  }
  return ctx.finish(true, 0);
}

inline Json pair_json(const FiniteSemigroup& s, LinkedPair p) {
  return Json{{"s", s.name(p.s)}, {"e", s.name(p.e)}};
}

inline int cmd_semigroup(Context& ctx) {
  auto file = ctx.automaton();
  Json elements = Json::array();
  auto list = [&](const FiniteSemigroup& s, const std::vector<bool>* accepting) {
    for (Element x = 0; x < s.size(); ++x) {
      Json e{{"element", x}, {"name", s.name(x)}, {"word", s.representative(x)}};
      if (accepting) e["accepting"] = static_cast<bool>((*accepting)[x]);
      elements.push_back(e);
      ctx.line(std::to_string(x) + " " + s.name(x) + " <- " + s.representative(x) +
               (accepting && (*accepting)[x] ? " (P)" : ""));
    }
  };
  if (ctx.options.profile) {
    auto rec = profile_semigroup(file.omega());
    ctx.line("profile semigroup: " + std::to_string(rec.semigroup.size()) + " elements");
    list(rec.semigroup, nullptr);
    Json failures = Json::array();
    const auto& sigma = rec.automaton.alphabet();
    for (const auto& f : rec.noncommuting) {
      std::string ab = std::string(1, sigma.symbol(f.a)) + sigma.symbol(f.b);
      std::string ba = std::string(1, sigma.symbol(f.b)) + sigma.symbol(f.a);
      failures.push_back(Json{{"a", std::string(1, sigma.symbol(f.a))},
                              {"b", std::string(1, sigma.symbol(f.b))},
                              {"state", f.state},
                              {ab, Json{f.ab.first, f.ab.second}},
                              {ba, Json{f.ba.first, f.ba.second}}});
      ctx.line("noncommuting " + ab + " at state " + std::to_string(f.state) + ": " + ab + " -> (" +
               std::to_string(f.ab.first) + "," + std::to_string(f.ab.second) + "), " + ba + " -> (" +
               std::to_string(f.ba.first) + "," + std::to_string(f.ba.second) + ")");
    }
    ctx.report["elements"] = elements;
    ctx.report["noncommuting"] = failures;
    return ctx.decide(rec.noncommuting.empty(), "profiles commute: yes", "profiles commute: no");
  }
  auto rec = transition_semigroup(file.dfa);
  ctx.line("transition semigroup: " + std::to_string(rec.semigroup.size()) + " elements");
  list(rec.semigroup, &rec.accepting);
  ctx.report["elements"] = elements;
  return ctx.finish(true, 0);
}

inline int cmd_linked_pairs(Context& ctx) {
  auto file = ctx.automaton();
  auto pairs = lim_linked_pairs(file.omega());
  const auto& s = pairs.recognizer.semigroup;
  Json accepted = Json::array(), rejected = Json::array();
  for (auto p : pairs.accepted) {
    accepted.push_back(pair_json(s, p));
    ctx.line("accept (" + std::to_string(p.s) + "," + std::to_string(p.e) + ") " + s.representative(p.s) + ";" +
             s.representative(p.e));
  }
  for (auto p : pairs.rejected) {
    rejected.push_back(pair_json(s, p));
    ctx.line("reject (" + std::to_string(p.s) + "," + std::to_string(p.e) + ") " + s.representative(p.s) + ";" +
             s.representative(p.e));
  }
  ctx.report["accepted"] = accepted;
  ctx.report["rejected"] = rejected;
  return ctx.finish(true, 0);
}

inline int cmd_pcut(Context& ctx) {
  auto file = ctx.automaton();
  auto rec = transition_semigroup(file.dfa);
  bool all = true;
  Json failures = Json::array();
  for (LinkedPair p : linked_pairs(rec.semigroup)) {
    auto r = pcut_check(rec.semigroup, rec.accepting, p);
    if (r.holds) continue;
    all = false;
    Json f = pair_json(rec.semigroup, p);
    f["hitting"] = *r.hitting;
    f["missing"] = *r.missing;
    failures.push_back(f);
    ctx.line("fails (" + rec.semigroup.name(p.s) + "," + rec.semigroup.name(p.e) + "): " + *r.hitting + " hits, " +
             *r.missing + " misses");
  }
  if (!failures.empty()) ctx.report["witness"] = failures.front();
  ctx.report["failures"] = failures;
  return ctx.decide(all, "p-cut: all linked pairs pass", "p-cut: some linked pair fails");
}

inline int cmd_oracle(Context& ctx) {
  auto file = ctx.automaton();
  auto closure = bounded_closure_oracle(file.dfa, ctx.options.bound);
  Json words = Json::array();
  for (const auto& w : closure.words) {
    words.push_back(w);
    ctx.line(word_or_epsilon(w));
  }
  ctx.report["bound"] = ctx.options.bound;
  ctx.report["closure"] = words;
  if (!ctx.options.lasso.empty()) {
    LassoWord l = ctx.lasso();
    bool ext = ext_prefix_oracle(file.dfa, l);
    bool lim = lim_prefix_oracle(file.dfa, l);
    ctx.report["ext"] = ext;
    ctx.report["lim"] = lim;
    ctx.line(std::string("ext: ") + (ext ? "accept" : "reject") + ", lim: " + (lim ? "accept" : "reject"));
  }
  return ctx.finish(true, 0);
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace-closed regular and omega-regular languages over dependence alphabets", "tracelang"};
  app.require_subcommand(1);
  Options options;

  struct Spec {
    const char* name;
    const char* help;
    int (*run)(detail::Context&);
  };
  const std::vector<Spec> commands = {
      {"validate", "parse and validate an automaton or dacma file", detail::cmd_validate},
      {"normal-form", "print the normal form of each word", detail::cmd_normal_form},
      {"equiv", "decide trace equivalence of two words or two lassos u;v", detail::cmd_equiv},
      {"closure", "saturate a language under commutation", detail::cmd_closure},
      {"isuffix", "build the I-suffix extension of a trace-closed language", detail::cmd_isuffix},
      {"ext", "build (or evaluate, with --lasso) the ext weak automaton", detail::cmd_ext},
      {"lim", "build (or evaluate, with --lasso) the lim Buchi automaton", detail::cmd_lim},
      {"check-trace-closed", "decide trace-closedness", detail::cmd_check_trace_closed},
      {"check-i-diamond", "decide the I-diamond property", detail::cmd_check_i_diamond},
      {"check-limit-stable", "decide limit-stability", detail::cmd_check_limit_stable},
      {"decompose-dwa", "decompose an I-diamond weak automaton into ext atoms", detail::cmd_decompose_dwa},
      {"eval", "evaluate an automaton or dacma on a lasso", detail::cmd_eval},
      {"daca-global", "print the global automaton of a dacma file", detail::cmd_daca_global},
      {"dacma-decompose", "decompose a dacma into component Buchi automata", detail::cmd_dacma_decompose},
      {"semigroup", "list the transition (or --profile) semigroup", detail::cmd_semigroup},
      {"linked-pairs", "linked pairs of the profile semigroup and their lim verdicts", detail::cmd_linked_pairs},
      {"pcut", "check the P-cut property of every linked pair", detail::cmd_pcut},
      {"oracle", "brute-force bounded closure and prefix oracles", detail::cmd_oracle},
  };
  std::vector<std::pair<CLI::App*, const Spec*>> subs;
  for (const auto& spec : commands) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--in", options.in, "input file");
    sub->add_option("--out", options.out, "output file for constructions");
    sub->add_option("--out-dot", options.out_dot, "Graphviz output of the resulting transition graph");
    sub->add_option("--lasso", options.lasso, "lasso word u;v");
    sub->add_option("--max-rounds", options.max_rounds, "closure round bound");
    sub->add_option("--bound", options.bound, "length bound for the oracle");
    sub->add_flag("--json", options.json, "machine-readable report on stdout");
    sub->add_flag("--negative", options.negative, "complement polarity for ext");
    sub->add_flag("--profile", options.profile, "use extended transition profiles");
    sub->add_option("--alphabet", options.alphabet, "letters, when no --in file supplies them");
    sub->add_option("--independent", options.independent, "independent letter pair such as bc (repeatable)")->allow_extra_args(false);
    sub->add_option("words", options.words, "words or lassos");
    subs.emplace_back(sub, &spec);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: Usage: " << e.what() << '\n';
    return 2;
  }

  for (auto [sub, spec] : subs) {
    if (!sub->parsed()) continue;
    options.command = spec->name;
    detail::Context ctx(options, out);
    try {
      return spec->run(ctx);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }
  err << "error: Usage: no command given\n";
  return 2;
}

}  // namespace tracelang::cli
