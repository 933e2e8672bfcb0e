#include <catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "support/checks.hpp"
#include "support/generators.hpp"
#include "tracelang.hpp"

using namespace tracelang;
namespace fx = tracelang::fixtures;

namespace {

std::vector<std::pair<std::string, Dacma>> curated() {
  return {{"counter", fx::counter_dacma()}, {"relay", fx::relay_dacma()}, {"sync", fx::sync_dacma()}};
}

}  // namespace

TEST_CASE("DACMA validation", "[async]") {
  auto sigma = fx::ab_alphabet();
  CHECK_THROWS_AS(Dacma(sigma, {2}, {{0, 1}}, {0}), Error);
  CHECK_NOTHROW(Dacma(sigma, {2, 2}, {{1, 0}, {1, 0}}, {0, 0}));
  CHECK_THROWS_AS(Dacma(sigma, {2, 2}, {{1, 0}, {1, 0}}, {0, 2}), Error);
  CHECK_THROWS_AS(Dacma(sigma, {2, 2}, {{1, 0}, {1, 5}}, {0, 0}), Error);
  CHECK_THROWS_AS(Dacma(sigma, {2, 2}, {{1, 0}, {1, 0}}, {0, 0}, {{{0}, {7}}}), Error);
  CHECK_THROWS_AS(Dacma(sigma, {2, 0}, {{1, 0}, {}}, {0, 0}), Error);
}

TEST_CASE("global automaton", "[async]") {
  auto counter = global_automaton(fx::counter_dacma());
  CHECK(counter.dfa.state_count() == 16);
  CHECK(is_i_diamond(counter.dfa));
  CHECK(counter.states[0] == LocalTuple{0, 0});

  // One letter: the global automaton is the local chain.
  auto unary = build_alphabet("a");
  auto single = global_automaton(Dacma(unary, {3}, {{1, 2, 1}}, {0}));
  CHECK(single.dfa == Dfa(unary, 3, 0, {1, 2, 1}, {false, false, false}));

  for (const auto& [name, m] : curated()) {
    INFO(name);
    CHECK(is_i_diamond(global_automaton(m).dfa));
  }
  CHECK_THROWS_AS(global_automaton(fx::counter_dacma(), 4), Error);

  // DACA finals become global final states.
  Dacma daca(fx::ab_alphabet(), {2, 2}, {{1, 0}, {1, 0}}, {0, 0}, {}, {{1, 1}});
  Dfa g = global_automaton(daca).dfa;
  CHECK(g.accepts("ab"));
  CHECK(g.accepts("ba"));
  CHECK_FALSE(g.accepts("aab"));
}

TEST_CASE("global automata of random DACMAs are I-diamond", "[async][property]") {
  testgen::Rng rng(61);
  for (int i = 0; i < 200; ++i) REQUIRE(is_i_diamond(global_automaton(testgen::random_dacma(rng)).dfa));
}

TEST_CASE("counter DACMA evaluation", "[async]") {
  auto m = fx::counter_dacma();
  CHECK(eval_dacma(m, {"", "ab"}));
  CHECK_FALSE(eval_dacma(m, {"b", "a"}));
  CHECK(eval_dacma(m, {"bb", "a"}));
  CHECK(eval_dacma(m, {"aaaa", "b"}));
  CHECK_FALSE(eval_dacma(m, {"aaa", "b"}));
  auto g = global_automaton(m);
  CHECK(infinity_sets(m, g, {"b", "a"}) == std::vector<std::vector<State>>{{2, 3}, {1}});
  CHECK(infinity_sets(m, g, {"bb", "a"}) == std::vector<std::vector<State>>{{2, 3}, {2}});
  CHECK_THROWS_AS(eval_dacma(m, {"", "c"}), Error);
}

TEST_CASE("component DBAs", "[async]") {
  auto m = fx::counter_dacma();
  auto a2 = component_dba(m, 'a', 2);
  CHECK(eval_lasso(a2, {"aa", "b"}));
  CHECK_FALSE(eval_lasso(a2, {"a", "b"}));
  CHECK_FALSE(eval_lasso(a2, {"aaa", "b"}));
  CHECK(eval_lasso(a2, {"", "a"}));
  // A letter that never fires keeps its initial local state.
  auto b0 = component_dba(m, 'b', 0);
  CHECK(eval_lasso(b0, {"", "a"}));
  CHECK_FALSE(eval_lasso(b0, {"", "ab"}));
  try {
    component_dba(m, 'a', 4);
    FAIL("expected UnknownLocalState");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownLocalState);
  }
  CHECK_THROWS_AS(component_dba(m, 'z', 0), Error);
}

TEST_CASE("component DBAs are I-diamond and F,I-cycle closed", "[async][property]") {
  auto check = [](const Dacma& m) {
    auto g = global_automaton(m);
    for (Letter a = 0; a < m.alphabet().size(); ++a)
      for (State q = 0; q < m.local_sizes()[a]; ++q) {
        auto dba = component_dba(m, g, a, q);
        REQUIRE(is_i_diamond(dba));
        REQUIRE(fi_cycle_closed(dba).verdict);
        REQUIRE(fi_cycle_closed_by_swaps(dba.structure()));
      }
  };
  for (const auto& entry : curated()) check(entry.second);
  testgen::Rng rng(62);
  for (int i = 0; i < 100; ++i) check(testgen::random_dacma(rng));
}

TEST_CASE("DACMA decomposition", "[async]") {
  auto m = fx::counter_dacma();
  auto d = dacma_decompose(m);
  CHECK(d.atom_labels.size() == 8);
  CHECK(evaluate(d.combo, {"", "ab"}));
  CHECK(evaluate(d.combo, {"bb", "a"}));
  CHECK_FALSE(evaluate(d.combo, {"b", "a"}));

  Dacma no_table(fx::ab_alphabet(), {2, 2}, {{1, 0}, {1, 0}}, {0, 0});
  auto empty = dacma_decompose(no_table);
  CHECK(empty.combo.formula.op == Formula::Op::False);
  CHECK_FALSE(evaluate(empty.combo, {"", "ab"}));
}

TEST_CASE("DACMA decomposition agrees with direct evaluation", "[async][property]") {
  testgen::Rng rng(63);
  for (const auto& [name, m] : curated()) {
    INFO(name);
    auto d = dacma_decompose(m);
    auto g = global_automaton(m);
    std::size_t accepted = 0;
    for (int i = 0; i < 1000; ++i) {
      auto l = testgen::random_lasso(rng, m.alphabet(), 8, 8);
      bool direct = eval_dacma(m, g, l);
      REQUIRE(evaluate(d.combo, l) == direct);
      accepted += direct ? 1 : 0;
    }
    CHECK(accepted > 0);
    CHECK(accepted < 1000);
  }
}

TEST_CASE("DACMA acceptance is trace-invariant", "[async][property]") {
  testgen::Rng rng(64);
  for (const auto& [name, m] : curated()) {
    INFO(name);
    auto g = global_automaton(m);
    for (int i = 0; i < 300; ++i) {
      auto l1 = testgen::random_lasso(rng, m.alphabet(), 5, 5);
      auto l2 = testgen::equivalent_lasso(rng, m.alphabet(), l1);
      REQUIRE(eval_dacma(m, g, l1) == eval_dacma(m, g, l2));
    }
  }
}

TEST_CASE("equivalent cycles visit the same local states", "[async][property]") {
  testgen::Rng rng(65);
  std::vector<Dacma> machines;
  for (const auto& entry : curated()) machines.push_back(entry.second);
  for (int i = 0; i < 20; ++i) machines.push_back(testgen::random_dacma(rng));
  std::size_t differing = 0;
  for (int i = 0; i < 200; ++i) {
    const Dacma& m = machines[i % machines.size()];
    auto g = global_automaton(m);
    State start = static_cast<State>(testgen::uniform(rng, 0, g.dfa.state_count() - 1));
    auto [q, u] = testcheck::cycle_through(g.dfa, start, testgen::random_word(rng, m.alphabet(), 1, 5));
    std::string v = u;
    for (std::size_t s = 0; s < 4 * v.size(); ++s) {
      std::size_t p = testgen::uniform(rng, 0, v.size() - 1);
      if (p + 1 < v.size() && m.alphabet().independent(v[p], v[p + 1])) std::swap(v[p], v[p + 1]);
    }
    REQUIRE(g.dfa.run(q, u) == q);
    REQUIRE(g.dfa.run(q, v) == q);
    REQUIRE(occurrence_sets(m, g.states[q], u) == occurrence_sets(m, g.states[q], v));
    differing += u != v ? 1 : 0;
  }
  CHECK(differing > 30);
}
