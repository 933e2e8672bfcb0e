#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>

#include "support/generators.hpp"
#include "tracelang.hpp"

using namespace tracelang;
namespace fx = tracelang::fixtures;

namespace {

// Equivalence class by filtering all permutations through the projection test.
std::set<std::string> permutation_class(std::string w, const DependenceAlphabet& sigma) {
  std::set<std::string> out;
  std::string start = w;
  std::sort(w.begin(), w.end());
  do {
    if (equivalent(w, start, sigma)) out.insert(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

// Accepted prefixes counted on a long window, split into two halves: a lasso
// has infinitely many accepted prefixes iff the second half has one, once the
// window is far longer than any period of the run.
bool late_prefix_accepted(const Dfa& dfa, const LassoWord& l) {
  const std::size_t len = l.spoke.size() + 4 * l.cycle.size() * (dfa.state_count() + 1);
  std::string scan = l.prefix(2 * len);
  State q = dfa.initial();
  for (std::size_t i = 0; i < scan.size(); ++i) {
    q = dfa.next(q, dfa.alphabet().index(scan[i]));
    if (i + 1 > len && dfa.is_final(q)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("swap classes", "[oracle]") {
  auto sigma = fx::example1_alphabet();
  CHECK(swap_class("abc", sigma) == std::set<std::string>{"abc", "acb"});
  CHECK(swap_class("", sigma) == std::set<std::string>{""});
  auto free = build_alphabet("ab", {{'a', 'b'}});
  CHECK(swap_class("aabb", free).size() == 6);
  CHECK_THROWS_AS(swap_class("abz", sigma), Error);
  try {
    swap_class(std::string(11, 'a'), sigma);
    FAIL("expected BoundExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BoundExceeded);
  }
  CHECK(swap_class(std::string(11, 'a'), sigma, {12}).size() == 1);
}

TEST_CASE("swap classes match the projection test", "[oracle][property]") {
  testgen::Rng rng(71);
  auto alphabets = testgen::diamond_alphabets();
  for (int i = 0; i < 300; ++i) {
    const auto& sigma = alphabets[i % alphabets.size()];
    std::string w = testgen::random_word(rng, sigma, 0, 7);
    REQUIRE(swap_class(w, sigma) == permutation_class(w, sigma));
  }
}

TEST_CASE("word enumeration", "[oracle]") {
  auto sigma = fx::example1_alphabet();
  auto words = all_words(sigma, 3);
  CHECK(words.size() == 1 + 3 + 9 + 27);
  CHECK(words.front().empty());
  CHECK(words[1] == "a");
  CHECK(std::set<std::string>(words.begin(), words.end()).size() == words.size());
  CHECK(all_words(sigma, 0) == std::vector<std::string>{""});
}

TEST_CASE("bounded languages", "[oracle]") {
  auto k = fx::example1_k();
  auto b = bounded_language(k, 3);
  CHECK(b.words == std::set<std::string>{"ab"});
  auto c = bounded_closure_oracle(k, 3);
  CHECK(c.words == std::set<std::string>{"ab"});
  auto ab = fx::finite_language(fx::ab_alphabet(), {"ab"});
  CHECK(bounded_closure_oracle(ab, 2).words == std::set<std::string>{"ab", "ba"});
  CHECK_THROWS_AS(bounded_closure_oracle(ab, 11), Error);
}

TEST_CASE("prefix oracles on fixtures", "[oracle]") {
  auto a = fx::contains_a();
  CHECK(ext_prefix_oracle(a, {"b", "ba"}));
  CHECK_FALSE(ext_prefix_oracle(a, {"", "b"}));
  CHECK(lim_prefix_oracle(a, {"a", "b"}));
  auto fig2 = fx::fig2_dfa();
  CHECK(lim_prefix_oracle(fig2, {"", "aabb"}));
  CHECK(ext_prefix_oracle(fig2, {"", "abab"}));
  CHECK_FALSE(lim_prefix_oracle(fig2, {"", "a"}));
  auto ab = fx::finite_language(fx::ab_alphabet(), {"ab"});
  CHECK(ext_prefix_oracle(ab, {"", "ab"}));
  CHECK_FALSE(lim_prefix_oracle(ab, {"", "ab"}));
}

TEST_CASE("prefix oracles agree with long scans", "[oracle][property]") {
  testgen::Rng rng(72);
  auto alphabets = testgen::diamond_alphabets();
  std::size_t ext_hits = 0, lim_hits = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& sigma = alphabets[i % alphabets.size()];
    Dfa d = testgen::random_dfa(rng, sigma, testgen::uniform(rng, 1, 6), 0.2);
    auto l = testgen::random_lasso(rng, sigma, 5, 5);
    bool ext = ext_prefix_oracle(d, l);
    bool lim = lim_prefix_oracle(d, l);
    REQUIRE(ext == eval_lasso(OmegaAutomaton::reach(d), l));
    REQUIRE(lim == late_prefix_accepted(d, l));
    REQUIRE((!lim || ext));
    ext_hits += ext;
    lim_hits += lim;
  }
  CHECK(ext_hits > 100);
  CHECK(lim_hits > 100);
  CHECK(lim_hits < ext_hits);
}

TEST_CASE("direct swap check", "[oracle]") {
  CHECK_FALSE(fi_cycle_closed_by_swaps(fx::fig2_dfa()));
  CHECK(fi_cycle_closed_by_swaps(fx::contains_a()));
  CHECK(fi_cycle_closed_by_swaps(fx::example1_k()));
  CHECK_FALSE(fi_cycle_closed_by_swaps(fx::counting_family(2, 3)));
}
