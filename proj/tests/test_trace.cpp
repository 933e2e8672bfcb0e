#include <catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>

#include "support/generators.hpp"
#include "tracelang.hpp"

using namespace tracelang;

namespace {

// Independent reference: the lexicographically least member of the swap class.
std::string least_linearization(const std::string& w, const DependenceAlphabet& sigma) {
  auto cls = swap_class(w, sigma);
  return *cls.begin();
}

std::vector<DependenceAlphabet> small_alphabets() {
  return {build_alphabet("abc", {{'b', 'c'}}), build_alphabet("abc", {{'a', 'b'}, {'b', 'c'}}),
          build_alphabet("ab", {{'a', 'b'}}), build_alphabet("abc")};
}

}  // namespace

TEST_CASE("alphabet construction and derived views", "[trace]") {
  auto sigma = build_alphabet("abc", {{'c', 'b'}});
  CHECK(sigma.independent('b', 'c'));
  CHECK(sigma.independent('c', 'b'));
  CHECK_FALSE(sigma.independent('a', 'b'));
  CHECK(sigma.independent_of(sigma.index('b')) == std::vector<Letter>{2});
  CHECK(sigma.independent_of(sigma.index('c')) == std::vector<Letter>{1});
  CHECK(sigma.independent_of(sigma.index('a')).empty());
  for (Letter a = 0; a < sigma.size(); ++a) {
    auto i = sigma.independent_of(a);
    auto d = sigma.dependent_on(a);
    CHECK(i.size() + d.size() == sigma.size());
    CHECK(std::find(d.begin(), d.end(), a) != d.end());
  }

  auto full = build_alphabet("ab");
  CHECK_FALSE(full.has_independence());

  try {
    build_alphabet("ab", {{'a', 'a'}});
    FAIL("expected ReflexivePair");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ReflexivePair);
  }
  try {
    build_alphabet("ab", {{'a', 'z'}});
    FAIL("expected UnknownLetter");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownLetter);
  }
  CHECK_THROWS_AS(build_alphabet("aba"), Error);
}

TEST_CASE("normal forms match the least member of the swap class", "[trace]") {
  auto ex1 = build_alphabet("abc", {{'b', 'c'}});
  CHECK(normal_form("acb", ex1).canon() == least_linearization("acb", ex1));
  CHECK(normal_form("acb", ex1).canon() == "abc");
  CHECK(normal_form("ab", ex1).canon() == "ab");
  auto ab = build_alphabet("ab", {{'a', 'b'}});
  CHECK(normal_form("ba", ab).canon() == least_linearization("ba", ab));
  CHECK(normal_form("", ab).canon().empty());
  CHECK_THROWS_AS(normal_form("abz", ab), Error);
}

TEST_CASE("normal form is idempotent on all words up to length 8", "[trace][property]") {
  for (const auto& sigma : small_alphabets()) {
    for (const auto& w : all_words(sigma, 8)) {
      Trace t = normal_form(w, sigma);
      REQUIRE(normal_form(t.canon(), sigma) == t);
    }
  }
}

TEST_CASE("linearizations equal the swap-class oracle up to length 7", "[trace][property]") {
  for (const auto& sigma : small_alphabets()) {
    for (const auto& w : all_words(sigma, 7)) {
      Trace t = normal_form(w, sigma);
      REQUIRE(linearizations(t) == swap_class(w, sigma));
      REQUIRE(t.canon() == *swap_class(w, sigma).begin());
    }
  }
  auto ex1 = build_alphabet("abc", {{'b', 'c'}});
  CHECK(linearizations(normal_form("abc", ex1)) == std::set<std::string>{"abc", "acb"});
  CHECK(linearizations(normal_form("aa", ex1)) == std::set<std::string>{"aa"});
  CHECK(linearizations(normal_form("ab", build_alphabet("ab", {{'a', 'b'}}))) == std::set<std::string>{"ab", "ba"});
}

TEST_CASE("equivalence of finite words", "[trace]") {
  auto ex1 = build_alphabet("abc", {{'b', 'c'}});
  CHECK(equivalent("acb", "abc", ex1));
  CHECK_FALSE(equivalent("ab", "ba", ex1));
  CHECK(equivalent("ba", "ab", build_alphabet("ab", {{'a', 'b'}})));
  CHECK_FALSE(equivalent("ab", "abc", ex1));
  for (const auto& sigma : small_alphabets()) {
    for (const auto& u : all_words(sigma, 4))
      for (const auto& v : all_words(sigma, 4))
        if (u.size() == v.size()) REQUIRE(equivalent(u, v, sigma) == (swap_class(u, sigma).count(v) > 0));
  }
}

namespace {

// Brute-force prefix relation: some linearization of t2 starts with a
// linearization of t1.
bool prefix_by_enumeration(const Trace& t1, const Trace& t2) {
  auto small = swap_class(t1.canon(), t1.alphabet());
  for (const auto& w : swap_class(t2.canon(), t2.alphabet()))
    if (w.size() >= t1.size() && small.count(w.substr(0, t1.size()))) return true;
  return false;
}

}  // namespace

TEST_CASE("prefix order", "[trace]") {
  auto ex1 = build_alphabet("abc", {{'b', 'c'}});
  CHECK(prefix_of(normal_form("a", ex1), normal_form("acb", ex1)));
  CHECK(prefix_of(normal_form("ab", ex1), normal_form("acb", ex1)));
  CHECK_FALSE(prefix_of(normal_form("b", build_alphabet("ab")), normal_form("ab", build_alphabet("ab"))));
  CHECK(prefix_of(normal_form("", ex1), normal_form("acb", ex1)));
}

TEST_CASE("prefix order agrees with enumeration for traces up to length 6", "[trace][property]") {
  for (const auto& sigma : small_alphabets()) {
    auto small = all_words(sigma, 3);
    auto large = all_words(sigma, 6);
    for (std::size_t i = 0; i < large.size(); i += 7) {
      Trace t2 = normal_form(large[i], sigma);
      for (const auto& w : small) {
        Trace t1 = normal_form(w, sigma);
        REQUIRE(prefix_of(t1, t2) == prefix_by_enumeration(t1, t2));
      }
    }
  }
}

TEST_CASE("least upper bounds", "[trace]") {
  auto ex1 = build_alphabet("abc", {{'b', 'c'}});
  Trace bound = lub(normal_form("ab", ex1), normal_form("ac", ex1));
  CHECK(bound == normal_form("abc", ex1));
  CHECK(lub(normal_form("ab", ex1), normal_form("ab", ex1)) == normal_form("ab", ex1));
  auto full = build_alphabet("ab");
  try {
    lub(normal_form("ab", full), normal_form("ba", full));
    FAIL("expected NoUpperBound");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoUpperBound);
  }
}

TEST_CASE("least upper bounds are least among all bounds up to 6 letters", "[trace][property]") {
  for (const auto& sigma : small_alphabets()) {
    // Every trace with at most 6 letters, and its set of prefixes.
    std::map<std::string, std::set<std::string>> prefixes;
    for (const auto& w : all_words(sigma, 6)) {
      std::string canon = normal_form(w, sigma).canon();
      if (prefixes.count(canon)) continue;
      auto& set = prefixes[canon];
      for (const auto& lin : swap_class(canon, sigma))
        for (std::size_t n = 0; n <= lin.size(); ++n) set.insert(normal_form(lin.substr(0, n), sigma).canon());
    }
    std::set<std::string> operands;
    for (const auto& w : all_words(sigma, 3)) operands.insert(normal_form(w, sigma).canon());
    for (const auto& x : operands) {
      for (const auto& y : operands) {
        std::vector<std::string> bounds;
        for (const auto& [s, pre] : prefixes)
          if (pre.count(x) && pre.count(y)) bounds.push_back(s);
        Trace tx(sigma, x), ty(sigma, y);
        std::optional<Trace> l;
        try {
          l = lub(tx, ty);
        } catch (const Error& e) {
          REQUIRE(e.kind() == ErrorKind::NoUpperBound);
        }
        if (!l) {
          REQUIRE(bounds.empty());
          continue;
        }
        REQUIRE(prefix_of(tx, *l));
        REQUIRE(prefix_of(ty, *l));
        for (const auto& s : bounds) REQUIRE(prefixes.at(s).count(l->canon()));
        for (char c : sigma.letters())
          REQUIRE(l->count(c) == std::max(tx.count(c), ty.count(c)));
      }
    }
  }
}

TEST_CASE("concatenation of traces", "[trace]") {
  auto ex1 = build_alphabet("abc", {{'b', 'c'}});
  CHECK(concat_traces(normal_form("a", ex1), normal_form("b", ex1)) == normal_form("ab", ex1));
  Trace bc = concat_traces(normal_form("b", ex1), normal_form("c", ex1));
  CHECK(linearizations(bc) == std::set<std::string>{"bc", "cb"});
  Trace t = normal_form("cab", ex1);
  CHECK(concat_traces(normal_form("", ex1), t) == t);
  CHECK(concat_traces(t, normal_form("ca", ex1)).size() == 5);
}

TEST_CASE("lasso equivalence", "[trace]") {
  auto ex1 = build_alphabet("abc", {{'b', 'c'}});
  CHECK(lasso_equivalent({"ab", "c"}, {"acb", "c"}, ex1));
  CHECK(lasso_equivalent({"ab", "c"}, {"accb", "c"}, ex1));
  CHECK_FALSE(lasso_equivalent({"ab", "c"}, {"ba", "c"}, ex1));
  auto ab = build_alphabet("ab", {{'a', 'b'}});
  CHECK(lasso_equivalent({"", "ab"}, {"ab", "aabb"}, ab));
  CHECK(lasso_equivalent({"", "ab"}, {"", "aab"}, ab));
  CHECK_FALSE(lasso_equivalent({"", "ab"}, {"", "a"}, ab));
  CHECK_FALSE(lasso_equivalent({"", "ab"}, {"", "aab"}, build_alphabet("ab")));
  CHECK_FALSE(lasso_equivalent({"", "ab"}, {"", "ba"}, build_alphabet("ab")));
  CHECK(lasso_equivalent({"", "ab"}, {"a", "ba"}, build_alphabet("ab")));
  CHECK_THROWS_AS(LassoWord("a", ""), Error);
}

TEST_CASE("lasso equivalence is reflexive, symmetric and rotation invariant", "[trace][property]") {
  testgen::Rng rng(11);
  for (const auto& sigma : small_alphabets()) {
    for (int i = 0; i < 200; ++i) {
      LassoWord l = testgen::random_lasso(rng, sigma, 5, 5);
      LassoWord rotated(l.spoke + l.cycle.front(), l.cycle.substr(1) + l.cycle.front());
      REQUIRE(lasso_equivalent(l, l, sigma));
      REQUIRE(lasso_equivalent(l, rotated, sigma));
      REQUIRE(lasso_equivalent(rotated, l, sigma));
      LassoWord other = testgen::random_lasso(rng, sigma, 5, 5);
      REQUIRE(lasso_equivalent(l, other, sigma) == lasso_equivalent(other, l, sigma));
      REQUIRE(lasso_equivalent(l, testgen::equivalent_lasso(rng, sigma, l), sigma));
    }
  }
}

TEST_CASE("lasso equivalence agrees with long finite prefixes", "[trace][property]") {
  // Equivalent infinite traces have equivalent projections on every dependent
  // pair; inequivalent ones differ on some projection within a bounded prefix.
  testgen::Rng rng(12);
  auto sigma = build_alphabet("abc", {{'a', 'b'}});
  for (int i = 0; i < 300; ++i) {
    LassoWord x = testgen::random_lasso(rng, sigma, 3, 3);
    LassoWord y = testgen::random_lasso(rng, sigma, 3, 3);
    bool expected = true;
    for (Letter a = 0; a < sigma.size() && expected; ++a) {
      for (Letter b = a; b < sigma.size() && expected; ++b) {
        if (!sigma.dependent(a, b)) continue;
        auto keep = [&](const std::string& w) {
          std::string out;
          for (char c : w)
            if (sigma.index(c) == a || sigma.index(c) == b) out.push_back(c);
          return out;
        };
        std::string px = keep(x.prefix(200)), py = keep(y.prefix(200));
        std::size_t n = std::min(px.size(), py.size());
        if (px.substr(0, std::min<std::size_t>(n, 40)) != py.substr(0, std::min<std::size_t>(n, 40))) expected = false;
        if ((px.size() >= 40) != (py.size() >= 40)) expected = false;
        if (px.size() < 40 && py.size() < 40 && px != py) expected = false;
      }
    }
    REQUIRE(lasso_equivalent(x, y, sigma) == expected);
  }
}
