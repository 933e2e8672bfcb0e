// K = [ab] over {a, b, c} with b and c independent. The plain ext automaton
// of K misses acb·c^ω although it denotes the same trace as ab·c^ω; the
// I-suffix extension repairs that.

#include <iostream>

#include "tracelang.hpp"

using namespace tracelang;

int main() {
  auto sigma = build_alphabet("abc", {{'b', 'c'}});
  Dfa k = fixtures::example1_k();
  Dfa ki = i_suffix_extension(k);

  std::cout << "K_I (" << ki.state_count() << " states):\n" << io::serialize(ki) << '\n';
  for (const char* w : {"ab", "acb", "accb", "abcc", "ba", "cab"})
    std::cout << "  " << w << (ki.accepts(w) ? " in K_I\n" : " not in K_I\n");

  auto naive = ext_automaton(k);
  auto sound = ext_automaton(ki);
  std::cout << "\nlasso      ext(K)  ext(K_I)\n";
  for (const char* u : {"ab", "acb", "accb", "b"}) {
    LassoWord l(u, "c");
    std::cout << "  " << io::format_lasso(l) << std::string(9 - io::format_lasso(l).size(), ' ')
              << (eval_lasso(naive, l) ? "accept  " : "reject  ") << (eval_lasso(sound, l) ? "accept" : "reject")
              << '\n';
  }
  std::cout << "\nab;c ~ acb;c: " << (lasso_equivalent({"ab", "c"}, {"acb", "c"}, sigma) ? "yes" : "no") << '\n';
  std::cout << "minimized ext(K_I) is I-diamond: " << (is_i_diamond(minimize_weak(sound)) ? "yes" : "no") << '\n';
}
