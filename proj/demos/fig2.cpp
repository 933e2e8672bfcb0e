// K = [(aa)+(bb)+] with a and b independent is trace-closed, but lim(K) is
// not: after the prefix ab, (abab)^ω passes through K infinitely often while
// the equivalent (aabb)^ω never returns to it.

#include <iostream>

#include "tracelang.hpp"

using namespace tracelang;

int main() {
  Dfa k = fixtures::fig2_dfa();
  std::cout << "trace-closed: " << (is_trace_closed(k) ? "yes" : "no") << '\n';

  StabilityReport report = is_limit_stable(k);
  std::cout << "limit-stable: " << (report.verdict ? "yes" : "no") << '\n';
  if (report.witness) {
    const auto& w = *report.witness;
    std::cout << "witness at state " << w.state << ": " << w.visiting << " visits F, " << w.avoiding
              << " does not\n";
  }

  auto dba = OmegaAutomaton::buchi(k);
  for (const char* cycle : {"abab", "aabb"})
    std::cout << "lim(K) on ab;" << cycle << ": " << (eval_lasso(dba, {"ab", cycle}) ? "accept" : "reject") << '\n';

  auto counter = fixtures::fig2_counter_recognizer();
  LinkedPair pair{counter.element(3, 3), counter.element(2, 2)};
  auto cut = pcut_check(counter.product.semigroup, counter.accepting, pair);
  std::cout << "P-cut of ((3,3),(2,2)): " << (cut.holds ? "holds" : "fails");
  if (!cut.holds) std::cout << ", " << *cut.hitting << " hits s^-1 P, " << *cut.missing << " never does";
  std::cout << '\n';

  for (std::size_t m : {2, 3})
    for (std::size_t n : {2, 3})
      std::cout << "[(a^" << m << ")+(b^" << n << ")+] limit-stable: "
                << (is_limit_stable(fixtures::counting_family(m, n)).verdict ? "yes" : "no") << '\n';
}
