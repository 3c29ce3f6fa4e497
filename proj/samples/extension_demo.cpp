// Finds a weight-preserving map on three planes over F_2 that does not
// extend to an isometry, then shows that the chain of three has none.

#include <iostream>

#include "wpmep/wpmep.hpp"

using namespace wpmep;

static void print_rows(const Matrix& m) {
  for (const auto& row : m.row_list()) {
    std::cout << "    ";
    for (int x : row) std::cout << x;
    std::cout << "\n";
  }
}

int main() {
  MetricSpace planes(Poset::antichain(3), AlphabetSpec::uniform(2, 3, 2));
  auto verdict = mep_brute_force(planes, MepMode::Weight, {}, 3);
  std::cout << "three planes: extension property " << (verdict.holds ? "holds" : "fails") << "\n";
  if (verdict.counterexample) {
    std::cout << "  code basis:\n";
    print_rows(verdict.counterexample->code.basis());
    std::cout << "  images of the basis rows:\n";
    print_rows(verdict.counterexample->images);
    std::cout << "  replay confirms: " << std::boolalpha
              << replay_counterexample(planes, MepMode::Weight, *verdict.counterexample) << "\n";
  }
  std::cout << "  closed form agrees: " << (mep_predicate(planes).holds == verdict.holds) << "\n";

  MetricSpace chain(Poset::chain(3), AlphabetSpec::uniform(2, 3));
  auto c = mep_brute_force(chain);
  std::cout << "chain of three: extension property " << (c.holds ? "holds" : "fails") << " over "
            << c.codes_checked << " codes\n";
  std::cout << "  isometry group order " << weight_isometry_group(chain).size() << "\n";
  return 0;
}
