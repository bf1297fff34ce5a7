#include <stdexcept>

#include "weighwright/bounds.hpp"
#include "weighwright/composition.hpp"
#include "weighwright/errors.hpp"
#include "weighwright/search.hpp"

namespace weighwright {

DecisionTree synthesize_base(int n, Semantics semantics) {
  if (n < 1 || n > 11) throw std::invalid_argument("base strategies cover 1 to 11 coins");
  const int budget = n == 3 ? 3 : static_cast<int>(upper(n));
  if (n == 11) return *eleven_coin_tree(semantics);
  if (n == 7 || n == 8 || n == 10) return extend_by_one(*base_tree(n - 1, semantics), semantics);
  if (n == 9) {
    SpliceOptions lo;
    lo.semantics = semantics;
    if (semantics == Semantics::SortClasses) lo.uniform_deadline = budget - 1;
    return extend_by_three(*base_tree(6, semantics), {7, 8, 9}, lo).tree;
  }
  Solver solver;
  const int lowest = static_cast<int>(semantics == Semantics::Exact ? lower_g(n) : lower_gbar(n));
  for (int d = lowest; d <= budget; ++d) {
    SearchProblem p = semantics == Semantics::Exact ? SearchProblem::exact(n, d) : SearchProblem::sorting(n, d);
    if (semantics == Semantics::SortClasses && n != 3) p.uniform_deadline = budget - 1;
    if (auto t = solver.solve(p)) return std::move(*t);
  }
  throw Error("no strategy for " + std::to_string(n) + " coins within " + std::to_string(budget) + " weighings");
}

}  // namespace weighwright
