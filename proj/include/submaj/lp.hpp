#pragma once

#include <vector>

namespace submaj::lp {

// maximize c'x subject to A x <= b, x >= 0.
// Dense two-phase simplex with deterministic (Bland-style) tie breaking.
struct Result {
  bool feasible = false;
  bool bounded = true;
  double objective = 0.0;
  std::vector<double> x;
};

Result solve(const std::vector<std::vector<double>>& a,
             const std::vector<double>& b, const std::vector<double>& c);

}  // namespace submaj::lp
