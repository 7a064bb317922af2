#pragma once

#include <vector>

#include "submaj/matrix.hpp"

namespace submaj::sdp {

// Block-diagonal Hermitian matrix; the constraint carrier of the solver.
struct BlockDiag {
  std::vector<Matrix> blocks;

  static BlockDiag zeros_like(const BlockDiag& shape);
  static BlockDiag identity_like(const BlockDiag& shape);

  std::size_t total_dim() const;
  void axpy(double a, const BlockDiag& x);  // this += a x
  void scal(double a);
  double inner(const BlockDiag& o) const;  // Re sum_b Tr(this_b o_b)
  double max_abs() const;
  void hermitize();
};

// Dual-form SDP with one linear matrix inequality:
//   maximize   b' y
//   subject to F0 + sum_i y_i F_i  >=  0.
struct Problem {
  BlockDiag f0;
  std::vector<BlockDiag> fs;   // one per variable
  std::vector<double> b;       // objective coefficients
};

struct Options {
  int max_iterations = 200;
  double eps_mu = 1e-11;    // duality measure target
  double eps_feas = 1e-9;   // residual norm target
  double step_fraction = 0.98;
};

struct Solution {
  std::vector<double> y;
  double objective = 0.0;
  int iterations = 0;
  double mu = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  bool converged = false;
};

// Infeasible-start primal-dual path following with the HKM direction and a
// Mehrotra-style corrector. Deterministic: fixed starting point and
// iteration rules. Throws SolverStall if the iteration limit is reached
// while residuals are still large.
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace submaj::sdp
