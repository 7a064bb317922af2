#pragma once

#include <optional>
#include <string>
#include <vector>

#include "submaj/families.hpp"
#include "submaj/matrix.hpp"
#include "submaj/spectrum.hpp"

namespace submaj {

// Choi representation of a linear map B(H_in) -> B(H_out), stored on
// H_in (x) H_out with the fixed convention
//   T_J(A) = Tr_in[ J (A^T (x) I) ],
// transpose taken in the computational basis. Mixing conventions silently
// breaks equivariance constraints, so every consumer goes through apply().
struct ChoiOperator {
  std::size_t dim_in = 0, dim_out = 0;
  HermitianMatrix j;
  bool trace_preserving = false;

  HermitianMatrix apply(const HermitianMatrix& a) const;
  Matrix apply(const Matrix& a) const;
  HermitianMatrix trace_out() const;  // Tr_out J, an operator on H_in

  static ChoiOperator identity_channel(std::size_t d);
};

// Commutation constraints [J, K] = 0 defining equivariant maps. K is
// either conj(pi(g)) (x) pi'(g) for finite group elements, or the
// Hermitian generator -conj(H) (x) I + I (x) H' for a U(1) action.
struct EquivarianceConstraints {
  std::vector<Matrix> commutant_unitaries;
  std::vector<HermitianMatrix> commutant_generators;
  bool empty() const {
    return commutant_unitaries.empty() && commutant_generators.empty();
  }
};

EquivarianceConstraints equivariance_constraints_from_group(
    const std::vector<Matrix>& rep_in, const std::vector<Matrix>& rep_out);

EquivarianceConstraints u1_equivariance_constraint(const HermitianMatrix& h_in,
                                                   const HermitianMatrix& h_out);

// Orthogonal projection onto the commutant subspace (alternating pinches /
// twirls until stationary; exact after one pass for a single constraint).
HermitianMatrix project_equivariant(const HermitianMatrix& j,
                                    const EquivarianceConstraints& eq);

// Group average of a Choi operator over a finite group: the Choi of
// X -> avg_g pi'(g)^* T(pi(g) X pi(g)^*) pi'(g). Preserves trace bounds
// and lands exactly on the equivariant subspace.
ChoiOperator average_map(const ChoiOperator& t,
                         const std::vector<Matrix>& rep_in,
                         const std::vector<Matrix>& rep_out);

enum class Feasibility { Feasible, Infeasible, Marginal };

struct FeasibilityOptions {
  bool trace_preserving = false;
  std::optional<HermitianMatrix> gibbs_state;  // adds T(tau) = tau
  EquivarianceConstraints equivariance;
  double tol_feas = kTolFeas;
  int max_iterations = 200;
  std::size_t dimension_cap = 64;
  bool attach_violating_monotone = true;
};

struct FeasibilityReport {
  Feasibility status = Feasibility::Marginal;
  double slack = 0.0;  // optimal t*
  std::optional<ChoiOperator> certificate;
  bool certificate_verified = false;
  std::optional<SweepRow> violated_monotone;
  int iterations = 0;

  std::string describe() const;
};

// One-shot preorder decision (rho, sigma) >= (rho', sigma') as a max-slack
// SDP over Choi operators:
//   max t  s.t.  J >= tI,  I - Tr_out J >= tI (pair of signed blocks when
//   trace-preserving),  T_J(rho(x)) - rho'(x) >= tI,
//   sigma'(y) - T_J(sigma(y)) >= tI,  [J, K] = 0.
// Feasible iff t* >= -tol_feas, Infeasible iff t* < -10 tol_feas,
// Marginal in between. Feasible certificates are re-verified by direct
// Loewner checks, independent of the solver.
FeasibilityReport decide_submajorization(const FamilyPair& p,
                                         const FamilyPair& q,
                                         const FeasibilityOptions& options = {});

// Exact transformation T_J(rho(x)) = rho'(x) (two-sided slack blocks), with
// optional Gibbs preservation T(tau) = tau. The sigma components of the
// inputs are ignored; only the rho families constrain the map.
FeasibilityReport decide_exact_transform(const FamilyPair& p,
                                         const FamilyPair& q,
                                         const FeasibilityOptions& options = {});

// Classical fast path: LP feasibility for a componentwise-nonnegative
// matrix with column sums <= 1 between simultaneous-eigenbasis vectors.
// Throws NotClassical when a pair fails the commutation test.
FeasibilityReport decide_submajorization_classical(
    const FamilyPair& p, const FamilyPair& q,
    const FeasibilityOptions& options = {});

}  // namespace submaj
