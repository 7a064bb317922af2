#pragma once

#include <optional>

#include "submaj/matrix.hpp"

namespace submaj {

// Tagged divergence value. bits may be +infinity when the first argument
// has weight outside the support of the second.
struct DivergenceValue {
  double bits;
  double alpha;
  std::optional<double> gamma;  // absent: pure sandwiched family
  bool diverged() const;
};

// Q_alpha(rho || sigma) = Tr (sigma^((1-alpha)/2alpha) rho sigma^(...))^alpha.
// Unnormalized convention: no division by Tr rho. At alpha = 1 returns
// Tr rho. sigma may be PSD; weight of rho outside its support yields +inf.
// An indefinite sigma is a DomainError.
double sandwiched_quasientropy(const HermitianMatrix& rho,
                               const HermitianMatrix& sigma, double alpha);

// D_alpha in bits: log2(Q_alpha) / (alpha - 1) for alpha > 1. At alpha = 1
// returns the Umegaki relative entropy (the normalized-state limit).
double sandwiched_divergence(const HermitianMatrix& rho,
                             const HermitianMatrix& sigma, double alpha);

// Umegaki relative entropy Tr rho (log2 rho - log2 sigma), support-aware.
double relative_entropy(const HermitianMatrix& rho,
                        const HermitianMatrix& sigma);

// D_max = log2 || sigma^(-1/2) rho sigma^(-1/2) ||_inf
//       = log2 min { 2^lambda : 2^lambda sigma >= rho }.
double max_divergence(const HermitianMatrix& rho,
                      const HermitianMatrix& sigma);

// Thompson metric: max of the two max-divergences. Both arguments PD.
double thompson_metric(const HermitianMatrix& rho,
                       const HermitianMatrix& sigma);

// Tagged variants carrying (alpha, gamma) alongside the value.
DivergenceValue tagged_sandwiched(const HermitianMatrix& rho,
                                  const HermitianMatrix& sigma, double alpha);
DivergenceValue tagged_sandwiched_geometric(const HermitianMatrix& rho,
                                            const HermitianMatrix& sigma,
                                            double alpha, double gamma);

// Two-parameter sandwiched-geometric family, alpha > 1, gamma in [0,1):
//   D_{alpha,gamma}(rho||sigma)
//     = 1/(1-gamma) * D_{(alpha-gamma)/(1-gamma)}(rho || sigma #_gamma rho).
// rho may be PSD; a singular rho makes the value +inf. The gamma -> 1
// limit is not exposed (no known closed form).
double sandwiched_geometric_divergence(const HermitianMatrix& rho,
                                       const HermitianMatrix& sigma,
                                       double alpha, double gamma);

}  // namespace submaj
