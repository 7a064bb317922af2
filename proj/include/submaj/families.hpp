#pragma once

#include <string>
#include <vector>

#include "submaj/linalg.hpp"
#include "submaj/matrix.hpp"
#include "submaj/means.hpp"

namespace submaj {

// Semiring element: a pair of families of strictly positive definite
// operators over finite index sets X and Y. dim 0 is the semiring zero.
struct FamilyPair {
  std::size_t dim = 0;
  std::vector<std::string> X_labels, Y_labels;
  std::vector<HermitianMatrix> rho;    // indexed like X_labels
  std::vector<HermitianMatrix> sigma;  // indexed like Y_labels

  // Validating factory: labels nonempty, sizes consistent, every member
  // strictly PD (min eigenvalue > tol_psd) when dim > 0.
  static FamilyPair create(std::vector<std::string> x_labels,
                           std::vector<std::string> y_labels,
                           std::vector<HermitianMatrix> rho,
                           std::vector<HermitianMatrix> sigma,
                           double tol_psd = kTolPsd);

  static FamilyPair zero(std::vector<std::string> x_labels = {"x"},
                         std::vector<std::string> y_labels = {"y"});
  static FamilyPair one(std::vector<std::string> x_labels = {"x"},
                        std::vector<std::string> y_labels = {"y"});

  const HermitianMatrix& rho_at(const std::string& label) const;
  const HermitianMatrix& sigma_at(const std::string& label) const;

  bool is_zero() const { return dim == 0; }
};

// Pointwise direct sum / tensor product of both components.
FamilyPair add(const FamilyPair& p, const FamilyPair& q);
FamilyPair mul(const FamilyPair& p, const FamilyPair& q);

// Scalar pair (2^k, 1): the power universal element u^k.
FamilyPair power_universal(unsigned k,
                           std::vector<std::string> x_labels = {"x"},
                           std::vector<std::string> y_labels = {"y"});

// True iff all members of both families pairwise commute within tol.
bool is_classical(const FamilyPair& p, double tol = kTolCommute);

// Families rho(g) = U_g rho0 U_g^*, sigma(g) = U_g sigma0 U_g^* over a
// finite group element list. Labels default to g0, g1, ...
FamilyPair orbit_family(const std::vector<Matrix>& rep,
                        const HermitianMatrix& rho0,
                        const HermitianMatrix& sigma0,
                        std::vector<std::string> labels = {});

// (1-eps) m + eps tau
HermitianMatrix perturb(const HermitianMatrix& m, double eps,
                        const HermitianMatrix& tau);
// every member mixed with the maximally mixed state I/dim
FamilyPair perturb_full_rank(const FamilyPair& p, double eps);

// Exponents realizing power universality: u^k_dominates >= P and
// u^k_inverse * P >= 1, together with the scaling constants of the
// witness maps c1 Tr(.) and c2 (.) (x) I/d.
struct PowerUniversalWitness {
  unsigned k_dominates;
  unsigned k_inverse;
  double c1, c2;
};
PowerUniversalWitness power_universal_witness(const FamilyPair& p);

// Vector views of a classical pair in a simultaneous eigenbasis:
// p[i][x] and q[i][y] for i < dim. Throws NotClassical.
struct ClassicalVectors {
  std::vector<std::vector<double>> p;  // dim x |X|
  std::vector<std::vector<double>> q;  // dim x |Y|
};
ClassicalVectors classical_vectors(const FamilyPair& pair,
                                   double tol = kTolCommute);

}  // namespace submaj
