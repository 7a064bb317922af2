#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "submaj/matrix.hpp"

namespace submaj {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // unitary, columns are eigenvectors
};

// Deterministic cyclic complex Jacobi. Fixed sweep order, no pivot search,
// so identical inputs give identical output across runs and platforms.
EigenDecomposition eig(const HermitianMatrix& a);

// U f(diag lambda) U^*. Throws DomainError if f returns a non-finite value
// on some eigenvalue.
HermitianMatrix mat_fn(const HermitianMatrix& a,
                       const std::function<double(double)>& f);

// Power with the global PSD clamp policy: for t >= 0, eigenvalues in
// [-tol_psd, 0] are clamped to zero and anything more negative is a
// DomainError; for t < 0 (and for log) eigenvalues <= tol_psd fail loudly.
HermitianMatrix mat_pow(const HermitianMatrix& a, double t,
                        double tol_psd = kTolPsd);
HermitianMatrix mat_sqrt(const HermitianMatrix& a, double tol_psd = kTolPsd);
HermitianMatrix mat_log(const HermitianMatrix& a, double tol_psd = kTolPsd);
HermitianMatrix mat_exp(const HermitianMatrix& a);
HermitianMatrix mat_inv(const HermitianMatrix& a, double tol_psd = kTolPsd);

// exp(-i t H), unitary.
Matrix unitary_exp(const HermitianMatrix& h, double t);

double min_eig(const HermitianMatrix& a);
double op_norm(const HermitianMatrix& a);

// min eigenvalue of (A - B) >= -tol
bool loewner_geq(const HermitianMatrix& a, const HermitianMatrix& b,
                 double tol);

// Lower-triangular L with A = L L^*; nullopt if a pivot goes nonpositive.
std::optional<Matrix> cholesky(const HermitianMatrix& a);

// Operator norm of the commutator i[A,B] (Hermitian, so via eig).
double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b);

// Unitary U such that U^* M U is diagonal (within tol) for every member of
// a pairwise-commuting family. Throws NotCommuting naming the offending
// pair when the family does not commute within tol.
Matrix simultaneous_eigenbasis(std::span<const HermitianMatrix> family,
                               double tol = kTolCommute);

// Spectral projection sum: sum_k P_k rho P_k over the eigenprojectors of
// sigma_ref (eigenvalues clustered at relative gap ~1e-9).
HermitianMatrix pinch(const HermitianMatrix& rho,
                      const HermitianMatrix& sigma_ref);

// Number of distinct eigenvalue clusters of sigma_ref (the |spec| factor in
// the pinching inequality).
std::size_t spectrum_size(const HermitianMatrix& sigma_ref);

namespace detail {
// Cluster boundaries for an ascending eigenvalue list: returns index ranges
// [begin, end) of each cluster.
std::vector<std::pair<std::size_t, std::size_t>> cluster_ascending(
    const std::vector<double>& vals, double gap_tol);
}  // namespace detail

}  // namespace submaj
