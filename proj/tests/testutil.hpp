#pragma once

// Shared generators and oracles for the test suites. Everything is seeded
// explicitly; tests must be reproducible run to run.

#include <cmath>
#include <random>
#include <vector>

#include "submaj/linalg.hpp"
#include "submaj/matrix.hpp"

namespace testutil {

using submaj::cplx;
using submaj::HermitianMatrix;
using submaj::Matrix;

using Rng = std::mt19937_64;

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = cplx{g(rng), g(rng)};
  return m;
}

inline HermitianMatrix random_hermitian(Rng& rng, std::size_t d) {
  Matrix m = random_matrix(rng, d, d);
  return submaj::hermitian_unchecked(0.5 * (m + m.adjoint()));
}

// Strictly positive definite: G G^* + margin * I.
inline HermitianMatrix random_pd(Rng& rng, std::size_t d,
                                 double margin = 0.1) {
  Matrix g = random_matrix(rng, d, d);
  Matrix m = g * g.adjoint();
  for (std::size_t i = 0; i < d; ++i) m(i, i) += margin;
  return submaj::hermitian_unchecked(std::move(m));
}

// Density matrix (PD, unit trace).
inline HermitianMatrix random_state(Rng& rng, std::size_t d,
                                    double margin = 0.05) {
  HermitianMatrix p = random_pd(rng, d, margin);
  return (1.0 / p.trace()) * p;
}

// QR-based Haar-ish unitary.
inline Matrix random_unitary(Rng& rng, std::size_t d) {
  Matrix a = random_matrix(rng, d, d);
  // Gram-Schmidt on columns
  Matrix q(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<cplx> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = a(i, j);
    for (std::size_t k = 0; k < j; ++k) {
      cplx proj{0.0, 0.0};
      for (std::size_t i = 0; i < d; ++i) proj += std::conj(q(i, k)) * v[i];
      for (std::size_t i = 0; i < d; ++i) v[i] -= proj * q(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += std::norm(v[i]);
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < d; ++i) q(i, j) = v[i] / norm;
  }
  return q;
}

// Isometry V: C^din -> C^(din*denv) from the first din columns of a unitary.
inline Matrix random_isometry(Rng& rng, std::size_t din, std::size_t dout) {
  Matrix u = random_unitary(rng, dout);
  Matrix v(dout, din);
  for (std::size_t i = 0; i < dout; ++i)
    for (std::size_t j = 0; j < din; ++j) v(i, j) = u(i, j);
  return v;
}

// Random CPTP map din -> dkeep via Stinespring: Tr_env[V rho V^*] with
// V: din -> dkeep (x) denv.
struct RandomChannel {
  Matrix v;  // (dkeep*denv) x din
  std::size_t dkeep, denv;

  HermitianMatrix apply(const HermitianMatrix& rho) const {
    Matrix big = v * rho.mat() * v.adjoint();
    return submaj::hermitian_unchecked(
        partial_trace(big, dkeep, denv, 2));
  }
};

inline RandomChannel random_cptp(Rng& rng, std::size_t din, std::size_t dkeep,
                                 std::size_t denv) {
  return RandomChannel{random_isometry(rng, din, dkeep * denv), dkeep, denv};
}

// Classical Renyi quasientropy sum p_i^alpha q_i^(1-alpha).
inline double classical_quasientropy(const std::vector<double>& p,
                                     const std::vector<double>& q,
                                     double alpha) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    s += std::pow(p[i], alpha) * std::pow(q[i], 1.0 - alpha);
  return s;
}

inline double classical_renyi_bits(const std::vector<double>& p,
                                   const std::vector<double>& q,
                                   double alpha) {
  return std::log2(classical_quasientropy(p, q, alpha)) / (alpha - 1.0);
}

inline double reldiff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testutil
