#include "submaj/divergences.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "submaj/errors.hpp"
#include "submaj/linalg.hpp"
#include "submaj/means.hpp"

namespace submaj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLn2 = std::log(2.0);

// rho compressed to the support of sigma. diverged is set when rho carries
// weight outside that support (the +inf convention used throughout).
struct SupportRestriction {
  bool diverged = false;
  HermitianMatrix rho;
  std::vector<double> sigma_eigs;  // strictly positive
  Matrix basis;                    // columns spanning the support
};

SupportRestriction restrict_to_support(const HermitianMatrix& rho,
                                       const HermitianMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch("divergence: dimension mismatch");
  const EigenDecomposition ed = eig(sigma);
  const double scale = std::max(1.0, sigma.max_abs());
  if (!ed.eigenvalues.empty() && ed.eigenvalues.front() < -kTolPsd * scale)
    throw DomainError("divergence: second argument has eigenvalue " +
                      std::to_string(ed.eigenvalues.front()));

  const std::size_t d = sigma.dim();
  std::size_t first = 0;
  while (first < d && ed.eigenvalues[first] <= kTolPsd) ++first;

  SupportRestriction out;
  if (first == 0) {  // full support
    out.rho = rho;
    out.sigma_eigs = ed.eigenvalues;
    out.basis = ed.eigenvectors;
    // rotate rho into sigma's eigenbasis
    out.rho = hermitian_unchecked(ed.eigenvectors.adjoint() * rho.mat() *
                                  ed.eigenvectors);
    return out;
  }

  const std::size_t k = d - first;
  Matrix vs(d, k);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < k; ++j) vs(i, j) = ed.eigenvectors(i, first + j);
  HermitianMatrix rho_s = hermitian_unchecked(vs.adjoint() * rho.mat() * vs);
  const double outside = rho.trace() - rho_s.trace();
  if (outside > std::max(1e-12, 1e-12 * std::abs(rho.trace()))) {
    out.diverged = true;
    return out;
  }
  out.rho = std::move(rho_s);
  out.sigma_eigs.assign(ed.eigenvalues.begin() + first, ed.eigenvalues.end());
  out.basis = std::move(vs);
  return out;
}

// rho already expressed in sigma's eigenbasis; sigma = diag(eigs).
double quasientropy_diag(const HermitianMatrix& rho,
                         const std::vector<double>& sigma_eigs, double alpha) {
  const std::size_t d = rho.dim();
  const double expo = (1.0 - alpha) / (2.0 * alpha);
  Matrix sandwiched = rho.mat();
  for (std::size_t i = 0; i < d; ++i) {
    const double si = std::pow(sigma_eigs[i], expo);
    for (std::size_t j = 0; j < d; ++j) {
      sandwiched(i, j) *= si;
      sandwiched(j, i) *= si;
    }
  }
  const EigenDecomposition em = eig(hermitian_unchecked(std::move(sandwiched)));
  double q = 0.0;
  for (double lam : em.eigenvalues)
    if (lam > 0.0) q += std::pow(lam, alpha);
  return q;
}

}  // namespace

bool DivergenceValue::diverged() const {
  return std::isinf(bits) && bits > 0.0;
}

double sandwiched_quasientropy(const HermitianMatrix& rho,
                               const HermitianMatrix& sigma, double alpha) {
  if (alpha < 1.0)
    throw AlphaOutOfRange("quasientropy: alpha = " + std::to_string(alpha));
  if (alpha == 1.0) return rho.trace();
  SupportRestriction r = restrict_to_support(rho, sigma);
  if (r.diverged) return kInf;
  return quasientropy_diag(r.rho, r.sigma_eigs, alpha);
}

double relative_entropy(const HermitianMatrix& rho,
                        const HermitianMatrix& sigma) {
  SupportRestriction r = restrict_to_support(rho, sigma);
  if (r.diverged) return kInf;
  // Tr rho ln rho over the support of rho
  const EigenDecomposition er = eig(r.rho);
  double t1 = 0.0;
  for (double lam : er.eigenvalues)
    if (lam > kTolPsd) t1 += lam * std::log(lam);
  double t2 = 0.0;
  for (std::size_t i = 0; i < r.sigma_eigs.size(); ++i)
    t2 += r.rho(i, i).real() * std::log(r.sigma_eigs[i]);
  return (t1 - t2) / kLn2;
}

double sandwiched_divergence(const HermitianMatrix& rho,
                             const HermitianMatrix& sigma, double alpha) {
  if (alpha < 1.0)
    throw AlphaOutOfRange("sandwiched_divergence: alpha = " +
                          std::to_string(alpha));
  if (alpha == 1.0) return relative_entropy(rho, sigma);
  const double q = sandwiched_quasientropy(rho, sigma, alpha);
  if (std::isinf(q)) return kInf;
  return std::log2(q) / (alpha - 1.0);
}

double max_divergence(const HermitianMatrix& rho,
                      const HermitianMatrix& sigma) {
  SupportRestriction r = restrict_to_support(rho, sigma);
  if (r.diverged) return kInf;
  const std::size_t d = r.rho.dim();
  Matrix m = r.rho.mat();
  for (std::size_t i = 0; i < d; ++i) {
    const double si = 1.0 / std::sqrt(r.sigma_eigs[i]);
    for (std::size_t j = 0; j < d; ++j) {
      m(i, j) *= si;
      m(j, i) *= si;
    }
  }
  return std::log2(op_norm(hermitian_unchecked(std::move(m))));
}

double thompson_metric(const HermitianMatrix& rho,
                       const HermitianMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatch("thompson_metric: dimension mismatch");
  if (min_eig(rho) <= kTolPsd || min_eig(sigma) <= kTolPsd)
    throw DomainError("thompson_metric: arguments must be strictly positive definite");
  return std::max(max_divergence(rho, sigma), max_divergence(sigma, rho));
}

DivergenceValue tagged_sandwiched(const HermitianMatrix& rho,
                                  const HermitianMatrix& sigma, double alpha) {
  return DivergenceValue{sandwiched_divergence(rho, sigma, alpha), alpha,
                         std::nullopt};
}

DivergenceValue tagged_sandwiched_geometric(const HermitianMatrix& rho,
                                            const HermitianMatrix& sigma,
                                            double alpha, double gamma) {
  return DivergenceValue{sandwiched_geometric_divergence(rho, sigma, alpha, gamma),
                         alpha, gamma};
}

double sandwiched_geometric_divergence(const HermitianMatrix& rho,
                                       const HermitianMatrix& sigma,
                                       double alpha, double gamma) {
  if (alpha <= 1.0)
    throw AlphaOutOfRange("sandwiched_geometric_divergence: alpha = " +
                          std::to_string(alpha));
  if (gamma < 0.0 || gamma >= 1.0)
    throw GammaOutOfRange(
        "sandwiched_geometric_divergence: gamma = " + std::to_string(gamma) +
        " (the gamma -> 1 limit is not exposed)");
  if (gamma == 0.0) return sandwiched_divergence(rho, sigma, alpha);
  const HermitianMatrix mixed = geometric_mean(sigma, rho, gamma);
  const double alpha_eff = (alpha - gamma) / (1.0 - gamma);
  return sandwiched_divergence(rho, mixed, alpha_eff) / (1.0 - gamma);
}

}  // namespace submaj
