#include "submaj/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "submaj/errors.hpp"

namespace submaj {

namespace {

double offdiag_norm2(const Matrix& a) {
  const std::size_t d = a.rows();
  double s = 0.0;
  for (std::size_t p = 0; p < d; ++p)
    for (std::size_t q = p + 1; q < d; ++q) s += std::norm(a(p, q));
  return 2.0 * s;
}

}  // namespace

EigenDecomposition eig(const HermitianMatrix& input) {
  const std::size_t d = input.dim();
  Matrix a = input.mat();
  Matrix v = Matrix::identity(d);

  const double scale = a.max_abs();
  if (d > 0 && scale > 0.0) {
    const double stop2 = 1e-26 * a.frobenius_norm() * a.frobenius_norm();
    const int max_sweeps = 50;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      if (offdiag_norm2(a) <= stop2) break;
      for (std::size_t p = 0; p + 1 < d; ++p) {
        for (std::size_t q = p + 1; q < d; ++q) {
          const cplx apq = a(p, q);
          const double r = std::abs(apq);
          if (r <= 1e-18 * scale) continue;
          const cplx phase = apq / r;  // a(p,q) = r * phase
          const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
          const double t =
              (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          // Local unitary U = diag(1, conj(phase)) * [[c, s], [-s, c]] on
          // coordinates (p, q); update A <- U^* A U and V <- V U.
          const cplx upp = c;
          const cplx uqp = -s * std::conj(phase);
          const cplx upq = s;
          const cplx uqq = c * std::conj(phase);
          for (std::size_t k = 0; k < d; ++k) {
            const cplx akp = a(k, p), akq = a(k, q);
            a(k, p) = akp * upp + akq * uqp;
            a(k, q) = akp * upq + akq * uqq;
          }
          for (std::size_t k = 0; k < d; ++k) {
            const cplx apk = a(p, k), aqk = a(q, k);
            a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
            a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
          }
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          a(p, p) = cplx{a(p, p).real(), 0.0};
          a(q, q) = cplx{a(q, q).real(), 0.0};
          for (std::size_t k = 0; k < d; ++k) {
            const cplx vkp = v(k, p), vkq = v(k, q);
            v(k, p) = vkp * upp + vkq * uqp;
            v(k, q) = vkp * upq + vkq * uqq;
          }
        }
      }
    }
  }

  std::vector<double> vals(d);
  for (std::size_t i = 0; i < d; ++i) vals[i] = a(i, i).real();
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return vals[x] < vals[y]; });

  EigenDecomposition out;
  out.eigenvalues.resize(d);
  out.eigenvectors = Matrix(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    out.eigenvalues[j] = vals[order[j]];
    for (std::size_t i = 0; i < d; ++i)
      out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

namespace {

HermitianMatrix assemble(const EigenDecomposition& ed,
                         const std::vector<double>& fvals) {
  const std::size_t d = ed.eigenvalues.size();
  Matrix scaled = ed.eigenvectors;  // columns scaled by f(lambda)
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) scaled(i, j) *= fvals[j];
  return hermitian_unchecked(scaled * ed.eigenvectors.adjoint());
}

}  // namespace

HermitianMatrix mat_fn(const HermitianMatrix& a,
                       const std::function<double(double)>& f) {
  const EigenDecomposition ed = eig(a);
  std::vector<double> fvals(ed.eigenvalues.size());
  for (std::size_t i = 0; i < fvals.size(); ++i) {
    fvals[i] = f(ed.eigenvalues[i]);
    if (!std::isfinite(fvals[i]))
      throw DomainError("mat_fn: f(" + std::to_string(ed.eigenvalues[i]) +
                        ") is not finite");
  }
  return assemble(ed, fvals);
}

HermitianMatrix mat_pow(const HermitianMatrix& a, double t, double tol_psd) {
  if (t == 1.0) return a;
  const EigenDecomposition ed = eig(a);
  std::vector<double> fvals(ed.eigenvalues.size());
  for (std::size_t i = 0; i < fvals.size(); ++i) {
    double lam = ed.eigenvalues[i];
    if (t >= 0.0) {
      if (lam < -tol_psd)
        throw DomainError("mat_pow: eigenvalue " + std::to_string(lam) +
                          " below -tol_psd");
      if (lam < 0.0) lam = 0.0;
      fvals[i] = std::pow(lam, t);
    } else {
      if (lam <= tol_psd)
        throw DomainError("mat_pow: eigenvalue " + std::to_string(lam) +
                          " not strictly positive for negative power");
      fvals[i] = std::pow(lam, t);
    }
  }
  return assemble(ed, fvals);
}

HermitianMatrix mat_sqrt(const HermitianMatrix& a, double tol_psd) {
  return mat_pow(a, 0.5, tol_psd);
}

HermitianMatrix mat_log(const HermitianMatrix& a, double tol_psd) {
  const EigenDecomposition ed = eig(a);
  std::vector<double> fvals(ed.eigenvalues.size());
  for (std::size_t i = 0; i < fvals.size(); ++i) {
    const double lam = ed.eigenvalues[i];
    if (lam <= tol_psd)
      throw DomainError("mat_log: eigenvalue " + std::to_string(lam) +
                        " not strictly positive");
    fvals[i] = std::log(lam);
  }
  return assemble(ed, fvals);
}

HermitianMatrix mat_exp(const HermitianMatrix& a) {
  const EigenDecomposition ed = eig(a);
  std::vector<double> fvals(ed.eigenvalues.size());
  for (std::size_t i = 0; i < fvals.size(); ++i)
    fvals[i] = std::exp(ed.eigenvalues[i]);
  return assemble(ed, fvals);
}

HermitianMatrix mat_inv(const HermitianMatrix& a, double tol_psd) {
  return mat_pow(a, -1.0, tol_psd);
}

Matrix unitary_exp(const HermitianMatrix& h, double t) {
  const EigenDecomposition ed = eig(h);
  const std::size_t d = h.dim();
  Matrix scaled = ed.eigenvectors;
  for (std::size_t j = 0; j < d; ++j) {
    const cplx w = std::exp(cplx{0.0, -t * ed.eigenvalues[j]});
    for (std::size_t i = 0; i < d; ++i) scaled(i, j) *= w;
  }
  return scaled * ed.eigenvectors.adjoint();
}

double min_eig(const HermitianMatrix& a) {
  if (a.dim() == 0) return 0.0;
  return eig(a).eigenvalues.front();
}

double op_norm(const HermitianMatrix& a) {
  if (a.dim() == 0) return 0.0;
  const auto& v = eig(a).eigenvalues;
  return std::max(std::abs(v.front()), std::abs(v.back()));
}

bool loewner_geq(const HermitianMatrix& a, const HermitianMatrix& b,
                 double tol) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("loewner_geq: dimension mismatch");
  return min_eig(a - b) >= -tol;
}

std::optional<Matrix> cholesky(const HermitianMatrix& a) {
  const std::size_t d = a.dim();
  Matrix l(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = a(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (diag <= 0.0 || !std::isfinite(diag)) return std::nullopt;
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < d; ++i) {
      cplx s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

double commutator_norm(const HermitianMatrix& a, const HermitianMatrix& b) {
  Matrix c = a.mat() * b.mat() - b.mat() * a.mat();
  // i[A,B] is Hermitian
  return op_norm(hermitian_unchecked(cplx{0.0, 1.0} * c));
}

namespace detail {

std::vector<std::pair<std::size_t, std::size_t>> cluster_ascending(
    const std::vector<double>& vals, double gap_tol) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  for (std::size_t i = 1; i <= vals.size(); ++i) {
    if (i == vals.size() || vals[i] - vals[i - 1] > gap_tol) {
      out.emplace_back(begin, i);
      begin = i;
    }
  }
  return out;
}

}  // namespace detail

Matrix simultaneous_eigenbasis(std::span<const HermitianMatrix> family,
                               double tol) {
  if (family.empty())
    throw DomainError("simultaneous_eigenbasis: empty family");
  const std::size_t d = family.front().dim();
  for (const auto& m : family)
    if (m.dim() != d)
      throw DimensionMismatch("simultaneous_eigenbasis: mixed dimensions");

  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const double cn = commutator_norm(family[i], family[j]);
      if (cn > tol)
        throw NotCommuting("members " + std::to_string(i) + " and " +
                           std::to_string(j) + " have commutator norm " +
                           std::to_string(cn));
    }

  Matrix u = Matrix::identity(d);
  std::vector<std::pair<std::size_t, std::size_t>> blocks{{0, d}};
  for (const auto& m : family) {
    const double scale = std::max(m.max_abs(), 1e-30);
    const double gap_tol = std::max(1e-7 * scale, 1e-13);
    Matrix b = u.adjoint() * m.mat() * u;
    std::vector<std::pair<std::size_t, std::size_t>> next;
    for (const auto& [lo, hi] : blocks) {
      const std::size_t w = hi - lo;
      if (w == 1) {
        next.emplace_back(lo, hi);
        continue;
      }
      Matrix sub(w, w);
      for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j) sub(i, j) = b(lo + i, lo + j);
      const EigenDecomposition ed = eig(hermitian_unchecked(std::move(sub)));
      // rotate the block's columns of the accumulated basis
      Matrix cols(d, w);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < w; ++j) cols(i, j) = u(i, lo + j);
      Matrix rotated = cols * ed.eigenvectors;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < w; ++j) u(i, lo + j) = rotated(i, j);
      for (const auto& [a0, a1] : detail::cluster_ascending(ed.eigenvalues, gap_tol))
        next.emplace_back(lo + a0, lo + a1);
    }
    blocks = std::move(next);
  }

  // Verify the basis actually diagonalizes everything within tol.
  for (std::size_t k = 0; k < family.size(); ++k) {
    Matrix b = u.adjoint() * family[k].mat() * u;
    double off = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) off = std::max(off, std::abs(b(i, j)));
    const double scale = std::max(1.0, family[k].max_abs());
    if (off > std::max(tol, 1e-10) * scale * 10.0)
      throw NotCommuting("member " + std::to_string(k) +
                         " not diagonalized by the common basis, residual " +
                         std::to_string(off));
  }
  return u;
}

HermitianMatrix pinch(const HermitianMatrix& rho,
                      const HermitianMatrix& sigma_ref) {
  if (rho.dim() != sigma_ref.dim())
    throw DimensionMismatch("pinch: dimension mismatch");
  const EigenDecomposition ed = eig(sigma_ref);
  const double scale = std::max(sigma_ref.max_abs(), 1e-30);
  const double gap_tol = std::max(1e-9 * scale, 1e-12);
  const auto clusters = detail::cluster_ascending(ed.eigenvalues, gap_tol);

  Matrix b = ed.eigenvectors.adjoint() * rho.mat() * ed.eigenvectors;
  Matrix blocked(rho.dim(), rho.dim());
  for (const auto& [lo, hi] : clusters)
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = lo; j < hi; ++j) blocked(i, j) = b(i, j);
  return hermitian_unchecked(ed.eigenvectors * blocked *
                             ed.eigenvectors.adjoint());
}

std::size_t spectrum_size(const HermitianMatrix& sigma_ref) {
  const EigenDecomposition ed = eig(sigma_ref);
  const double scale = std::max(sigma_ref.max_abs(), 1e-30);
  const double gap_tol = std::max(1e-9 * scale, 1e-12);
  return detail::cluster_ascending(ed.eigenvalues, gap_tol).size();
}

}  // namespace submaj
