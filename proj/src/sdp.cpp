#include "submaj/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "submaj/errors.hpp"
#include "submaj/kernels.hpp"
#include "submaj/linalg.hpp"

namespace submaj::sdp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---- block helpers ----

Matrix lower_solve(const Matrix& l, const Matrix& b) {
  // returns L^{-1} B
  const std::size_t n = l.rows(), m = b.cols();
  Matrix x = b;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      const cplx lik = l(i, k);
      if (lik == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < m; ++j) x(i, j) -= lik * x(k, j);
    }
    const cplx d = l(i, i);
    for (std::size_t j = 0; j < m; ++j) x(i, j) /= d;
  }
  return x;
}

Matrix hermitian_inverse(const Matrix& block) {
  // block assumed HPD; inverse via Cholesky
  auto l = cholesky(hermitian_unchecked(block));
  if (!l) throw SolverStall("interior-point slack matrix lost positive definiteness");
  Matrix linv = lower_solve(*l, Matrix::identity(block.rows()));
  return linv.adjoint() * linv;
}

// largest step alpha with M + alpha D >= 0; +inf if D >= 0
double max_step(const Matrix& m, const Matrix& d) {
  auto l = cholesky(hermitian_unchecked(m));
  if (!l) return 0.0;
  Matrix y = lower_solve(*l, d);            // L^{-1} D
  Matrix z = lower_solve(*l, y.adjoint());  // L^{-1} D L^{-*} (adjointed)
  const double lam = min_eig(hermitian_unchecked(z.adjoint()));
  if (lam >= 0.0) return kInf;
  return -1.0 / lam;
}

double tr_prod_real(const Matrix& a, const Matrix& b) {
  // Re Tr(a b)
  const std::size_t n = a.rows();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx& x = a(i, k);
      const cplx& y = b(k, i);
      acc += x.real() * y.real() - x.imag() * y.imag();
    }
  return acc;
}

// ---- dense real Cholesky for the Schur system ----

bool chol_real_inplace(std::vector<double>& a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (d <= 0.0 || !std::isfinite(d)) return false;
    const double dj = std::sqrt(d);
    a[j * n + j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / dj;
    }
  }
  return true;
}

void chol_real_solve(const std::vector<double>& l, std::size_t n,
                     std::vector<double>& x) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = x[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * x[k];
    x[i] = s / l[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l[k * n + ii] * x[k];
    x[ii] = s / l[ii * n + ii];
  }
}

}  // namespace

BlockDiag BlockDiag::zeros_like(const BlockDiag& shape) {
  BlockDiag out;
  for (const auto& b : shape.blocks) out.blocks.emplace_back(b.rows(), b.cols());
  return out;
}

BlockDiag BlockDiag::identity_like(const BlockDiag& shape) {
  BlockDiag out;
  for (const auto& b : shape.blocks)
    out.blocks.push_back(Matrix::identity(b.rows()));
  return out;
}

std::size_t BlockDiag::total_dim() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  return n;
}

void BlockDiag::axpy(double a, const BlockDiag& x) {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    kernels::axpby(cplx{a, 0.0}, x.blocks[i].data(), cplx{1.0, 0.0},
                   blocks[i].data(), blocks[i].size());
}

void BlockDiag::scal(double a) {
  for (auto& b : blocks) b *= cplx{a, 0.0};
}

double BlockDiag::inner(const BlockDiag& o) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    acc += tr_prod_real(blocks[i], o.blocks[i]);
  return acc;
}

double BlockDiag::max_abs() const {
  double m = 0.0;
  for (const auto& b : blocks) m = std::max(m, b.max_abs());
  return m;
}

void BlockDiag::hermitize() {
  for (auto& b : blocks) b = 0.5 * (b + b.adjoint());
}

Solution solve(const Problem& problem, const Options& options) {
  const std::size_t m = problem.fs.size();
  const std::size_t nblocks = problem.f0.blocks.size();
  const double ntot = static_cast<double>(problem.f0.total_dim());

  double data_scale = std::max(1.0, problem.f0.max_abs());
  for (const auto& f : problem.fs) data_scale = std::max(data_scale, f.max_abs());
  const double init = std::max(10.0, 2.0 * data_scale);

  // X starts on the primal trace slice (our problems have b = e_t with
  // <I, X> = 1), S safely interior.
  BlockDiag x = BlockDiag::identity_like(problem.f0);
  x.scal(1.0 / ntot);
  BlockDiag s = BlockDiag::identity_like(problem.f0);
  s.scal(init);
  std::vector<double> y(m, 0.0);

  Solution sol;
  sol.y = y;

  std::vector<double> schur(m * m), rhs(m), dy(m), dy_aff(m);
  std::vector<BlockDiag> w(m);

  auto evaluate_dual_residual = [&](BlockDiag& dres) {
    dres = problem.f0;
    for (std::size_t i = 0; i < m; ++i)
      if (y[i] != 0.0) dres.axpy(y[i], problem.fs[i]);
    dres.axpy(-1.0, s);
  };

  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    const double mu = x.inner(s) / ntot;

    std::vector<double> presid(m);
    double pnorm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      presid[i] = problem.b[i] + problem.fs[i].inner(x);
      pnorm = std::max(pnorm, std::abs(presid[i]));
    }
    BlockDiag dres;
    evaluate_dual_residual(dres);
    const double dnorm = dres.max_abs();

    sol.mu = mu;
    sol.primal_residual = pnorm;
    sol.dual_residual = dnorm;
    if (mu < options.eps_mu && pnorm < options.eps_feas &&
        dnorm < options.eps_feas) {
      sol.converged = true;
      break;
    }

    // S^{-1} per block, then W_j = X F_j S^{-1}
    BlockDiag sinv;
    sinv.blocks.reserve(nblocks);
    bool lost_pd = false;
    for (const auto& blk : s.blocks) {
      try {
        sinv.blocks.push_back(hermitian_inverse(blk));
      } catch (const SolverStall&) {
        lost_pd = true;
        break;
      }
    }
    if (lost_pd) break;

    for (std::size_t j = 0; j < m; ++j) {
      w[j].blocks.clear();
      w[j].blocks.reserve(nblocks);
      for (std::size_t b = 0; b < nblocks; ++b)
        w[j].blocks.push_back(x.blocks[b] * problem.fs[j].blocks[b] *
                              sinv.blocks[b]);
    }

    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        double acc = 0.0;
        for (std::size_t b = 0; b < nblocks; ++b)
          acc += tr_prod_real(problem.fs[i].blocks[b], w[j].blocks[b]);
        schur[i * m + j] = acc;
        schur[j * m + i] = acc;
      }

    // Jacobi-scaled factorization: the Schur complement spans many orders
    // of magnitude near convergence
    std::vector<double> dscale(m);
    for (std::size_t i = 0; i < m; ++i)
      dscale[i] = 1.0 / std::sqrt(std::max(schur[i * m + i], 1e-300));
    std::vector<double> scaled(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        scaled[i * m + j] = schur[i * m + j] * dscale[i] * dscale[j];
    std::vector<double> factor = scaled;
    double ridge = 0.0;
    bool factored = chol_real_inplace(factor, m);
    while (!factored) {
      ridge = ridge == 0.0 ? 1e-14 : ridge * 100.0;
      if (ridge > 1e-6) break;
      factor = scaled;
      for (std::size_t i = 0; i < m; ++i) factor[i * m + i] += ridge;
      factored = chol_real_inplace(factor, m);
    }
    if (!factored) break;  // numerical floor reached; report what we have
    auto schur_solve = [&](std::vector<double>& v) {
      for (std::size_t i = 0; i < m; ++i) v[i] *= dscale[i];
      chol_real_solve(factor, m, v);
      for (std::size_t i = 0; i < m; ++i) v[i] *= dscale[i];
    };

    // X D_res S^{-1}, shared by predictor and corrector
    BlockDiag xds;
    xds.blocks.reserve(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b)
      xds.blocks.push_back(x.blocks[b] * dres.blocks[b] * sinv.blocks[b]);

    auto direction = [&](const BlockDiag& r0, const std::vector<double>& sol_dy,
                         BlockDiag& dx, BlockDiag& ds) {
      ds = dres;
      for (std::size_t j = 0; j < m; ++j)
        if (sol_dy[j] != 0.0) ds.axpy(sol_dy[j], problem.fs[j]);
      dx = r0;
      for (std::size_t j = 0; j < m; ++j)
        if (sol_dy[j] != 0.0) dx.axpy(-sol_dy[j], w[j]);
      dx.hermitize();
    };

    auto fill_rhs = [&](const BlockDiag& r0) {
      for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t b = 0; b < nblocks; ++b)
          acc += tr_prod_real(problem.fs[i].blocks[b], r0.blocks[b]);
        rhs[i] = presid[i] + acc;
      }
    };

    // predictor (sigma = 0)
    BlockDiag r0 = x;
    r0.scal(-1.0);
    r0.axpy(-1.0, xds);
    fill_rhs(r0);
    dy_aff = rhs;
    schur_solve(dy_aff);
    BlockDiag dx_aff, ds_aff;
    direction(r0, dy_aff, dx_aff, ds_aff);

    double ap = 1.0, ad = 1.0;
    for (std::size_t b = 0; b < nblocks; ++b) {
      ap = std::min(ap, max_step(x.blocks[b], dx_aff.blocks[b]));
      ad = std::min(ad, max_step(s.blocks[b], ds_aff.blocks[b]));
    }
    BlockDiag xa = x, sa = s;
    xa.axpy(std::min(1.0, ap), dx_aff);
    sa.axpy(std::min(1.0, ad), ds_aff);
    const double mu_aff = std::max(0.0, xa.inner(sa) / ntot);
    double sigma = mu > 0.0 ? std::pow(mu_aff / mu, 3.0) : 0.1;
    sigma = std::clamp(sigma, 1e-6, 0.9);

    // corrector: sigma mu S^{-1} - X - X Dres S^{-1} - dXaff dSaff S^{-1}
    r0 = x;
    r0.scal(-1.0);
    r0.axpy(-1.0, xds);
    for (std::size_t b = 0; b < nblocks; ++b) {
      r0.blocks[b] += (sigma * mu) * sinv.blocks[b];
      r0.blocks[b] -= dx_aff.blocks[b] * ds_aff.blocks[b] * sinv.blocks[b];
    }
    fill_rhs(r0);
    dy = rhs;
    schur_solve(dy);
    BlockDiag dx, ds;
    direction(r0, dy, dx, ds);

    ap = kInf;
    ad = kInf;
    for (std::size_t b = 0; b < nblocks; ++b) {
      ap = std::min(ap, max_step(x.blocks[b], dx.blocks[b]));
      ad = std::min(ad, max_step(s.blocks[b], ds.blocks[b]));
    }
    ap = std::min(1.0, options.step_fraction * ap);
    ad = std::min(1.0, options.step_fraction * ad);
    if (!(ap > 0.0) || !(ad > 0.0)) break;  // no progress possible

    x.axpy(ap, dx);
    for (std::size_t i = 0; i < m; ++i) y[i] += ad * dy[i];
    s.axpy(ad, ds);
  }

  sol.iterations = iter;
  sol.y = y;
  sol.objective = 0.0;
  for (std::size_t i = 0; i < m; ++i) sol.objective += problem.b[i] * y[i];
  return sol;
}

}  // namespace submaj::sdp
