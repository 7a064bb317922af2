#include "submaj/feasibility.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "submaj/errors.hpp"
#include "submaj/lp.hpp"
#include "submaj/sdp.hpp"

namespace submaj {

namespace {

Matrix apply_choi(const Matrix& j, const Matrix& a, std::size_t d_in,
                  std::size_t d_out) {
  // T_J(A)[k,l] = sum_{i,m} J[(i,k),(m,l)] A[i,m]
  Matrix out(d_out, d_out);
  for (std::size_t k = 0; k < d_out; ++k)
    for (std::size_t l = 0; l < d_out; ++l) {
      cplx acc{0.0, 0.0};
      for (std::size_t i = 0; i < d_in; ++i)
        for (std::size_t m = 0; m < d_in; ++m)
          acc += j(i * d_out + k, m * d_out + l) * a(i, m);
      out(k, l) = acc;
    }
  return out;
}

}  // namespace

HermitianMatrix ChoiOperator::apply(const HermitianMatrix& a) const {
  return hermitian_unchecked(apply_choi(j.mat(), a.mat(), dim_in, dim_out));
}

Matrix ChoiOperator::apply(const Matrix& a) const {
  return apply_choi(j.mat(), a, dim_in, dim_out);
}

HermitianMatrix ChoiOperator::trace_out() const {
  return partial_trace(j, dim_in, dim_out, 2);
}

ChoiOperator ChoiOperator::identity_channel(std::size_t d) {
  Matrix j(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) j(i * d + i, k * d + k) = 1.0;
  ChoiOperator c;
  c.dim_in = d;
  c.dim_out = d;
  c.j = hermitian_unchecked(std::move(j));
  return c;
}

EquivarianceConstraints equivariance_constraints_from_group(
    const std::vector<Matrix>& rep_in, const std::vector<Matrix>& rep_out) {
  if (rep_in.size() != rep_out.size())
    throw LengthMismatch("equivariance: group element lists differ in length");
  if (rep_in.empty())
    throw LengthMismatch("equivariance: empty group element list");
  EquivarianceConstraints eq;
  for (std::size_t g = 0; g < rep_in.size(); ++g) {
    const Matrix& u = rep_in[g];
    const Matrix& v = rep_out[g];
    if ((u * u.adjoint() - Matrix::identity(u.rows())).max_abs() > 1e-10 ||
        (v * v.adjoint() - Matrix::identity(v.rows())).max_abs() > 1e-10)
      throw NotUnitary("equivariance: representation element " +
                       std::to_string(g) + " is not unitary");
    eq.commutant_unitaries.push_back(kron(u.conjugate(), v));
  }
  return eq;
}

EquivarianceConstraints u1_equivariance_constraint(
    const HermitianMatrix& h_in, const HermitianMatrix& h_out) {
  const std::size_t di = h_in.dim(), dk = h_out.dim();
  Matrix n = kron(cplx{-1.0, 0.0} * h_in.mat().conjugate(),
                  Matrix::identity(dk)) +
             kron(Matrix::identity(di), h_out.mat());
  EquivarianceConstraints eq;
  eq.commutant_generators.push_back(hermitian_unchecked(std::move(n)));
  return eq;
}

namespace {

// Zero out matrix entries between different eigenspaces of a unitary K.
// The eigenspaces are found from the commuting Hermitian pair
// (K + K^*)/2, (K - K^*)/2i.
HermitianMatrix pinch_by_unitary(const HermitianMatrix& j, const Matrix& k) {
  const std::size_t d = k.rows();
  HermitianMatrix re = hermitian_unchecked(0.5 * (k + k.adjoint()));
  HermitianMatrix im =
      hermitian_unchecked(cplx{0.0, -0.5} * (k - k.adjoint()));
  std::vector<HermitianMatrix> pair{re, im};
  const Matrix u = simultaneous_eigenbasis(pair, 1e-8);

  std::vector<double> a(d), b(d);
  {
    Matrix ra = u.adjoint() * re.mat() * u;
    Matrix rb = u.adjoint() * im.mat() * u;
    for (std::size_t i = 0; i < d; ++i) {
      a[i] = ra(i, i).real();
      b[i] = rb(i, i).real();
    }
  }
  std::vector<int> cluster(d, -1);
  int nclusters = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t r = 0; r < i; ++r)
      if (std::abs(a[i] - a[r]) < 1e-8 && std::abs(b[i] - b[r]) < 1e-8) {
        cluster[i] = cluster[r];
        break;
      }
    if (cluster[i] < 0) cluster[i] = nclusters++;
  }
  Matrix m = u.adjoint() * j.mat() * u;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t l = 0; l < d; ++l)
      if (cluster[i] != cluster[l]) m(i, l) = 0.0;
  return hermitian_unchecked(u * m * u.adjoint());
}

HermitianMatrix twirl(const HermitianMatrix& j,
                      const std::vector<Matrix>& ks) {
  Matrix acc(j.dim(), j.dim());
  for (const auto& k : ks) acc += k.adjoint() * j.mat() * k;
  return hermitian_unchecked((1.0 / static_cast<double>(ks.size())) * acc);
}

}  // namespace

HermitianMatrix project_equivariant(const HermitianMatrix& j,
                                    const EquivarianceConstraints& eq) {
  if (eq.empty()) return j;
  // alternating orthogonal projections onto the single-constraint
  // commutants; exact after one pass for a single constraint, convergent
  // for generator lists (no group-closure assumption needed)
  HermitianMatrix cur = j;
  const double scale = std::max(1.0, j.max_abs());
  for (int pass = 0; pass < 500; ++pass) {
    HermitianMatrix next = cur;
    for (const auto& gen : eq.commutant_generators) next = pinch(next, gen);
    for (const auto& k : eq.commutant_unitaries)
      next = pinch_by_unitary(next, k);
    const double delta = (next.mat() - cur.mat()).max_abs();
    cur = std::move(next);
    if (delta <= 1e-14 * scale) break;
  }
  return cur;
}

ChoiOperator average_map(const ChoiOperator& t,
                         const std::vector<Matrix>& rep_in,
                         const std::vector<Matrix>& rep_out) {
  EquivarianceConstraints eq =
      equivariance_constraints_from_group(rep_in, rep_out);
  ChoiOperator out = t;
  out.j = twirl(t.j, eq.commutant_unitaries);
  return out;
}

namespace {

// orthonormal basis of Herm(n), fixed deterministic order
std::vector<Matrix> std_hermitian_basis(std::size_t n) {
  const double isq2 = 1.0 / std::sqrt(2.0);
  std::vector<Matrix> basis;
  basis.reserve(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    Matrix e(n, n);
    e(k, k) = 1.0;
    basis.push_back(std::move(e));
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      Matrix re(n, n), im(n, n);
      re(k, l) = isq2;
      re(l, k) = isq2;
      im(k, l) = cplx{0.0, isq2};
      im(l, k) = cplx{0.0, -isq2};
      basis.push_back(std::move(re));
      basis.push_back(std::move(im));
    }
  return basis;
}

std::vector<Matrix> equivariant_basis(std::size_t n,
                                      const EquivarianceConstraints& eq) {
  std::vector<Matrix> raw = std_hermitian_basis(n);
  if (eq.empty()) return raw;
  std::vector<Matrix> kept;
  for (auto& cand : raw) {
    Matrix v = project_equivariant(hermitian_unchecked(std::move(cand)), eq).mat();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& k : kept) {
        const cplx ip = hs_inner(k, v);
        v -= ip * k;
      }
    }
    const double norm = v.frobenius_norm();
    if (norm > 1e-8) {
      v *= cplx{1.0 / norm, 0.0};
      kept.push_back(std::move(v));
    }
  }
  return kept;
}

struct ProblemBlocks {
  sdp::Problem problem;
  std::vector<Matrix> basis;
  std::size_t n = 0;
};

// Assembles the max-slack LMI. For every block the t-variable contributes
// -I; the layout is [ J | trace (1 or 2) | per-x (1 or 2) | per-y | gibbs ].
ProblemBlocks build_problem(const FamilyPair& p, const FamilyPair& q,
                            const FeasibilityOptions& options,
                            bool exact_transform) {
  if (p.X_labels != q.X_labels || p.Y_labels != q.Y_labels)
    throw LabelMismatch("feasibility: pairs must share label sets");
  if (p.is_zero() || q.is_zero())
    throw DomainError("feasibility: both pairs must have positive dimension");
  const std::size_t d_in = p.dim, d_out = q.dim;
  const std::size_t n = d_in * d_out;
  if (n > options.dimension_cap)
    throw DimensionCap("feasibility: Choi dimension " + std::to_string(n) +
                       " exceeds cap " + std::to_string(options.dimension_cap));
  if (options.gibbs_state && options.gibbs_state->dim() != d_in)
    throw DimensionMismatch("feasibility: gibbs state dimension mismatch");
  if (options.gibbs_state && d_in != d_out)
    throw DimensionMismatch("feasibility: gibbs preservation needs equal dims");

  ProblemBlocks out;
  out.n = n;
  out.basis = equivariant_basis(n, options.equivariance);
  const std::size_t mj = out.basis.size();
  const std::size_t m = mj + 1;

  auto t_of = [&](const Matrix& g, const HermitianMatrix& a) {
    return apply_choi(g, a.mat(), d_in, d_out);
  };

  std::vector<Matrix> f0_blocks;
  std::vector<std::vector<Matrix>> fi_blocks(m);

  auto push_block = [&](Matrix f0_part,
                        const std::function<Matrix(const Matrix&)>& fi_part,
                        std::size_t dim) {
    f0_blocks.push_back(std::move(f0_part));
    for (std::size_t i = 0; i < mj; ++i)
      fi_blocks[i].push_back(fi_part(out.basis[i]));
    fi_blocks[mj].push_back(cplx{-1.0, 0.0} * Matrix::identity(dim));
  };

  // J >= tI
  push_block(Matrix(n, n), [&](const Matrix& g) { return g; }, n);

  // trace constraint
  push_block(Matrix::identity(d_in),
             [&](const Matrix& g) {
               return cplx{-1.0, 0.0} * partial_trace(g, d_in, d_out, 2);
             },
             d_in);
  if (options.trace_preserving) {
    push_block(cplx{-1.0, 0.0} * Matrix::identity(d_in),
               [&](const Matrix& g) { return partial_trace(g, d_in, d_out, 2); },
               d_in);
  }

  for (std::size_t x = 0; x < p.rho.size(); ++x) {
    push_block(cplx{-1.0, 0.0} * q.rho[x].mat(),
               [&](const Matrix& g) { return t_of(g, p.rho[x]); }, d_out);
    if (exact_transform)
      push_block(q.rho[x].mat(),
                 [&](const Matrix& g) {
                   return cplx{-1.0, 0.0} * t_of(g, p.rho[x]);
                 },
                 d_out);
  }

  if (!exact_transform) {
    for (std::size_t y = 0; y < p.sigma.size(); ++y)
      push_block(q.sigma[y].mat(),
                 [&](const Matrix& g) {
                   return cplx{-1.0, 0.0} * t_of(g, p.sigma[y]);
                 },
                 d_out);
  }

  if (options.gibbs_state) {
    const HermitianMatrix& tau = *options.gibbs_state;
    push_block(cplx{-1.0, 0.0} * tau.mat(),
               [&](const Matrix& g) { return t_of(g, tau); }, d_out);
    push_block(tau.mat(),
               [&](const Matrix& g) {
                 return cplx{-1.0, 0.0} * t_of(g, tau);
               },
               d_out);
  }

  out.problem.f0.blocks = std::move(f0_blocks);
  out.problem.fs.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    out.problem.fs[i].blocks = std::move(fi_blocks[i]);
  out.problem.b.assign(m, 0.0);
  out.problem.b[mj] = 1.0;  // maximize t
  return out;
}

Feasibility classify(double slack, double tol) {
  if (slack >= -tol) return Feasibility::Feasible;
  if (slack < -10.0 * tol) return Feasibility::Infeasible;
  return Feasibility::Marginal;
}

bool verify_certificate(const ChoiOperator& cert, const FamilyPair& p,
                        const FamilyPair& q, const FeasibilityOptions& options,
                        bool exact_transform, double tol) {
  if (min_eig(cert.j) < -tol) return false;
  const HermitianMatrix tr = cert.trace_out();
  const HermitianMatrix id_in = HermitianMatrix::identity(cert.dim_in);
  if (!loewner_geq(id_in, tr, tol)) return false;
  if (options.trace_preserving && !loewner_geq(tr, id_in, tol)) return false;
  for (std::size_t x = 0; x < p.rho.size(); ++x) {
    const HermitianMatrix mapped = cert.apply(p.rho[x]);
    if (!loewner_geq(mapped, q.rho[x], tol)) return false;
    if (exact_transform && !loewner_geq(q.rho[x], mapped, tol)) return false;
  }
  if (!exact_transform) {
    for (std::size_t y = 0; y < p.sigma.size(); ++y)
      if (!loewner_geq(q.sigma[y], cert.apply(p.sigma[y]), tol)) return false;
  }
  if (options.gibbs_state) {
    const HermitianMatrix mapped = cert.apply(*options.gibbs_state);
    if (!loewner_geq(mapped, *options.gibbs_state, tol)) return false;
    if (!loewner_geq(*options.gibbs_state, mapped, tol)) return false;
  }
  for (const auto& k : options.equivariance.commutant_unitaries)
    if ((cert.j.mat() * k - k * cert.j.mat()).max_abs() >
        tol * std::max(1.0, cert.j.max_abs()))
      return false;
  for (const auto& gen : options.equivariance.commutant_generators)
    if ((cert.j.mat() * gen.mat() - gen.mat() * cert.j.mat()).max_abs() >
        tol * std::max(1.0, cert.j.max_abs()) * std::max(1.0, gen.max_abs()))
      return false;
  return true;
}

void attach_witness(FeasibilityReport& report, const FamilyPair& p,
                    const FamilyPair& q, const FeasibilityOptions& options,
                    bool exact_transform) {
  if (!options.attach_violating_monotone ||
      report.status != Feasibility::Infeasible)
    return;
  try {
    SweepGrid grid;
    grid.gamma_resolution = 4;
    if (exact_transform) {
      // the exact decision constrains only the rho families; sweep the
      // (rho, rho) encoding they induce
      const FamilyPair pp =
          FamilyPair::create(p.X_labels, p.X_labels, p.rho, p.rho);
      const FamilyPair qq =
          FamilyPair::create(q.X_labels, q.X_labels, q.rho, q.rho);
      report.violated_monotone = find_best_violation(pp, qq, grid);
    } else {
      report.violated_monotone = find_best_violation(p, q, grid);
    }
  } catch (const Error&) {
    // witness search is best effort only
  }
}

FeasibilityReport decide_sdp(const FamilyPair& p, const FamilyPair& q,
                             const FeasibilityOptions& options,
                             bool exact_transform) {
  ProblemBlocks pb = build_problem(p, q, options, exact_transform);

  sdp::Options sopts;
  sopts.max_iterations = options.max_iterations;
  sdp::Solution sol = sdp::solve(pb.problem, sopts);
  if (!sol.converged &&
      (sol.mu > 1e-9 || sol.primal_residual > 1e-5 || sol.dual_residual > 1e-7)) {
    char diag[160];
    std::snprintf(diag, sizeof(diag),
                  "interior-point did not converge: mu=%.3e pres=%.3e dres=%.3e "
                  "after %d iterations",
                  sol.mu, sol.primal_residual, sol.dual_residual, sol.iterations);
    throw SolverStall(diag);
  }

  FeasibilityReport report;
  report.slack = sol.objective;
  report.iterations = sol.iterations;
  report.status = classify(report.slack, options.tol_feas);

  if (report.status == Feasibility::Feasible) {
    Matrix j(pb.n, pb.n);
    for (std::size_t i = 0; i < pb.basis.size(); ++i)
      j += cplx{sol.y[i], 0.0} * pb.basis[i];
    ChoiOperator cert;
    cert.dim_in = p.dim;
    cert.dim_out = q.dim;
    cert.trace_preserving = options.trace_preserving;
    cert.j = hermitian_unchecked(std::move(j));
    report.certificate_verified =
        verify_certificate(cert, p, q, options, exact_transform, 1e-6);
    report.certificate = std::move(cert);
    if (!report.certificate_verified) report.status = Feasibility::Marginal;
  }
  attach_witness(report, p, q, options, exact_transform);
  return report;
}

}  // namespace

FeasibilityReport decide_submajorization(const FamilyPair& p,
                                         const FamilyPair& q,
                                         const FeasibilityOptions& options) {
  return decide_sdp(p, q, options, false);
}

FeasibilityReport decide_exact_transform(const FamilyPair& p,
                                         const FamilyPair& q,
                                         const FeasibilityOptions& options) {
  return decide_sdp(p, q, options, true);
}

FeasibilityReport decide_submajorization_classical(
    const FamilyPair& p, const FamilyPair& q,
    const FeasibilityOptions& options) {
  if (p.X_labels != q.X_labels || p.Y_labels != q.Y_labels)
    throw LabelMismatch("feasibility: pairs must share label sets");
  if (p.is_zero() || q.is_zero())
    throw DomainError("feasibility: both pairs must have positive dimension");
  if (!is_classical(p) || !is_classical(q))
    throw NotClassical("classical fast path requires commuting families");

  const ClassicalVectors cp = classical_vectors(p);
  const ClassicalVectors cq = classical_vectors(q);
  const std::size_t d = p.dim, dq = q.dim;
  const std::size_t nx = p.X_labels.size(), ny = p.Y_labels.size();

  // variables: T entries (dq x d), then t+ and t-
  const std::size_t nt = dq * d;
  const std::size_t nvars = nt + 2;
  auto tvar = [&](std::size_t i, std::size_t j) { return i * d + j; };

  std::vector<std::vector<double>> a;
  std::vector<double> b;
  auto add_row = [&](std::vector<double> row, double rhs) {
    row[nt] = 1.0;       // +t
    row[nt + 1] = -1.0;  // -t
    a.push_back(std::move(row));
    b.push_back(rhs);
  };

  for (std::size_t j = 0; j < d; ++j) {  // column sums: 1 - sum_i T_ij >= t
    std::vector<double> row(nvars, 0.0);
    for (std::size_t i = 0; i < dq; ++i) row[tvar(i, j)] = 1.0;
    add_row(std::move(row), 1.0);
  }
  for (std::size_t x = 0; x < nx; ++x)  // (T p)(x)_i - p'_i(x) >= t
    for (std::size_t i = 0; i < dq; ++i) {
      std::vector<double> row(nvars, 0.0);
      for (std::size_t j = 0; j < d; ++j) row[tvar(i, j)] = -cp.p[j][x];
      add_row(std::move(row), -cq.p[i][x]);
    }
  for (std::size_t y = 0; y < ny; ++y)  // q'_i(y) - (T q)(y)_i >= t
    for (std::size_t i = 0; i < dq; ++i) {
      std::vector<double> row(nvars, 0.0);
      for (std::size_t j = 0; j < d; ++j) row[tvar(i, j)] = cp.q[j][y];
      add_row(std::move(row), cq.q[i][y]);
    }
  for (std::size_t i = 0; i < dq; ++i)  // T_ij >= t
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<double> row(nvars, 0.0);
      row[tvar(i, j)] = -1.0;
      add_row(std::move(row), 0.0);
    }

  std::vector<double> c(nvars, 0.0);
  c[nt] = 1.0;
  c[nt + 1] = -1.0;
  lp::Result res = lp::solve(a, b, c);
  if (!res.feasible || !res.bounded)
    throw SolverStall("classical LP unexpectedly unbounded or infeasible");

  FeasibilityReport report;
  report.slack = res.objective;
  report.status = classify(report.slack, options.tol_feas);
  report.iterations = 0;

  if (report.status == Feasibility::Feasible) {
    // assemble the Choi certificate in the original (non-diagonal) bases
    std::vector<HermitianMatrix> all_p;
    for (const auto& m : p.rho) all_p.push_back(m);
    for (const auto& m : p.sigma) all_p.push_back(m);
    const Matrix up = simultaneous_eigenbasis(all_p);
    std::vector<HermitianMatrix> all_q;
    for (const auto& m : q.rho) all_q.push_back(m);
    for (const auto& m : q.sigma) all_q.push_back(m);
    const Matrix uq = simultaneous_eigenbasis(all_q);

    Matrix jdiag(d * dq, d * dq);
    for (std::size_t i = 0; i < dq; ++i)
      for (std::size_t j = 0; j < d; ++j)
        jdiag(j * dq + i, j * dq + i) = std::max(0.0, res.x[tvar(i, j)]);
    const Matrix k = kron(up.conjugate(), uq);
    ChoiOperator cert;
    cert.dim_in = d;
    cert.dim_out = dq;
    cert.j = hermitian_unchecked(k * jdiag * k.adjoint());
    report.certificate_verified =
        verify_certificate(cert, p, q, options, false, 1e-6);
    report.certificate = std::move(cert);
    if (!report.certificate_verified) report.status = Feasibility::Marginal;
  }
  attach_witness(report, p, q, options, false);
  return report;
}

std::string FeasibilityReport::describe() const {
  std::ostringstream os;
  switch (status) {
    case Feasibility::Feasible: os << "Feasible"; break;
    case Feasibility::Infeasible: os << "Infeasible"; break;
    case Feasibility::Marginal: os << "Marginal"; break;
  }
  os << " (slack t* = " << slack << ")";
  if (certificate) os << (certificate_verified ? " certificate verified" : "");
  if (violated_monotone)
    os << "; violated monotone: " << violated_monotone->point.describe()
       << " margin " << violated_monotone->margin;
  return os.str();
}

}  // namespace submaj
