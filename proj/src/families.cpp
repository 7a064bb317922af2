#include "submaj/families.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "submaj/errors.hpp"

namespace submaj {

namespace {

void check_labels_match(const FamilyPair& p, const FamilyPair& q) {
  if (p.X_labels != q.X_labels || p.Y_labels != q.Y_labels)
    throw LabelMismatch("family pairs must share X and Y label sets");
}

std::size_t index_of(const std::vector<std::string>& labels,
                     const std::string& label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw LabelMismatch("unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

FamilyPair FamilyPair::create(std::vector<std::string> x_labels,
                              std::vector<std::string> y_labels,
                              std::vector<HermitianMatrix> rho,
                              std::vector<HermitianMatrix> sigma,
                              double tol_psd) {
  if (x_labels.empty() || y_labels.empty())
    throw LabelMismatch("label sets must be nonempty");
  FamilyPair p;
  p.X_labels = std::move(x_labels);
  p.Y_labels = std::move(y_labels);
  p.rho = std::move(rho);
  p.sigma = std::move(sigma);
  if (p.rho.empty() && p.sigma.empty()) return p;  // the zero element
  if (p.rho.size() != p.X_labels.size() || p.sigma.size() != p.Y_labels.size())
    throw LengthMismatch("family sizes must match their label sets");
  p.dim = p.rho.front().dim();
  for (const auto& m : p.rho)
    if (m.dim() != p.dim) throw DimensionMismatch("mixed dimensions in rho");
  for (const auto& m : p.sigma)
    if (m.dim() != p.dim) throw DimensionMismatch("mixed dimensions in sigma");
  if (p.dim == 0) throw DomainError("zero-dimensional members; use zero()");
  for (const auto& m : p.rho)
    if (min_eig(m) <= tol_psd)
      throw DomainError("rho member not strictly positive definite (min eig " +
                        std::to_string(min_eig(m)) + ")");
  for (const auto& m : p.sigma)
    if (min_eig(m) <= tol_psd)
      throw DomainError("sigma member not strictly positive definite (min eig " +
                        std::to_string(min_eig(m)) + ")");
  return p;
}

FamilyPair FamilyPair::zero(std::vector<std::string> x_labels,
                            std::vector<std::string> y_labels) {
  FamilyPair p;
  p.X_labels = std::move(x_labels);
  p.Y_labels = std::move(y_labels);
  return p;
}

FamilyPair FamilyPair::one(std::vector<std::string> x_labels,
                           std::vector<std::string> y_labels) {
  return power_universal(0, std::move(x_labels), std::move(y_labels));
}

const HermitianMatrix& FamilyPair::rho_at(const std::string& label) const {
  return rho[index_of(X_labels, label)];
}

const HermitianMatrix& FamilyPair::sigma_at(const std::string& label) const {
  return sigma[index_of(Y_labels, label)];
}

FamilyPair add(const FamilyPair& p, const FamilyPair& q) {
  check_labels_match(p, q);
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  FamilyPair r;
  r.X_labels = p.X_labels;
  r.Y_labels = p.Y_labels;
  r.dim = p.dim + q.dim;
  for (std::size_t i = 0; i < p.rho.size(); ++i)
    r.rho.push_back(dsum(p.rho[i], q.rho[i]));
  for (std::size_t i = 0; i < p.sigma.size(); ++i)
    r.sigma.push_back(dsum(p.sigma[i], q.sigma[i]));
  return r;
}

FamilyPair mul(const FamilyPair& p, const FamilyPair& q) {
  check_labels_match(p, q);
  if (p.is_zero() || q.is_zero()) return FamilyPair::zero(p.X_labels, p.Y_labels);
  FamilyPair r;
  r.X_labels = p.X_labels;
  r.Y_labels = p.Y_labels;
  r.dim = p.dim * q.dim;
  for (std::size_t i = 0; i < p.rho.size(); ++i)
    r.rho.push_back(kron(p.rho[i], q.rho[i]));
  for (std::size_t i = 0; i < p.sigma.size(); ++i)
    r.sigma.push_back(kron(p.sigma[i], q.sigma[i]));
  return r;
}

FamilyPair power_universal(unsigned k, std::vector<std::string> x_labels,
                           std::vector<std::string> y_labels) {
  const double v = std::pow(2.0, static_cast<double>(k));
  FamilyPair p;
  p.dim = 1;
  p.X_labels = std::move(x_labels);
  p.Y_labels = std::move(y_labels);
  p.rho.assign(p.X_labels.size(), HermitianMatrix::scalar(v));
  p.sigma.assign(p.Y_labels.size(), HermitianMatrix::scalar(1.0));
  return p;
}

bool is_classical(const FamilyPair& p, double tol) {
  if (p.dim <= 1) return true;
  std::vector<const HermitianMatrix*> all;
  for (const auto& m : p.rho) all.push_back(&m);
  for (const auto& m : p.sigma) all.push_back(&m);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (commutator_norm(*all[i], *all[j]) > tol) return false;
  return true;
}

FamilyPair orbit_family(const std::vector<Matrix>& rep,
                        const HermitianMatrix& rho0,
                        const HermitianMatrix& sigma0,
                        std::vector<std::string> labels) {
  if (rep.empty()) throw LengthMismatch("orbit_family: empty group list");
  if (labels.empty()) {
    for (std::size_t g = 0; g < rep.size(); ++g)
      labels.push_back("g" + std::to_string(g));
  } else if (labels.size() != rep.size()) {
    throw LengthMismatch("orbit_family: labels vs group size");
  }
  const std::size_t d = rho0.dim();
  for (const auto& u : rep) {
    if (u.rows() != d || u.cols() != d)
      throw DimensionMismatch("orbit_family: representation dimension mismatch");
    if ((u * u.adjoint() - Matrix::identity(d)).max_abs() > 1e-10)
      throw NotUnitary("orbit_family: group element is not unitary within 1e-10");
  }
  std::vector<HermitianMatrix> rho, sigma;
  for (const auto& u : rep) {
    rho.push_back(rho0.conjugate_by(u));
    sigma.push_back(sigma0.conjugate_by(u));
  }
  return FamilyPair::create(labels, labels, std::move(rho), std::move(sigma));
}

HermitianMatrix perturb(const HermitianMatrix& m, double eps,
                        const HermitianMatrix& tau) {
  return (1.0 - eps) * m + eps * tau;
}

FamilyPair perturb_full_rank(const FamilyPair& p, double eps) {
  if (p.is_zero()) return p;
  const HermitianMatrix mixed =
      (1.0 / static_cast<double>(p.dim)) * HermitianMatrix::identity(p.dim);
  FamilyPair r = p;
  for (auto& m : r.rho) m = perturb(m, eps, mixed);
  for (auto& m : r.sigma) m = perturb(m, eps, mixed);
  return r;
}

PowerUniversalWitness power_universal_witness(const FamilyPair& p) {
  if (p.is_zero())
    throw DomainError("power_universal_witness: zero element");
  const double d = static_cast<double>(p.dim);

  double max_tr_sigma = 0.0, min_eig_sigma = 1e300;
  for (const auto& s : p.sigma) {
    max_tr_sigma = std::max(max_tr_sigma, s.trace());
    min_eig_sigma = std::min(min_eig_sigma, min_eig(s));
  }
  double max_norm_rho = 0.0, min_tr_rho = 1e300;
  for (const auto& r : p.rho) {
    max_norm_rho = std::max(max_norm_rho, op_norm(r));
    min_tr_rho = std::min(min_tr_rho, r.trace());
  }

  const double c1 = std::min(1.0, 1.0 / max_tr_sigma);
  const double c2 = std::min(1.0, d * min_eig_sigma);

  // smallest k with 2^k c2 / d >= max ||rho||
  const double k_dom = std::log2(d * max_norm_rho / c2);
  // smallest k with c1 2^k min Tr rho >= 1
  const double k_inv = std::log2(1.0 / (c1 * min_tr_rho));

  PowerUniversalWitness w;
  w.k_dominates = static_cast<unsigned>(std::max(0.0, std::ceil(k_dom)));
  w.k_inverse = static_cast<unsigned>(std::max(0.0, std::ceil(k_inv)));
  w.c1 = c1;
  w.c2 = c2;
  return w;
}

ClassicalVectors classical_vectors(const FamilyPair& pair, double tol) {
  if (pair.is_zero()) return ClassicalVectors{};
  if (!is_classical(pair, tol))
    throw NotClassical("family pair members do not commute within tolerance");
  std::vector<HermitianMatrix> all;
  for (const auto& m : pair.rho) all.push_back(m);
  for (const auto& m : pair.sigma) all.push_back(m);
  const Matrix u = simultaneous_eigenbasis(all, tol);

  ClassicalVectors cv;
  cv.p.assign(pair.dim, std::vector<double>(pair.X_labels.size()));
  cv.q.assign(pair.dim, std::vector<double>(pair.Y_labels.size()));
  for (std::size_t x = 0; x < pair.rho.size(); ++x) {
    Matrix b = u.adjoint() * pair.rho[x].mat() * u;
    for (std::size_t i = 0; i < pair.dim; ++i) cv.p[i][x] = b(i, i).real();
  }
  for (std::size_t y = 0; y < pair.sigma.size(); ++y) {
    Matrix b = u.adjoint() * pair.sigma[y].mat() * u;
    for (std::size_t i = 0; i < pair.dim; ++i) cv.q[i][y] = b(i, i).real();
  }
  return cv;
}

}  // namespace submaj
