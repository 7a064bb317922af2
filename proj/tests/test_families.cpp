#include "submaj/families.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "submaj/errors.hpp"
#include "submaj/json_io.hpp"
#include "testutil.hpp"

using namespace submaj;
using testutil::Rng;

namespace {

FamilyPair random_pair(Rng& rng, std::size_t d, std::size_t nx, std::size_t ny) {
  std::vector<std::string> xl, yl;
  for (std::size_t i = 0; i < nx; ++i) xl.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i < ny; ++i) yl.push_back("y" + std::to_string(i));
  std::vector<HermitianMatrix> rho, sigma;
  for (std::size_t i = 0; i < nx; ++i) rho.push_back(testutil::random_pd(rng, d));
  for (std::size_t i = 0; i < ny; ++i) sigma.push_back(testutil::random_pd(rng, d));
  return FamilyPair::create(xl, yl, rho, sigma);
}

// permutation matrix sending kron(A,B) indexing to kron(B,A) indexing
Matrix swap_perm(std::size_t da, std::size_t db) {
  Matrix p(da * db, da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) p(j * da + i, i * db + j) = 1.0;
  return p;
}

// permutation sending A(x)(B(+)C) indexing to (A(x)B)(+)(A(x)C) indexing
Matrix distribute_perm(std::size_t da, std::size_t db, std::size_t dc) {
  Matrix p(da * (db + dc), da * (db + dc));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db + dc; ++j) {
      const std::size_t src = i * (db + dc) + j;
      const std::size_t dst =
          j < db ? i * db + j : da * db + i * dc + (j - db);
      p(dst, src) = 1.0;
    }
  return p;
}

bool equal_up_to(const FamilyPair& a, const FamilyPair& b, const Matrix& perm,
                 double tol = 1e-10) {
  if (a.dim != b.dim) return false;
  for (std::size_t i = 0; i < a.rho.size(); ++i)
    if ((a.rho[i].conjugate_by(perm).mat() - b.rho[i].mat()).max_abs() > tol)
      return false;
  for (std::size_t i = 0; i < a.sigma.size(); ++i)
    if ((a.sigma[i].conjugate_by(perm).mat() - b.sigma[i].mat()).max_abs() > tol)
      return false;
  return true;
}

}  // namespace

TEST_SUITE("families") {

TEST_CASE("construction enforces strict positivity") {
  CHECK_THROWS_AS(FamilyPair::create({"x"}, {"y"},
                                     {HermitianMatrix::diagonal({1.0, 0.0})},
                                     {HermitianMatrix::identity(2)}),
                  DomainError);
  CHECK_THROWS_AS(FamilyPair::create({}, {"y"}, {}, {}), LabelMismatch);
  CHECK_NOTHROW(FamilyPair::create({"x"}, {"y"},
                                   {HermitianMatrix::identity(2)},
                                   {HermitianMatrix::identity(2)}));
}

TEST_CASE("semiring unit and zero laws") {
  Rng rng(51);
  FamilyPair p = random_pair(rng, 3, 2, 2);
  FamilyPair z = FamilyPair::zero(p.X_labels, p.Y_labels);
  FamilyPair e = FamilyPair::one(p.X_labels, p.Y_labels);

  FamilyPair sum = add(p, z);
  CHECK(sum.dim == p.dim);
  CHECK(equal_up_to(sum, p, Matrix::identity(p.dim)));

  FamilyPair prod = mul(p, e);
  CHECK(prod.dim == p.dim);
  CHECK(equal_up_to(prod, p, Matrix::identity(p.dim)));

  CHECK(mul(p, z).is_zero());
}

TEST_CASE("power universal scalars") {
  FamilyPair u0 = power_universal(0);
  CHECK(u0.dim == 1);
  CHECK(u0.rho[0](0, 0).real() == doctest::Approx(1.0));

  FamilyPair u3 = power_universal(3);
  CHECK(u3.rho[0](0, 0).real() == doctest::Approx(8.0));
  CHECK(u3.sigma[0](0, 0).real() == doctest::Approx(1.0));

  FamilyPair u5 = mul(power_universal(2), power_universal(3));
  CHECK(u5.rho[0](0, 0).real() == doctest::Approx(32.0));
}

TEST_CASE("mul distributes over add up to a block permutation") {
  Rng rng(52);
  for (int trial = 0; trial < 5; ++trial) {
    FamilyPair a = random_pair(rng, 2, 2, 2);
    FamilyPair b = random_pair(rng, 2, 2, 2);
    FamilyPair c = random_pair(rng, 3, 2, 2);
    FamilyPair lhs = mul(a, add(b, c));
    FamilyPair rhs = add(mul(a, b), mul(a, c));
    CHECK(equal_up_to(lhs, rhs, distribute_perm(a.dim, b.dim, c.dim)));
  }
}

TEST_CASE("add and mul are commutative up to block permutation") {
  Rng rng(53);
  FamilyPair a = random_pair(rng, 2, 2, 2);
  FamilyPair b = random_pair(rng, 3, 2, 2);

  Matrix pm = swap_perm(a.dim, b.dim);
  CHECK(equal_up_to(mul(a, b), mul(b, a), pm));

  Matrix dm(a.dim + b.dim, a.dim + b.dim);
  for (std::size_t i = 0; i < a.dim; ++i) dm(b.dim + i, i) = 1.0;
  for (std::size_t i = 0; i < b.dim; ++i) dm(i, a.dim + i) = 1.0;
  CHECK(equal_up_to(add(a, b), add(b, a), dm));
}

TEST_CASE("is_classical") {
  CHECK(is_classical(FamilyPair::create(
      {"x"}, {"y"}, {HermitianMatrix::diagonal({1.0, 2.0})},
      {HermitianMatrix::diagonal({3.0, 4.0})})));
  CHECK(is_classical(power_universal(2)));

  Matrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  HermitianMatrix pauli_x_shifted =
      hermitian_unchecked(x + Matrix::identity(2) * cplx{2.0, 0.0});
  CHECK_FALSE(is_classical(FamilyPair::create(
      {"x"}, {"y"}, {pauli_x_shifted}, {HermitianMatrix::diagonal({1.0, 2.0})})));
}

TEST_CASE("orbit families") {
  Rng rng(54);
  HermitianMatrix rho0 = testutil::random_pd(rng, 2);
  HermitianMatrix sigma0 = testutil::random_pd(rng, 2);

  // trivial representation: constant families
  std::vector<Matrix> trivial{Matrix::identity(2), Matrix::identity(2)};
  FamilyPair t = orbit_family(trivial, rho0, sigma0);
  CHECK((t.rho[0].mat() - t.rho[1].mat()).max_abs() < 1e-14);

  // Z2 via {I, X}
  Matrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  FamilyPair z2 = orbit_family({Matrix::identity(2), x},
                               HermitianMatrix::diagonal({0.9, 0.1}), sigma0);
  CHECK(z2.rho[1](0, 0).real() == doctest::Approx(0.1));
  CHECK(z2.rho[1](1, 1).real() == doctest::Approx(0.9));

  // non-unitary rep is rejected
  Matrix bad = Matrix::identity(2) * cplx{2.0, 0.0};
  CHECK_THROWS_AS(orbit_family({bad}, rho0, sigma0), NotUnitary);

  // time translation grid leaves the Gibbs family constant
  const double beta = 1.0;
  HermitianMatrix h = HermitianMatrix::diagonal({0.0, 1.0});
  HermitianMatrix gibbs = mat_exp(-beta * h);
  std::vector<Matrix> grid;
  for (int k = 0; k < 8; ++k)
    grid.push_back(unitary_exp(h, 2.0 * std::numbers::pi * k / 8.0));
  FamilyPair th = orbit_family(grid, rho0, gibbs);
  for (std::size_t g = 1; g < th.sigma.size(); ++g)
    CHECK((th.sigma[g].mat() - th.sigma[0].mat()).max_abs() < 1e-12);
}

TEST_CASE("power universality witness inequalities") {
  Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    FamilyPair p = random_pair(rng, 1 + trial % 3, 2, 2);
    auto w = power_universal_witness(p);

    // embedding map T(A) = c2 A (x) I/d applied to u^k dominates P
    const double d = static_cast<double>(p.dim);
    const double lift = std::pow(2.0, w.k_dominates) * w.c2 / d;
    for (const auto& r : p.rho)
      CHECK(loewner_geq(lift * HermitianMatrix::identity(p.dim), r, 1e-9));
    for (const auto& s : p.sigma)
      CHECK(loewner_geq(s, (w.c2 / d) * HermitianMatrix::identity(p.dim), 1e-9));

    // trace map T(A) = c1 Tr(A) applied to u^k P dominates 1
    for (const auto& r : p.rho)
      CHECK(std::pow(2.0, w.k_inverse) * w.c1 * r.trace() >= 1.0 - 1e-9);
    for (const auto& s : p.sigma) CHECK(w.c1 * s.trace() <= 1.0 + 1e-9);
  }
}

TEST_CASE("classical vectors extraction") {
  Rng rng(56);
  Matrix u = testutil::random_unitary(rng, 3);
  std::vector<double> pv{0.2, 0.5, 0.3}, qv{0.6, 0.3, 0.1};
  FamilyPair p = FamilyPair::create(
      {"x"}, {"y"}, {HermitianMatrix::diagonal(pv).conjugate_by(u)},
      {HermitianMatrix::diagonal(qv).conjugate_by(u)});
  auto cv = classical_vectors(p);
  // same multiset of (p_i, q_i) pairs regardless of basis ordering
  double sum_pq = 0.0, expect = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sum_pq += cv.p[i][0] * cv.q[i][0];
    expect += pv[i] * qv[i];
  }
  CHECK(sum_pq == doctest::Approx(expect).epsilon(1e-10));

  Matrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  FamilyPair bad = FamilyPair::create(
      {"x"}, {"y"},
      {hermitian_unchecked(x + Matrix::identity(2) * cplx{2.0, 0.0})},
      {HermitianMatrix::diagonal({1.0, 2.0})});
  CHECK_THROWS_AS(classical_vectors(bad), NotClassical);
}

TEST_CASE("perturbation helper") {
  HermitianMatrix nearly = HermitianMatrix::diagonal({1.0, 0.0});
  HermitianMatrix tau = HermitianMatrix::diagonal({0.5, 0.5});
  HermitianMatrix fixed = perturb(nearly, 0.01, tau);
  CHECK(min_eig(fixed) > 0.0);
  CHECK(fixed.trace() == doctest::Approx(1.0));
}

TEST_CASE("family json round trip") {
  Rng rng(57);
  FamilyPair p = random_pair(rng, 2, 2, 3);
  io::json j = io::family_to_json(p);
  FamilyPair q = io::family_from_json(j);
  io::json j2 = io::family_to_json(q);
  CHECK(j.dump() == j2.dump());
  CHECK(equal_up_to(p, q, Matrix::identity(p.dim), 1e-15));

  CHECK_THROWS_AS(io::parse_json("{\"dim\": oops", "bad.json"), ParseError);
  CHECK_THROWS_AS(io::family_from_json(io::parse_json("{\"X\":[\"a\"]}")),
                  ParseError);
}

TEST_CASE("mean program json round trip") {
  MeanProgram p = MeanProgram::binary("y1", "y2", 0.25);
  io::json j = io::program_to_json(p);
  MeanProgram q = io::program_from_json(j);
  CHECK(io::program_to_json(q).dump() == j.dump());
  CHECK(q.describe() == p.describe());
}

}  // TEST_SUITE
