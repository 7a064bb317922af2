#include "submaj/linalg.hpp"

#include <cmath>

#include "doctest.h"
#include "submaj/errors.hpp"
#include "testutil.hpp"

using namespace submaj;
using testutil::Rng;

TEST_SUITE("linalg") {

TEST_CASE("eig on diagonal and identity inputs") {
  auto ed = eig(HermitianMatrix::diagonal({3.0, 1.0}));
  CHECK(ed.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(ed.eigenvalues[1] == doctest::Approx(3.0));
  // eigenvectors are a permutation of the identity
  CHECK(std::abs(ed.eigenvectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(ed.eigenvectors(0, 1)) == doctest::Approx(1.0));

  auto id = eig(HermitianMatrix::identity(5));
  for (double v : id.eigenvalues) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("eig of Pauli X gives (-1, 1)") {
  Matrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  auto ed = eig(HermitianMatrix(std::move(x)));
  CHECK(ed.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(ed.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(op_norm(hermitian_unchecked([&] {
          Matrix m(2, 2);
          m(0, 1) = 1.0;
          m(1, 0) = 1.0;
          return m;
        }())) == doctest::Approx(1.0));
}

TEST_CASE("eig reconstruction and unitarity on random Hermitian") {
  Rng rng(11);
  for (std::size_t d = 1; d <= 8; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      HermitianMatrix a = testutil::random_hermitian(rng, d);
      auto ed = eig(a);
      Matrix lam(d, d);
      for (std::size_t i = 0; i < d; ++i) lam(i, i) = ed.eigenvalues[i];
      Matrix rec = ed.eigenvectors * lam * ed.eigenvectors.adjoint();
      const double scale = std::max(1e-30, a.max_abs());
      CHECK((rec - a.mat()).max_abs() <= 1e-8 * scale);
      Matrix gram = ed.eigenvectors.adjoint() * ed.eigenvectors;
      CHECK((gram - Matrix::identity(d)).max_abs() <= 1e-10);
      // ascending
      for (std::size_t i = 0; i + 1 < d; ++i)
        CHECK(ed.eigenvalues[i] <= ed.eigenvalues[i + 1]);
    }
  }
}

TEST_CASE("eig is deterministic") {
  Rng rng(12);
  HermitianMatrix a = testutil::random_hermitian(rng, 6);
  auto e1 = eig(a);
  auto e2 = eig(a);
  CHECK((e1.eigenvectors - e2.eigenvectors).max_abs() == 0.0);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(e1.eigenvalues[i] == e2.eigenvalues[i]);
}

TEST_CASE("non-hermitian input is rejected") {
  Matrix m(2, 2);
  m(0, 1) = 1.0;  // m(1,0) = 0: not symmetric
  CHECK_THROWS_AS(HermitianMatrix{m}, NotHermitian);
}

TEST_CASE("mat_fn basics") {
  CHECK((mat_sqrt(HermitianMatrix::diagonal({4.0, 9.0})).mat() -
         HermitianMatrix::diagonal({2.0, 3.0}).mat())
            .max_abs() < 1e-12);
  Rng rng(13);
  HermitianMatrix a = testutil::random_hermitian(rng, 4);
  CHECK((mat_fn(a, [](double x) { return x; }).mat() - a.mat()).max_abs() <
        1e-12);
  const double e = std::exp(1.0);
  auto lg = mat_log(HermitianMatrix::diagonal({e, e * e}));
  CHECK(lg(0, 0).real() == doctest::Approx(1.0));
  CHECK(lg(1, 1).real() == doctest::Approx(2.0));
}

TEST_CASE("mat_fn composition property") {
  Rng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    HermitianMatrix a = testutil::random_pd(rng, 4);
    auto viaComposed = mat_fn(a, [](double x) { return std::log(std::sqrt(x)); });
    auto viaSteps = mat_log(mat_sqrt(a));
    CHECK((viaComposed.mat() - viaSteps.mat()).max_abs() < 1e-7);

    const double nrm = op_norm(a);
    auto f1 = mat_fn(a, [&](double x) { return std::exp(x / nrm); });
    auto f2 = mat_exp(mat_fn(a, [&](double x) { return x / nrm; }));
    CHECK((f1.mat() - f2.mat()).max_abs() < 1e-7);

    auto sq = mat_fn(mat_sqrt(a), [](double x) { return x * x; });
    CHECK((sq.mat() - a.mat()).max_abs() < 1e-7 * std::max(1.0, a.max_abs()));
  }
}

TEST_CASE("mat_fn commutes with its argument") {
  Rng rng(15);
  HermitianMatrix a = testutil::random_pd(rng, 5);
  HermitianMatrix s = mat_sqrt(a);
  CHECK(commutator_norm(a, s) < 1e-8 * std::max(1.0, a.max_abs()));
}

TEST_CASE("mat_pow clamp policy") {
  HermitianMatrix tiny = HermitianMatrix::diagonal({1.0, -5e-10});
  CHECK_NOTHROW(mat_sqrt(tiny));  // clamped to 0
  CHECK(mat_sqrt(tiny)(1, 1).real() == doctest::Approx(0.0));
  CHECK_THROWS_AS(mat_log(tiny), DomainError);
  CHECK_THROWS_AS(mat_inv(tiny), DomainError);
  CHECK_THROWS_AS(mat_sqrt(HermitianMatrix::diagonal({1.0, -1.0})), DomainError);
}

TEST_CASE("loewner_geq examples") {
  CHECK(loewner_geq(HermitianMatrix::diagonal({2.0, 2.0}),
                    HermitianMatrix::identity(2), 0.0));
  CHECK_FALSE(loewner_geq(HermitianMatrix::identity(2),
                          HermitianMatrix::diagonal({2.0, 0.0}), 1e-9));
  Rng rng(16);
  HermitianMatrix a = testutil::random_hermitian(rng, 3);
  CHECK(loewner_geq(a, a, 0.0));
  CHECK_THROWS_AS(
      loewner_geq(HermitianMatrix::identity(2), HermitianMatrix::identity(3), 0.0),
      DimensionMismatch);
}

TEST_CASE("loewner order is preserved by kron with a PSD factor") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    HermitianMatrix b = testutil::random_hermitian(rng, 3);
    HermitianMatrix a = b + testutil::random_pd(rng, 3, 0.0);  // a >= b
    HermitianMatrix c = testutil::random_pd(rng, 2, 0.0);
    REQUIRE(loewner_geq(a, b, 1e-12));
    CHECK(loewner_geq(kron(a, c), kron(b, c), 1e-9));
  }
}

TEST_CASE("kron dsum partial_trace algebra") {
  auto k = kron(HermitianMatrix::diagonal({1.0, 2.0}),
                HermitianMatrix::diagonal({3.0}));
  CHECK(k.dim() == 2);
  CHECK(k(0, 0).real() == doctest::Approx(3.0));
  CHECK(k(1, 1).real() == doctest::Approx(6.0));

  auto s = dsum(HermitianMatrix::diagonal({1.0}), HermitianMatrix::diagonal({2.0}));
  CHECK(s.dim() == 2);
  CHECK(s(0, 0).real() == doctest::Approx(1.0));
  CHECK(s(1, 1).real() == doctest::Approx(2.0));

  Rng rng(18);
  HermitianMatrix a = testutil::random_hermitian(rng, 3);
  HermitianMatrix b = testutil::random_hermitian(rng, 2);
  auto traced = partial_trace(kron(a, b), 3, 2, 2);
  auto expected = b.trace() * a;
  CHECK((traced.mat() - expected.mat()).max_abs() < 1e-12);
  auto traced1 = partial_trace(kron(a, b), 3, 2, 1);
  auto expected1 = a.trace() * b;
  CHECK((traced1.mat() - expected1.mat()).max_abs() < 1e-12);
  // trace preservation
  CHECK(traced.trace() == doctest::Approx(a.trace() * b.trace()));
}

TEST_CASE("op_norm examples") {
  CHECK(op_norm(HermitianMatrix::diagonal({-3.0, 2.0})) == doctest::Approx(3.0));
  CHECK(op_norm(HermitianMatrix::identity(7)) == doctest::Approx(1.0));
}

TEST_CASE("cholesky on PD succeeds, on indefinite fails") {
  Rng rng(19);
  HermitianMatrix a = testutil::random_pd(rng, 5);
  auto l = cholesky(a);
  REQUIRE(l.has_value());
  CHECK(((*l) * l->adjoint() - a.mat()).max_abs() < 1e-10 * a.max_abs());
  CHECK_FALSE(cholesky(HermitianMatrix::diagonal({1.0, -1.0})).has_value());
}

TEST_CASE("unitary_exp produces a unitary that commutes with H") {
  Rng rng(20);
  HermitianMatrix h = testutil::random_hermitian(rng, 4);
  Matrix u = unitary_exp(h, 0.7);
  CHECK((u * u.adjoint() - Matrix::identity(4)).max_abs() < 1e-12);
  CHECK((u * h.mat() - h.mat() * u).max_abs() < 1e-11);
  // t=0 gives identity
  CHECK((unitary_exp(h, 0.0) - Matrix::identity(4)).max_abs() < 1e-12);
}

TEST_CASE("simultaneous_eigenbasis diagonalizes commuting families") {
  Rng rng(21);
  // build a commuting family: common eigenbasis, random spectra (with ties)
  Matrix u = testutil::random_unitary(rng, 5);
  std::vector<HermitianMatrix> fam;
  fam.push_back(HermitianMatrix::diagonal({1.0, 1.0, 2.0, 2.0, 3.0}).conjugate_by(u));
  fam.push_back(HermitianMatrix::diagonal({5.0, 4.0, 4.0, 1.0, 1.0}).conjugate_by(u));
  fam.push_back(HermitianMatrix::diagonal({0.5, 0.25, 0.5, 0.25, 0.5}).conjugate_by(u));
  Matrix basis = simultaneous_eigenbasis(fam);
  for (const auto& m : fam) {
    Matrix b = basis.adjoint() * m.mat() * basis;
    double off = 0.0;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j)
        if (i != j) off = std::max(off, std::abs(b(i, j)));
    CHECK(off < 1e-9);
  }
}

TEST_CASE("simultaneous_eigenbasis rejects noncommuting input") {
  std::vector<HermitianMatrix> fam;
  fam.push_back(HermitianMatrix::diagonal({1.0, 2.0}));
  Matrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  fam.push_back(HermitianMatrix(std::move(x)));
  CHECK_THROWS_AS(simultaneous_eigenbasis(fam), NotCommuting);
}

TEST_CASE("pinch basics and pinching inequality") {
  Rng rng(22);
  HermitianMatrix rho = testutil::random_pd(rng, 4);

  // single eigenspace: unchanged
  auto p0 = pinch(rho, HermitianMatrix::identity(4));
  CHECK((p0.mat() - rho.mat()).max_abs() < 1e-12);

  // nondegenerate diagonal reference: off-diagonals zeroed
  auto pd = pinch(rho, HermitianMatrix::diagonal({1.0, 2.0, 3.0, 4.0}));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(pd(i, j)) < 1e-12);

  for (int trial = 0; trial < 10; ++trial) {
    HermitianMatrix r = testutil::random_pd(rng, 4);
    HermitianMatrix sref = testutil::random_hermitian(rng, 4);
    auto pr = pinch(r, sref);
    // idempotent, trace preserving
    CHECK((pinch(pr, sref).mat() - pr.mat()).max_abs() < 1e-10);
    CHECK(pr.trace() == doctest::Approx(r.trace()).epsilon(1e-12));
    // pinching inequality rho <= |spec| * pinch(rho)
    const double nspec = static_cast<double>(spectrum_size(sref));
    CHECK(loewner_geq(nspec * pr, r, 1e-9));
  }
}

}  // TEST_SUITE
