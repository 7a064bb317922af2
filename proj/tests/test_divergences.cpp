#include "submaj/divergences.hpp"

#include <cmath>
#include <limits>

#include "doctest.h"
#include "submaj/errors.hpp"
#include "submaj/means.hpp"
#include "testutil.hpp"

using namespace submaj;
using testutil::Rng;

TEST_SUITE("divergences") {

TEST_CASE("quasientropy on density matrices and diagonal pairs") {
  Rng rng(41);
  HermitianMatrix rho = testutil::random_state(rng, 3);
  CHECK(sandwiched_quasientropy(rho, rho, 2.0) == doctest::Approx(1.0));
  CHECK(sandwiched_quasientropy(rho, rho, 1.0) == doctest::Approx(1.0));

  // hand evaluation of the commuting formula
  auto p = HermitianMatrix::diagonal({0.5, 0.5});
  auto q = HermitianMatrix::diagonal({0.25, 0.75});
  CHECK(sandwiched_quasientropy(p, q, 2.0) == doctest::Approx(4.0 / 3.0));

  // generic diagonal reduction against the classical oracle
  std::vector<double> pv{0.3, 0.2, 0.4}, qv{0.5, 0.1, 0.4};
  for (double alpha : {1.5, 2.0, 3.0}) {
    CHECK(sandwiched_quasientropy(HermitianMatrix::diagonal(pv),
                                  HermitianMatrix::diagonal(qv), alpha) ==
          doctest::Approx(testutil::classical_quasientropy(pv, qv, alpha))
              .epsilon(1e-12));
  }
}

TEST_CASE("sandwiched divergence examples and additivity") {
  auto p = HermitianMatrix::diagonal({0.5, 0.5});
  auto q = HermitianMatrix::diagonal({0.25, 0.75});
  CHECK(sandwiched_divergence(p, q, 2.0) ==
        doctest::Approx(std::log2(4.0 / 3.0)));

  Rng rng(42);
  HermitianMatrix rho = testutil::random_state(rng, 2);
  HermitianMatrix sig = testutil::random_state(rng, 2);
  CHECK(sandwiched_divergence(rho, rho, 2.5) == doctest::Approx(0.0).epsilon(1e-10));

  const double single = sandwiched_divergence(rho, sig, 2.0);
  const double doubled =
      sandwiched_divergence(kron(rho, rho), kron(sig, sig), 2.0);
  CHECK(doubled == doctest::Approx(2.0 * single).epsilon(1e-9));

  CHECK_THROWS_AS(sandwiched_divergence(rho, sig, 0.5), AlphaOutOfRange);
}

TEST_CASE("additivity across independent pairs") {
  Rng rng(43);
  for (double alpha : {1.5, 2.0, 3.0}) {
    HermitianMatrix r1 = testutil::random_pd(rng, 2), r2 = testutil::random_pd(rng, 3);
    HermitianMatrix s1 = testutil::random_pd(rng, 2), s2 = testutil::random_pd(rng, 3);
    const double joint = sandwiched_divergence(kron(r1, r2), kron(s1, s2), alpha);
    const double split = sandwiched_divergence(r1, s1, alpha) +
                         sandwiched_divergence(r2, s2, alpha);
    CHECK(std::abs(joint - split) < 1e-7);
  }
}

TEST_CASE("umegaki limit at alpha 1 matches the classical formula") {
  std::vector<double> pv{0.6, 0.4}, qv{0.3, 0.7};
  double expected = 0.0;
  for (int i = 0; i < 2; ++i)
    expected += pv[i] * (std::log2(pv[i]) - std::log2(qv[i]));
  CHECK(sandwiched_divergence(HermitianMatrix::diagonal(pv),
                              HermitianMatrix::diagonal(qv), 1.0) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("max divergence examples") {
  auto p = HermitianMatrix::diagonal({0.5, 0.5});
  auto q = HermitianMatrix::diagonal({0.25, 0.75});
  CHECK(max_divergence(p, q) == doctest::Approx(1.0));  // max(2, 2/3) = 2
  Rng rng(44);
  HermitianMatrix rho = testutil::random_pd(rng, 3);
  CHECK(max_divergence(rho, rho) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(max_divergence(2.0 * rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
  // characterization: smallest 2^lambda with 2^lambda sigma >= rho
  const double lam = max_divergence(p, q);
  CHECK(loewner_geq(std::pow(2.0, lam) * q, p, 1e-9));
  CHECK_FALSE(loewner_geq(std::pow(2.0, lam - 0.01) * q, p, 1e-9));
}

TEST_CASE("thompson metric properties") {
  Rng rng(45);
  HermitianMatrix rho = testutil::random_pd(rng, 3);
  CHECK(thompson_metric(rho, rho) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(thompson_metric(2.0 * rho, rho) == doctest::Approx(1.0).epsilon(1e-10));

  // additivity on tensor powers
  HermitianMatrix sig = testutil::random_pd(rng, 3);
  const double d1 = thompson_metric(rho, sig);
  CHECK(thompson_metric(kron(rho, rho), kron(sig, sig)) ==
        doctest::Approx(2.0 * d1).epsilon(1e-9));

  // symmetry + triangle inequality on random triples
  for (int trial = 0; trial < 20; ++trial) {
    HermitianMatrix a = testutil::random_pd(rng, 3);
    HermitianMatrix b = testutil::random_pd(rng, 3);
    HermitianMatrix c = testutil::random_pd(rng, 3);
    const double ab = thompson_metric(a, b);
    const double ba = thompson_metric(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    CHECK(ab <= thompson_metric(a, c) + thompson_metric(c, b) + 1e-9);
  }
}

TEST_CASE("divergence detection on singular second argument") {
  const double inf = std::numeric_limits<double>::infinity();
  auto sigma = HermitianMatrix::diagonal({1.0, 0.0});
  auto rho_out = HermitianMatrix::diagonal({0.5, 0.5});
  auto rho_in = HermitianMatrix::diagonal({1.0, 0.0});
  CHECK(sandwiched_quasientropy(rho_out, sigma, 2.0) == inf);
  CHECK(sandwiched_divergence(rho_out, sigma, 2.0) == inf);
  CHECK(max_divergence(rho_out, sigma) == inf);
  CHECK(sandwiched_quasientropy(rho_in, sigma, 2.0) == doctest::Approx(1.0));
  // indefinite sigma is an error, not a divergence
  CHECK_THROWS_AS(
      sandwiched_quasientropy(rho_in, HermitianMatrix::diagonal({1.0, -0.5}), 2.0),
      DomainError);
}

TEST_CASE("two-parameter family: gamma 0 reduction and commuting reduction") {
  Rng rng(46);
  HermitianMatrix rho = testutil::random_state(rng, 3);
  HermitianMatrix sig = testutil::random_state(rng, 3);
  for (double alpha : {1.5, 2.0, 3.0}) {
    CHECK(std::abs(sandwiched_geometric_divergence(rho, sig, alpha, 0.0) -
                   sandwiched_divergence(rho, sig, alpha)) < 1e-9);
  }

  // commuting arguments: classical Renyi divergence of order alpha
  std::vector<double> pv{0.5, 0.3, 0.2}, qv{0.25, 0.25, 0.5};
  for (double alpha : {1.5, 2.0, 3.0})
    for (double gamma : {0.25, 0.5, 0.75}) {
      const double got = sandwiched_geometric_divergence(
          HermitianMatrix::diagonal(pv), HermitianMatrix::diagonal(qv), alpha,
          gamma);
      CHECK(std::abs(got - testutil::classical_renyi_bits(pv, qv, alpha)) < 1e-9);
    }

  // rho = sigma gives 0
  for (double gamma : {0.0, 0.25, 0.75})
    CHECK(sandwiched_geometric_divergence(rho, rho, 2.0, gamma) ==
          doctest::Approx(0.0).epsilon(1e-9));

  CHECK_THROWS_AS(sandwiched_geometric_divergence(rho, sig, 2.0, 1.0),
                  GammaOutOfRange);
  CHECK_THROWS_AS(sandwiched_geometric_divergence(rho, sig, 1.0, 0.5),
                  AlphaOutOfRange);
}

TEST_CASE("data processing inequality for both families") {
  Rng rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    auto chan = testutil::random_cptp(rng, 2, 2, 2);
    HermitianMatrix rho = 0.9 * testutil::random_state(rng, 2);  // Tr <= 1
    HermitianMatrix sig = testutil::random_pd(rng, 2, 0.2);
    HermitianMatrix frho = chan.apply(rho);
    HermitianMatrix fsig = chan.apply(sig);
    for (double alpha : {1.5, 2.0, 3.0}) {
      CHECK(sandwiched_divergence(frho, fsig, alpha) <=
            sandwiched_divergence(rho, sig, alpha) + 1e-7);
      for (double gamma : {0.25, 0.5, 0.75}) {
        CHECK(sandwiched_geometric_divergence(frho, fsig, alpha, gamma) <=
              sandwiched_geometric_divergence(rho, sig, alpha, gamma) + 1e-7);
      }
    }
  }
}

TEST_CASE("antitone in the second argument") {
  Rng rng(48);
  for (int trial = 0; trial < 15; ++trial) {
    HermitianMatrix rho = testutil::random_state(rng, 3);
    HermitianMatrix sig = testutil::random_pd(rng, 3, 0.2);
    HermitianMatrix bigger = sig + testutil::random_pd(rng, 3, 0.0);
    for (double alpha : {1.5, 2.0}) {
      CHECK(sandwiched_divergence(rho, bigger, alpha) <=
            sandwiched_divergence(rho, sig, alpha) + 1e-7);
      CHECK(sandwiched_geometric_divergence(rho, bigger, alpha, 0.5) <=
            sandwiched_geometric_divergence(rho, sig, alpha, 0.5) + 1e-7);
    }
  }
}

TEST_CASE("alpha ordering on commuting instances") {
  Rng rng(49);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<double> pv(3), qv(3);
    double ps = 0.0, qs = 0.0;
    for (int i = 0; i < 3; ++i) {
      pv[i] = u(rng);
      qv[i] = u(rng);
      ps += pv[i];
      qs += qv[i];
    }
    for (int i = 0; i < 3; ++i) {
      pv[i] /= ps;
      qv[i] /= qs;
    }
    auto p = HermitianMatrix::diagonal(pv);
    auto q = HermitianMatrix::diagonal(qv);
    double prev = -1e300;
    for (double alpha : {1.0, 1.25, 1.5, 2.0, 3.0, 5.0}) {
      const double cur = sandwiched_divergence(p, q, alpha);
      CHECK(cur >= prev - 1e-9);
      prev = cur;
    }
  }
}

}  // TEST_SUITE
