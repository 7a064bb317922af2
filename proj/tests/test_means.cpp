#include "submaj/means.hpp"

#include <cmath>

#include "doctest.h"
#include "submaj/errors.hpp"
#include "testutil.hpp"

using namespace submaj;
using testutil::Rng;

namespace {

std::vector<HermitianMatrix> random_family(Rng& rng, std::size_t count,
                                           std::size_t d) {
  std::vector<HermitianMatrix> fam;
  for (std::size_t i = 0; i < count; ++i)
    fam.push_back(testutil::random_pd(rng, d));
  return fam;
}

MeanProgram pick_program(Rng& rng, const std::vector<std::string>& labels) {
  static const std::vector<double> gammas{0.25, 0.5, 0.75};
  auto all = enumerate_mean_programs(labels, 2, gammas);
  return all[rng() % all.size()];
}

}  // namespace

TEST_SUITE("means") {

TEST_CASE("geometric mean endpoint and idempotence identities") {
  Rng rng(31);
  HermitianMatrix a = testutil::random_pd(rng, 3);
  HermitianMatrix b = testutil::random_pd(rng, 3);
  CHECK((geometric_mean(a, a, 0.37).mat() - a.mat()).max_abs() < 1e-9);
  CHECK((geometric_mean(a, b, 0.0).mat() - a.mat()).max_abs() < 1e-12);
  CHECK((geometric_mean(a, b, 1.0).mat() - b.mat()).max_abs() < 1e-12);

  auto m = geometric_mean(HermitianMatrix::diagonal({1.0, 4.0}),
                          HermitianMatrix::diagonal({4.0, 1.0}), 0.5);
  CHECK(m(0, 0).real() == doctest::Approx(2.0));
  CHECK(m(1, 1).real() == doctest::Approx(2.0));
  CHECK(std::abs(m(0, 1)) < 1e-12);
}

TEST_CASE("geometric mean symmetry A#gB = B#(1-g)A") {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    HermitianMatrix a = testutil::random_pd(rng, 3);
    HermitianMatrix b = testutil::random_pd(rng, 3);
    const double g = 0.05 + 0.9 * (trial / 20.0);
    auto lhs = geometric_mean(a, b, g);
    auto rhs = geometric_mean(b, a, 1.0 - g);
    CHECK((lhs.mat() - rhs.mat()).max_abs() < 1e-8 * std::max(1.0, lhs.max_abs()));
  }
}

TEST_CASE("geometric mean rejects indefinite first argument") {
  CHECK_THROWS_AS(geometric_mean(HermitianMatrix::diagonal({1.0, -1.0}),
                                 HermitianMatrix::identity(2), 0.5),
                  DomainError);
  CHECK_THROWS_AS(geometric_mean(HermitianMatrix::identity(2),
                                 HermitianMatrix::identity(2), 1.5),
                  GammaOutOfRange);
}

TEST_CASE("program evaluation basics") {
  const std::vector<std::string> labels{"y1", "y2"};
  Rng rng(33);
  auto fam = random_family(rng, 2, 3);

  auto loaded = eval_mean_program(MeanProgram::load("y2"), labels, fam);
  CHECK((loaded.mat() - fam[1].mat()).max_abs() == 0.0);

  // commuting family: entrywise sqrt of products
  std::vector<HermitianMatrix> diag{HermitianMatrix::diagonal({1.0, 9.0}),
                                    HermitianMatrix::diagonal({4.0, 1.0})};
  auto half = eval_mean_program(MeanProgram::binary("y1", "y2", 0.5), labels, diag);
  CHECK(half(0, 0).real() == doctest::Approx(2.0));
  CHECK(half(1, 1).real() == doctest::Approx(3.0));
}

TEST_CASE("malformed programs are rejected") {
  const std::vector<std::string> labels{"y1"};
  CHECK_THROWS_AS(MeanProgram{}.validate(labels), MalformedProgram);
  CHECK_THROWS_AS(MeanProgram::load("zz").validate(labels), MalformedProgram);
  MeanProgram bad;
  bad.push_load("y1");
  bad.push_geo(0, 1, 0.5);  // register 1 not yet assigned
  CHECK_THROWS_AS(bad.validate(labels), MalformedProgram);
}

TEST_CASE("scalar evaluation matches symbolic effective weights") {
  const std::vector<std::string> labels{"y1", "y2", "y3"};
  Rng rng(34);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 30; ++trial) {
    MeanProgram prog = pick_program(rng, labels);
    std::vector<HermitianMatrix> fam;
    std::vector<double> vals;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      vals.push_back(u(rng));
      fam.push_back(HermitianMatrix::diagonal({vals.back()}));
    }
    const double direct = eval_mean_program(prog, labels, fam)(0, 0).real();
    auto w = prog.effective_weights();
    double wsum = 0.0, expected = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const double wi = w.count(labels[i]) ? w.at(labels[i]) : 0.0;
      wsum += wi;
      expected += wi * std::log(vals[i]);
    }
    CHECK(wsum == doctest::Approx(1.0));
    CHECK(direct == doctest::Approx(std::exp(expected)).epsilon(1e-10));
  }
}

TEST_CASE("commuting_log_mean special cases") {
  const std::vector<std::string> labels{"a", "b", "c"};
  Rng rng(35);

  // constant family: result is the common member for every gamma
  HermitianMatrix s0 = testutil::random_pd(rng, 3);
  std::vector<HermitianMatrix> constant{s0, s0, s0};
  auto m = commuting_log_mean(labels, constant,
                              FiniteMeasure{{"a", "c"}, {0.3, 0.7}});
  CHECK((m.mat() - s0.mat()).max_abs() < 1e-9 * std::max(1.0, s0.max_abs()));

  // diagonal family, uniform measure on two points: entrywise geometric mean
  std::vector<HermitianMatrix> diag{HermitianMatrix::diagonal({1.0, 2.0}),
                                    HermitianMatrix::diagonal({4.0, 8.0}),
                                    HermitianMatrix::identity(2)};
  auto gm = commuting_log_mean({"a", "b", "c"}, diag,
                               FiniteMeasure::uniform({"a", "b"}));
  CHECK(gm(0, 0).real() == doctest::Approx(2.0));
  CHECK(gm(1, 1).real() == doctest::Approx(4.0));

  // dirac measure picks out the member
  auto d = commuting_log_mean({"a", "b", "c"}, diag, FiniteMeasure::dirac("b"));
  CHECK((d.mat() - diag[1].mat()).max_abs() < 1e-10);
}

TEST_CASE("commuting_log_mean reports noncommuting families") {
  Matrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  std::vector<HermitianMatrix> fam{
      HermitianMatrix::diagonal({1.0, 2.0}),
      hermitian_unchecked(Matrix::identity(2) * cplx{2.0, 0.0} + x)};
  CHECK_THROWS_AS(
      commuting_log_mean({"a", "b"}, fam, FiniteMeasure::uniform({"a", "b"})),
      NotCommuting);
  // non-probability measure
  CHECK_THROWS_AS(
      commuting_log_mean({"a", "b"},
                         {HermitianMatrix::identity(2), HermitianMatrix::identity(2)},
                         FiniteMeasure{{"a"}, {0.4}}),
      DomainError);
}

TEST_CASE("mean axioms on random instances") {
  const std::vector<std::string> labels{"y1", "y2"};
  Rng rng(36);
  const double tol = 1e-7;
  for (int trial = 0; trial < 25; ++trial) {
    MeanProgram prog = pick_program(rng, labels);
    auto fam = random_family(rng, 2, 3);
    auto fam2 = random_family(rng, 2, 3);
    auto value = eval_mean_program(prog, labels, fam);
    auto value2 = eval_mean_program(prog, labels, fam2);

    SUBCASE("") {}  // keep assertions inside the loop

    // direct sum
    std::vector<HermitianMatrix> dsum_fam{dsum(fam[0], fam2[0]),
                                          dsum(fam[1], fam2[1])};
    auto ds = eval_mean_program(prog, labels, dsum_fam);
    CHECK((ds.mat() - dsum(value, value2).mat()).max_abs() < tol);

    // tensor
    std::vector<HermitianMatrix> kron_fam{kron(fam[0], fam2[0]),
                                          kron(fam[1], fam2[1])};
    auto kr = eval_mean_program(prog, labels, kron_fam);
    CHECK((kr.mat() - kron(value, value2).mat()).max_abs() <
          tol * std::max(1.0, kr.max_abs()));

    // homogeneity
    const double lam = 0.1 + 3.0 * (trial / 25.0);
    std::vector<HermitianMatrix> scaled{lam * fam[0], lam * fam[1]};
    auto sc = eval_mean_program(prog, labels, scaled);
    CHECK((sc.mat() - (lam * value).mat()).max_abs() < tol * std::max(1.0, lam));

    // monotonicity: fam <= fam + psd
    std::vector<HermitianMatrix> bigger{fam[0] + testutil::random_pd(rng, 3, 0.0),
                                        fam[1] + testutil::random_pd(rng, 3, 0.0)};
    auto bg = eval_mean_program(prog, labels, bigger);
    CHECK(loewner_geq(bg, value, tol));

    // concavity
    const double t = 0.3;
    std::vector<HermitianMatrix> mixed{t * fam[0] + (1.0 - t) * fam2[0],
                                       t * fam[1] + (1.0 - t) * fam2[1]};
    auto mx = eval_mean_program(prog, labels, mixed);
    CHECK(loewner_geq(mx, t * value + (1.0 - t) * value2, tol));

    // unitary equivariance
    Matrix u = testutil::random_unitary(rng, 3);
    std::vector<HermitianMatrix> rotated{fam[0].conjugate_by(u),
                                         fam[1].conjugate_by(u)};
    auto rot = eval_mean_program(prog, labels, rotated);
    CHECK((rot.mat() - value.conjugate_by(u).mat()).max_abs() <
          tol * std::max(1.0, value.max_abs()));

    // superadditivity under CPTP maps
    auto chan = testutil::random_cptp(rng, 3, 3, 2);
    std::vector<HermitianMatrix> pushed{chan.apply(fam[0]), chan.apply(fam[1])};
    auto after = eval_mean_program(prog, labels, pushed);
    CHECK(loewner_geq(after, chan.apply(value), tol));
  }
}

TEST_CASE("program enumeration counts and validity") {
  auto progs = enumerate_mean_programs({"y1", "y2"}, 2, {0.0, 0.25, 0.5, 0.75, 1.0});
  // 2 loads + 3 binary + (pairs with at least one depth-1 operand) * 3
  CHECK(progs.size() == 2 + 3 + 9 * 3);
  for (const auto& p : progs) CHECK_NOTHROW(p.validate({"y1", "y2"}));
}

}  // TEST_SUITE
