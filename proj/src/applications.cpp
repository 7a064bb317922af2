#include "submaj/applications.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "submaj/divergences.hpp"
#include "submaj/errors.hpp"

namespace submaj {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

ThermalSystem ThermalSystem::create(HermitianMatrix hamiltonian, double beta,
                                    HermitianMatrix state) {
  if (hamiltonian.dim() != state.dim())
    throw DimensionMismatch("thermal system: Hamiltonian vs state dimension");
  if (beta <= 0.0) throw DomainError("thermal system: beta must be positive");
  if (std::abs(state.trace() - 1.0) > 1e-9)
    throw DomainError("thermal system: state trace deviates from 1 by more than 1e-9");
  ThermalSystem sys;
  sys.hamiltonian = std::move(hamiltonian);
  sys.beta = beta;
  sys.state = std::move(state);
  return sys;
}

HermitianMatrix ThermalSystem::gibbs_unnormalized() const {
  return mat_exp(-beta * hamiltonian);
}

HermitianMatrix ThermalSystem::gibbs_state() const {
  HermitianMatrix g = gibbs_unnormalized();
  return (1.0 / g.trace()) * g;
}

double thermal_monotone(const ThermalSystem& sys, double alpha,
                        double gamma_weight, double time,
                        bool use_normalized_gibbs) {
  if (min_eig(sys.state) <= kTolPsd) return kInf;
  const Matrix u = unitary_exp(sys.hamiltonian, time);
  const HermitianMatrix rotated = sys.state.conjugate_by(u);
  const HermitianMatrix g =
      use_normalized_gibbs ? sys.gibbs_state() : sys.gibbs_unnormalized();
  const HermitianMatrix mean = geometric_mean(rotated, g, gamma_weight);
  return sandwiched_divergence(sys.state, mean, alpha);
}

FamilyPair thermal_orbit_pair(const ThermalSystem& sys, int grid_points,
                              bool use_normalized_gibbs) {
  if (grid_points < 1) throw DomainError("thermal_orbit_pair: empty time grid");
  if (min_eig(sys.state) <= kTolPsd)
    throw DomainError("thermal_orbit_pair: state must be full rank");
  std::vector<std::string> labels;
  std::vector<HermitianMatrix> members;
  for (int k = 0; k < grid_points; ++k) {
    labels.push_back("g" + std::to_string(k));
    const Matrix u = unitary_exp(sys.hamiltonian,
                                 2.0 * std::numbers::pi * k / grid_points);
    members.push_back(sys.state.conjugate_by(u));
  }
  labels.push_back("gibbs");
  members.push_back(use_normalized_gibbs ? sys.gibbs_state()
                                         : sys.gibbs_unnormalized());
  return FamilyPair::create(labels, labels, members, members);
}

GibbsVsThermalReport run_gibbs_vs_thermal_example(double beta, std::vector<double> epsilons) {
  for (double e : epsilons)
    if (e <= 0.0 || e >= 1.0)
      throw DomainError("gibbs-vs-thermal example: epsilon must be in (0,1)");

  const HermitianMatrix h = HermitianMatrix::diagonal({0.0, 1.0});
  const HermitianMatrix excited = HermitianMatrix::diagonal({0.0, 1.0});
  Matrix plus(2, 2);
  plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
  const HermitianMatrix plus_state = hermitian_unchecked(std::move(plus));

  const double z = 1.0 + std::exp(-beta);
  const HermitianMatrix tau = HermitianMatrix::diagonal(
      {1.0 / z, std::exp(-beta) / z});

  GibbsVsThermalReport report;
  report.beta = beta;
  const double pi = std::numbers::pi;

  for (double eps : epsilons) {
    GibbsVsThermalRow row;
    row.epsilon = eps;
    const HermitianMatrix initial = perturb(excited, eps, tau);
    const HermitianMatrix target = perturb(plus_state, eps, tau);

    row.monotone_initial = thermal_monotone(
        ThermalSystem::create(h, beta, initial), 2.0, 0.5, pi, true);
    row.monotone_target = thermal_monotone(
        ThermalSystem::create(h, beta, target), 2.0, 0.5, pi, true);

    const FamilyPair p = FamilyPair::create({"x"}, {"y"}, {initial}, {initial});
    const FamilyPair q = FamilyPair::create({"x"}, {"y"}, {target}, {target});

    FeasibilityOptions gibbs_opts;
    gibbs_opts.trace_preserving = true;
    gibbs_opts.gibbs_state = tau;
    gibbs_opts.attach_violating_monotone = false;
    row.gibbs_only = decide_exact_transform(p, q, gibbs_opts).status;

    FeasibilityOptions cov_opts = gibbs_opts;
    cov_opts.equivariance = u1_equivariance_constraint(h, h);
    row.covariant = decide_exact_transform(p, q, cov_opts).status;

    report.rows.push_back(row);
  }

  report.target_exceeds_initial = true;
  for (const auto& row : report.rows)
    if (!(row.monotone_target > row.monotone_initial))
      report.target_exceeds_initial = false;

  // compare along decreasing epsilon regardless of input order
  std::vector<GibbsVsThermalRow> sorted = report.rows;
  std::sort(sorted.begin(), sorted.end(),
            [](const GibbsVsThermalRow& a, const GibbsVsThermalRow& b) {
              return a.epsilon > b.epsilon;
            });
  report.target_increasing_as_eps_shrinks = true;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (!(sorted[i].monotone_target > sorted[i - 1].monotone_target))
      report.target_increasing_as_eps_shrinks = false;
  return report;
}

ExponentGrid ExponentGrid::defaults() {
  ExponentGrid g;
  g.alphas.push_back(1.0);
  for (int k = 10; k >= 0; --k) g.alphas.push_back(1.0 + std::pow(2.0, -k));
  for (double a : {3.0, 5.0, 10.0}) g.alphas.push_back(a);
  return g;
}

namespace {

std::vector<HermitianMatrix> orbit_of(const std::vector<Matrix>& group,
                                      const HermitianMatrix& seed) {
  std::vector<HermitianMatrix> orbit;
  for (const auto& u : group) orbit.push_back(seed.conjugate_by(u));
  return orbit;
}

void check_commuting_orbit(const std::vector<HermitianMatrix>& orbit,
                           const char* what) {
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (std::size_t j = i + 1; j < orbit.size(); ++j)
      if (commutator_norm(orbit[i], orbit[j]) > kTolCommute)
        throw NotCommuting(std::string(what) +
                           " orbit members do not commute (indices " +
                           std::to_string(i) + "," + std::to_string(j) + ")");
}

std::vector<std::string> group_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t g = 0; g < n; ++g) labels.push_back("g" + std::to_string(g));
  return labels;
}

double exponent_sup(const ExponentQuery& query, const ExponentGrid& grid,
                    bool with_reference) {
  const auto labels = group_labels(query.group.size());
  const auto sigma_orbit = orbit_of(query.group, query.sigma0);
  check_commuting_orbit(sigma_orbit, "sigma");

  std::vector<HermitianMatrix> omega_orbit;
  if (with_reference) {
    if (min_eig(query.omega) <= kTolPsd)
      throw DomainError("reference state must have full support");
    const auto& gr = query.group_ref.empty() ? query.group : query.group_ref;
    if (gr.size() != query.group.size())
      throw LengthMismatch("reference representation size differs from group");
    omega_orbit = orbit_of(gr, query.omega);
    check_commuting_orbit(omega_orbit, "reference");
    // trivial stabilizer: only the identity (element 0) may fix Omega
    for (std::size_t g = 1; g < omega_orbit.size(); ++g)
      if ((omega_orbit[g].mat() - query.omega.mat()).max_abs() <= 1e-8)
        throw DomainError(
            "reference state has a nontrivial stabilizer (element " +
            std::to_string(g) + ")");
  }

  double best = -kInf;
  for (const auto& gamma : simplex_grid(labels, grid.gamma_resolution)) {
    const HermitianMatrix mean_sigma =
        commuting_log_mean(labels, sigma_orbit, gamma);
    HermitianMatrix mean_omega;
    if (with_reference)
      mean_omega = commuting_log_mean(labels, omega_orbit, gamma);

    for (double alpha : grid.alphas) {
      if (alpha <= 1.0) {
        best = std::max(best, 0.0);
        continue;
      }
      double val = query.r - sandwiched_divergence(query.rho0, mean_sigma, alpha);
      if (with_reference && query.kappa > 0.0)
        val -= query.kappa *
               sandwiched_divergence(query.omega, mean_omega, alpha);
      best = std::max(best, (alpha - 1.0) / alpha * val);
    }
    if (grid.include_tropical) {
      double val = query.r - max_divergence(query.rho0, mean_sigma);
      if (with_reference && query.kappa > 0.0)
        val -= query.kappa * max_divergence(query.omega, mean_omega);
      best = std::max(best, val);
    }
  }
  return best;
}

}  // namespace

double strong_converse_exponent(const ExponentQuery& query,
                                const ExponentGrid& grid) {
  return exponent_sup(query, grid, false);
}

double reference_frame_exponent(const ExponentQuery& query,
                                const ExponentGrid& grid) {
  if (query.kappa == 0.0) return exponent_sup(query, grid, false);
  return exponent_sup(query, grid, true);
}

JointTransformResult approx_joint_transform_check(const ClassicalFamily& p,
                                                  const ClassicalFamily& target,
                                                  const SweepGrid& grid,
                                                  double tol) {
  if (p.x_labels != target.x_labels)
    throw LabelMismatch("joint transform: families must share the X grid");
  if (p.x_labels.empty()) throw LabelMismatch("joint transform: empty X grid");
  if (p.distributions.size() != p.x_labels.size() ||
      target.distributions.size() != target.x_labels.size())
    throw LengthMismatch("joint transform: distributions vs labels");

  auto to_pair = [&](const ClassicalFamily& fam) {
    std::vector<HermitianMatrix> members;
    for (const auto& dist : fam.distributions) {
      for (double v : dist)
        if (v <= kTolPsd)
          throw DomainError("joint transform: distributions must have full support");
      members.push_back(HermitianMatrix::diagonal(dist));
    }
    return FamilyPair::create(fam.x_labels, fam.x_labels, members, members);
  };

  const FamilyPair pp = to_pair(p);
  const FamilyPair qq = to_pair(target);
  SweepResult sweep = sweep_decide_asymptotic_commuting(pp, qq, grid, tol);

  JointTransformResult result;
  result.rows = std::move(sweep.rows);
  result.min_margin = sweep.min_margin;
  if (sweep.min_margin < -tol) {
    result.verdict = JointTransformVerdict::Violated;
    result.witness = sweep.witness;
  } else {
    result.verdict = JointTransformVerdict::ConditionsHold;
  }
  return result;
}

}  // namespace submaj
