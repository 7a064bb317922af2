#pragma once

#include <optional>
#include <vector>

#include "submaj/families.hpp"
#include "submaj/feasibility.hpp"
#include "submaj/spectrum.hpp"

namespace submaj {

struct ThermalSystem {
  HermitianMatrix hamiltonian;
  double beta = 1.0;
  HermitianMatrix state;  // density operator, trace 1 within 1e-9

  static ThermalSystem create(HermitianMatrix hamiltonian, double beta,
                              HermitianMatrix state);

  HermitianMatrix gibbs_unnormalized() const;  // e^(-beta H)
  HermitianMatrix gibbs_state() const;         // normalized tau
};

// D_alpha( rho || (e^{-itH} rho e^{itH}) #_gamma G ) in bits, G either
// e^{-beta H} or the normalized Gibbs state. Nonincreasing under thermal
// processes (time-translation covariant Gibbs-preserving channels).
// Returns +inf when the state is not full rank.
double thermal_monotone(const ThermalSystem& sys, double alpha,
                        double gamma_weight, double time,
                        bool use_normalized_gibbs);

// Exact-transform encoding of thermal processes: families over a time
// grid t_k = 2 pi k / N plus a 'gibbs' label. For integer-spectrum
// Hamiltonians the default N = 16 sampling is lossless by periodicity.
// Mean programs mixing a time-translated member with the gibbs member
// reproduce the second-law monotones.
FamilyPair thermal_orbit_pair(const ThermalSystem& sys, int grid_points = 16,
                              bool use_normalized_gibbs = true);

// The qubit Gibbs-preserving vs thermal-process separation: H = |1><1|,
// transition (1-eps)|1><1| + eps tau -> (1-eps)|+><+| + eps tau.
struct GibbsVsThermalRow {
  double epsilon;
  Feasibility gibbs_only;      // exact transform, Gibbs-preserving channel
  Feasibility covariant;       // same plus U(1) covariance
  double monotone_initial;     // alpha=2, gamma=1/2, t=pi, normalized Gibbs
  double monotone_target;
};

struct GibbsVsThermalReport {
  double beta;
  std::vector<GibbsVsThermalRow> rows;       // in the order of the given epsilons
  bool target_exceeds_initial;      // at every epsilon
  bool target_increasing_as_eps_shrinks;
};

GibbsVsThermalReport run_gibbs_vs_thermal_example(double beta, std::vector<double> epsilons);

// Group-symmetric hypothesis testing: rate r, kappa reference frames per
// sample. group[0] must be the identity element.
struct ExponentQuery {
  std::vector<Matrix> group;
  HermitianMatrix rho0, sigma0;
  double r = 0.0;
  double kappa = 0.0;
  HermitianMatrix omega;              // reference state, full support
  std::vector<Matrix> group_ref;      // defaults to `group`
};

struct ExponentGrid {
  std::vector<double> alphas;     // finite alphas including 1
  bool include_tropical = true;   // the alpha -> infinity row
  int gamma_resolution = 8;

  static ExponentGrid defaults();
};

// sup over the grid of (alpha-1)/alpha [ r - D_alpha(rho0 || log-mean of
// the sigma0 orbit) ]; a lower bound on the true supremum.
double strong_converse_exponent(const ExponentQuery& query,
                                const ExponentGrid& grid);

// Same with the reference-frame penalty -kappa D_alpha(Omega || log-mean
// of the Omega orbit), the measure gamma shared between both log-means.
double reference_frame_exponent(const ExponentQuery& query,
                                const ExponentGrid& grid);

// Classical family of full-support distributions over a finite grid X.
struct ClassicalFamily {
  std::vector<std::string> x_labels;
  std::vector<std::vector<double>> distributions;  // per x label
};

enum class JointTransformVerdict { ConditionsHold, Violated };

struct JointTransformResult {
  JointTransformVerdict verdict;
  std::optional<SweepRow> witness;  // violated (x, alpha, gamma) row
  std::vector<SweepRow> rows;
  double min_margin = 0.0;
};

// Sweeps the monotone inequalities that characterize approximate joint
// transformations (Thompson-metric asymptotics) between classical families.
JointTransformResult approx_joint_transform_check(const ClassicalFamily& p,
                                                  const ClassicalFamily& target,
                                                  const SweepGrid& grid,
                                                  double tol = 1e-9);

}  // namespace submaj
