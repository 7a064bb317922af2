#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "submaj/families.hpp"
#include "submaj/means.hpp"

namespace submaj {

// A 1-test-spectrum monotone: a multiplicative, additive (real) or
// max-additive (tropical) functional on family pairs, monotone under
// relative submajorization. Classical and commuting-sigma points carry a
// measure gamma over Y; quantum points carry a mean program.
enum class SpectralKind {
  RealClassical,
  TropicalClassical,
  RealQuantum,
  TropicalQuantum,
};

struct SpectralPoint {
  SpectralKind kind;
  double alpha = 1.0;  // >= 1, unused for tropical kinds
  std::string x;
  std::optional<FiniteMeasure> gamma;
  std::optional<MeanProgram> mean_program;

  bool is_tropical() const {
    return kind == SpectralKind::TropicalClassical ||
           kind == SpectralKind::TropicalQuantum;
  }
  std::string describe() const;

  static SpectralPoint real_classical(double alpha, std::string x,
                                      FiniteMeasure gamma);
  static SpectralPoint tropical_classical(std::string x, FiniteMeasure gamma);
  static SpectralPoint real_quantum(double alpha, std::string x,
                                    MeanProgram program);
  static SpectralPoint tropical_quantum(std::string x, MeanProgram program);
};

// sum_i p_i(x)^alpha exp[(1-alpha) sum_y gamma(y) ln q_i(y)]
double eval_real_classical(const SpectralPoint& f, const FamilyPair& p);

// max_i p_i(x) exp[-sum_y gamma(y) ln q_i(y)]; normalized so f(u) = 2
double eval_tropical_classical(const SpectralPoint& f, const FamilyPair& p);

// Same evaluations on precomputed simultaneous-eigenbasis vectors; lets
// callers amortize the diagonalization over many grid points.
double eval_real_classical(const SpectralPoint& f, const ClassicalVectors& cv,
                           const std::vector<std::string>& x_labels,
                           const std::vector<std::string>& y_labels);
double eval_tropical_classical(const SpectralPoint& f,
                               const ClassicalVectors& cv,
                               const std::vector<std::string>& x_labels,
                               const std::vector<std::string>& y_labels);

// Commuting-sigma evaluation: quasientropy (real) or the operator norm of
// rho^(1/2) Omega^(-1) rho^(1/2) (tropical), Omega the log-mean of sigma.
double eval_commuting_sigma(const SpectralPoint& f, const FamilyPair& p);

// Mean-program points: quasientropy against the program value (real) or
// || M^(-1/2) rho(x) M^(-1/2) ||_inf (tropical).
double eval_quantum_mean(const SpectralPoint& f, const FamilyPair& p);

// Picks the evaluation path the point's kind requires.
double eval_spectral_point(const SpectralPoint& f, const FamilyPair& p);

struct SweepGrid {
  std::vector<double> alphas{1.0, 1.25, 1.5, 2.0, 3.0, 5.0};
  bool include_tropical = true;  // the alpha = infinity rows
  int gamma_resolution = 8;      // simplex grid denominator over Y
  int mean_program_depth = 2;    // quantum necessary-condition sweeps
  std::vector<double> mean_gammas{0.25, 0.5, 0.75};

  static SweepGrid defaults() { return SweepGrid{}; }
};

// All weight vectors k/resolution over the labels (includes the vertices).
std::vector<FiniteMeasure> simplex_grid(const std::vector<std::string>& labels,
                                        int resolution);

enum class SweepVerdict { GE, LT, Inconclusive };

struct SweepRow {
  SpectralPoint point;
  double f_p, f_q;
  double margin;  // f_p - f_q
};

struct SweepResult {
  SweepVerdict verdict;
  std::vector<SweepRow> rows;           // deterministic grid order
  std::optional<SweepRow> witness;      // most negative margin
  double min_margin = 0.0;
};

// Grid decision for the asymptotic preorder restricted to commuting-sigma
// pairs. GE and LT are grid-relative: completeness holds only in the grid
// limit. Margins within (-10 tol, -tol] come back Inconclusive.
SweepResult sweep_decide_asymptotic_commuting(const FamilyPair& p,
                                              const FamilyPair& q,
                                              const SweepGrid& grid,
                                              double tol = 1e-9);

// Necessary conditions only: enumerated mean-program points, usable for
// noncommuting sigma families. LT still refutes; GE is not conclusive.
SweepResult sweep_quantum_necessary(const FamilyPair& p, const FamilyPair& q,
                                    const SweepGrid& grid, double tol = 1e-9);

enum class CatalyticVerdict { StrictAllSampled, NotStrict };

struct CatalyticResult {
  CatalyticVerdict verdict;
  double min_margin;
  std::optional<SweepRow> tightest;
};

// Sufficient condition on the sampled spectrum: strict inequality at every
// sampled point (full sufficiency would need the whole spectrum).
CatalyticResult check_catalytic_sufficient(const FamilyPair& p,
                                           const FamilyPair& q,
                                           const SweepGrid& grid,
                                           double strict_margin = 1e-9);

struct ConvexityReport {
  int trials = 0;
  int violations = 0;
  double worst_violation = 0.0;
};

// Empirical joint convexity (real) / quasi-convexity (tropical) of a
// classical point, sampled over random vector pairs and mixtures.
ConvexityReport joint_convexity_test(const SpectralPoint& f, int trials,
                                     std::uint64_t seed);

// CSV with header: kind,alpha,x,gamma_or_program,f_P,f_Q,margin
std::string violation_table_csv(const std::vector<SweepRow>& rows);

// Best (most violated) grid row, used to attach witnesses to infeasibility
// reports. Empty when nothing violates or no evaluation path applies.
std::optional<SweepRow> find_best_violation(const FamilyPair& p,
                                            const FamilyPair& q,
                                            const SweepGrid& grid);

}  // namespace submaj
