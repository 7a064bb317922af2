#pragma once

#include <map>
#include <string>
#include <vector>

#include "submaj/linalg.hpp"
#include "submaj/matrix.hpp"

namespace submaj {

// Finitely supported nonnegative weights over a label set. Stands in for
// the measures gamma (probability) and mu/nu (general mass).
struct FiniteMeasure {
  std::vector<std::string> support;
  std::vector<double> weights;

  double total() const;
  bool is_probability(double tol = 1e-9) const;
  double weight_of(const std::string& label) const;  // 0 if absent

  static FiniteMeasure dirac(const std::string& label);
  static FiniteMeasure uniform(const std::vector<std::string>& labels);

  std::string describe() const;  // "y0:0.5,y1:0.5"
};

// Weighted two-operator geometric mean
//   A #_gamma B = A^(1/2) (A^(-1/2) B A^(-1/2))^gamma A^(1/2).
// A must be strictly PD; B may be PSD (the result is then PSD), which is
// the continuous extension used for near-singular second arguments.
HermitianMatrix geometric_mean(const HermitianMatrix& a,
                               const HermitianMatrix& b, double gamma);

// Straight-line program over a register model: LOAD pushes a family member,
// GEO combines two earlier registers with a weighted geometric mean. The
// value of the program is the last register. Iterating these binary means
// generates the mean families used for the quantum monotones.
struct MeanProgram {
  struct Step {
    enum class Op { Load, Geo } op;
    std::string label;           // Load
    std::size_t reg_a = 0, reg_b = 0;  // Geo
    double gamma = 0.0;                // Geo
  };
  std::vector<Step> steps;

  static MeanProgram load(const std::string& label);
  // single GEO of two loads
  static MeanProgram binary(const std::string& y1, const std::string& y2,
                            double gamma);

  MeanProgram& push_load(const std::string& label);
  MeanProgram& push_geo(std::size_t reg_a, std::size_t reg_b, double gamma);

  // Throws MalformedProgram on structural problems; labels are checked
  // against the given index set (pass empty to skip the label check).
  void validate(const std::vector<std::string>& y_labels) const;

  // Effective scalar weights: LOAD(y) -> delta_y, GEO -> convex combination
  // (1-gamma) w_a + gamma w_b. On one-dimensional inputs the program
  // evaluates to exp(sum_y w_y ln sigma(y)).
  std::map<std::string, double> effective_weights() const;

  std::string describe() const;
};

// Evaluate a program on a family sigma: Y -> PD. Unitary equivariant,
// result PD for PD inputs.
HermitianMatrix eval_mean_program(const MeanProgram& program,
                                  const std::vector<std::string>& y_labels,
                                  const std::vector<HermitianMatrix>& sigma);

// exp(sum_y gamma(y) ln sigma(y)) evaluated in a simultaneous eigenbasis of
// the pairwise-commuting family sigma. gamma must be a probability measure
// over (a subset of) y_labels.
HermitianMatrix commuting_log_mean(const std::vector<std::string>& y_labels,
                                   const std::vector<HermitianMatrix>& sigma,
                                   const FiniteMeasure& gamma,
                                   double tol_commute = kTolCommute);

// All programs over the label set with nesting depth at most `depth`,
// GEO weights drawn from `gammas`. Depth 0 gives the single loads; depth 1
// the binary means of loads, and so on. Used for the necessary-condition
// sweeps on noncommuting families.
std::vector<MeanProgram> enumerate_mean_programs(
    const std::vector<std::string>& y_labels, int depth,
    const std::vector<double>& gammas);

}  // namespace submaj
