#include "submaj/spectrum.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <random>
#include <sstream>

#include "submaj/divergences.hpp"
#include "submaj/errors.hpp"
#include "submaj/json_io.hpp"
#include "submaj/parallel.hpp"

namespace submaj {

namespace {

const char* kind_name(SpectralKind k) {
  switch (k) {
    case SpectralKind::RealClassical: return "real_classical";
    case SpectralKind::TropicalClassical: return "tropical_classical";
    case SpectralKind::RealQuantum: return "real_quantum";
    case SpectralKind::TropicalQuantum: return "tropical_quantum";
  }
  return "?";
}

std::size_t label_index(const std::vector<std::string>& labels,
                        const std::string& label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw LabelMismatch("spectral point references unknown label '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

double log_mean_exponent(const std::vector<double>& q,
                         const std::vector<std::string>& y_labels,
                         const FiniteMeasure& gamma) {
  double acc = 0.0;
  for (std::size_t k = 0; k < gamma.support.size(); ++k)
    acc += gamma.weights[k] * std::log(q[label_index(y_labels, gamma.support[k])]);
  return acc;
}

}  // namespace

std::string SpectralPoint::describe() const {
  std::ostringstream os;
  os << kind_name(kind);
  if (!is_tropical()) os << " alpha=" << alpha;
  os << " x=" << x;
  if (gamma) os << " gamma={" << gamma->describe() << "}";
  if (mean_program) os << " program=[" << mean_program->describe() << "]";
  return os.str();
}

SpectralPoint SpectralPoint::real_classical(double alpha, std::string x,
                                            FiniteMeasure gamma) {
  if (alpha < 1.0) throw AlphaOutOfRange("spectral point needs alpha >= 1");
  SpectralPoint f;
  f.kind = SpectralKind::RealClassical;
  f.alpha = alpha;
  f.x = std::move(x);
  f.gamma = std::move(gamma);
  return f;
}

SpectralPoint SpectralPoint::tropical_classical(std::string x,
                                                FiniteMeasure gamma) {
  SpectralPoint f;
  f.kind = SpectralKind::TropicalClassical;
  f.x = std::move(x);
  f.gamma = std::move(gamma);
  return f;
}

SpectralPoint SpectralPoint::real_quantum(double alpha, std::string x,
                                          MeanProgram program) {
  if (alpha < 1.0) throw AlphaOutOfRange("spectral point needs alpha >= 1");
  SpectralPoint f;
  f.kind = SpectralKind::RealQuantum;
  f.alpha = alpha;
  f.x = std::move(x);
  f.mean_program = std::move(program);
  return f;
}

SpectralPoint SpectralPoint::tropical_quantum(std::string x,
                                              MeanProgram program) {
  SpectralPoint f;
  f.kind = SpectralKind::TropicalQuantum;
  f.x = std::move(x);
  f.mean_program = std::move(program);
  return f;
}

double eval_real_classical(const SpectralPoint& f, const ClassicalVectors& cv,
                           const std::vector<std::string>& x_labels,
                           const std::vector<std::string>& y_labels) {
  const std::size_t xi = label_index(x_labels, f.x);
  double acc = 0.0;
  for (std::size_t i = 0; i < cv.p.size(); ++i) {
    const double e = log_mean_exponent(cv.q[i], y_labels, *f.gamma);
    acc += std::pow(cv.p[i][xi], f.alpha) * std::exp((1.0 - f.alpha) * e);
  }
  return acc;
}

double eval_tropical_classical(const SpectralPoint& f,
                               const ClassicalVectors& cv,
                               const std::vector<std::string>& x_labels,
                               const std::vector<std::string>& y_labels) {
  const std::size_t xi = label_index(x_labels, f.x);
  double best = 0.0;
  for (std::size_t i = 0; i < cv.p.size(); ++i) {
    const double e = log_mean_exponent(cv.q[i], y_labels, *f.gamma);
    best = std::max(best, cv.p[i][xi] * std::exp(-e));
  }
  return best;
}

double eval_real_classical(const SpectralPoint& f, const FamilyPair& pair) {
  if (pair.is_zero()) return 0.0;
  return eval_real_classical(f, classical_vectors(pair), pair.X_labels,
                             pair.Y_labels);
}

double eval_tropical_classical(const SpectralPoint& f, const FamilyPair& pair) {
  if (pair.is_zero()) return 0.0;
  return eval_tropical_classical(f, classical_vectors(pair), pair.X_labels,
                                 pair.Y_labels);
}

double eval_commuting_sigma(const SpectralPoint& f, const FamilyPair& pair) {
  if (pair.is_zero()) return 0.0;
  if (!f.gamma)
    throw DomainError("commuting-sigma evaluation needs a measure gamma");
  const HermitianMatrix omega =
      commuting_log_mean(pair.Y_labels, pair.sigma, *f.gamma);
  const HermitianMatrix& rho = pair.rho_at(f.x);
  if (f.is_tropical()) {
    const HermitianMatrix root = mat_sqrt(rho);
    const HermitianMatrix inv = mat_inv(omega);
    return op_norm(hermitian_unchecked(root.mat() * inv.mat() * root.mat()));
  }
  return sandwiched_quasientropy(rho, omega, f.alpha);
}

double eval_quantum_mean(const SpectralPoint& f, const FamilyPair& pair) {
  if (pair.is_zero()) return 0.0;
  if (!f.mean_program)
    throw MalformedProgram("quantum spectral point needs a mean program");
  const HermitianMatrix m =
      eval_mean_program(*f.mean_program, pair.Y_labels, pair.sigma);
  const HermitianMatrix& rho = pair.rho_at(f.x);
  if (f.is_tropical()) {
    const HermitianMatrix isqrt = mat_pow(m, -0.5);
    return op_norm(hermitian_unchecked(isqrt.mat() * rho.mat() * isqrt.mat()));
  }
  return sandwiched_quasientropy(rho, m, f.alpha);
}

double eval_spectral_point(const SpectralPoint& f, const FamilyPair& pair) {
  switch (f.kind) {
    case SpectralKind::RealClassical:
    case SpectralKind::TropicalClassical: {
      // classical form evaluates on any pair with commuting sigma
      if (is_classical(pair)) {
        return f.kind == SpectralKind::RealClassical
                   ? eval_real_classical(f, pair)
                   : eval_tropical_classical(f, pair);
      }
      return eval_commuting_sigma(f, pair);
    }
    case SpectralKind::RealQuantum:
    case SpectralKind::TropicalQuantum:
      return eval_quantum_mean(f, pair);
  }
  throw DomainError("unreachable spectral kind");
}

std::vector<FiniteMeasure> simplex_grid(const std::vector<std::string>& labels,
                                        int resolution) {
  if (labels.empty() || resolution < 1)
    throw DomainError("simplex_grid: need labels and resolution >= 1");
  std::vector<FiniteMeasure> out;
  std::vector<int> comp(labels.size(), 0);
  // lexicographic enumeration of compositions of `resolution`
  const std::size_t k = labels.size();
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos + 1 == k) {
      comp[pos] = left;
      FiniteMeasure m;
      for (std::size_t i = 0; i < k; ++i) {
        if (comp[i] == 0) continue;
        m.support.push_back(labels[i]);
        m.weights.push_back(static_cast<double>(comp[i]) / resolution);
      }
      out.push_back(std::move(m));
      return;
    }
    for (int c = left; c >= 0; --c) {
      comp[pos] = c;
      rec(pos + 1, left - c);
    }
  };
  rec(0, resolution);
  return out;
}

namespace {

// Grid rows shared by the sweep entry points.
std::vector<SpectralPoint> commuting_grid_points(const FamilyPair& p,
                                                 const SweepGrid& grid) {
  std::vector<SpectralPoint> pts;
  const auto measures = simplex_grid(p.Y_labels, grid.gamma_resolution);
  for (const auto& x : p.X_labels) {
    for (const auto& g : measures) {
      for (double a : grid.alphas)
        pts.push_back(SpectralPoint::real_classical(a, x, g));
      if (grid.include_tropical)
        pts.push_back(SpectralPoint::tropical_classical(x, g));
    }
  }
  return pts;
}

std::vector<SpectralPoint> quantum_grid_points(const FamilyPair& p,
                                               const SweepGrid& grid) {
  std::vector<SpectralPoint> pts;
  const auto programs = enumerate_mean_programs(
      p.Y_labels, grid.mean_program_depth, grid.mean_gammas);
  for (const auto& x : p.X_labels) {
    for (const auto& prog : programs) {
      for (double a : grid.alphas)
        pts.push_back(SpectralPoint::real_quantum(a, x, prog));
      if (grid.include_tropical)
        pts.push_back(SpectralPoint::tropical_quantum(x, prog));
    }
  }
  return pts;
}

SweepResult run_sweep(const std::vector<SpectralPoint>& pts,
                      const FamilyPair& p, const FamilyPair& q, double tol,
                      bool conclusive_ge) {
  SweepResult res;
  res.rows.resize(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    SweepRow row;
    row.point = pts[i];
    row.f_p = eval_spectral_point(pts[i], p);
    row.f_q = eval_spectral_point(pts[i], q);
    row.margin = row.f_p - row.f_q;
    res.rows[i] = std::move(row);
  });
  res.min_margin = 0.0;
  bool have = false;
  for (const auto& row : res.rows) {
    if (!have || row.margin < res.min_margin) {
      res.min_margin = row.margin;
      res.witness = row;
      have = true;
    }
  }
  if (res.min_margin < -10.0 * tol) {
    res.verdict = SweepVerdict::LT;
  } else if (res.min_margin >= -tol) {
    res.verdict = conclusive_ge ? SweepVerdict::GE : SweepVerdict::Inconclusive;
    if (res.verdict == SweepVerdict::GE) res.witness.reset();
  } else {
    res.verdict = SweepVerdict::Inconclusive;
  }
  return res;
}

void check_shared_labels(const FamilyPair& p, const FamilyPair& q) {
  if (p.X_labels != q.X_labels || p.Y_labels != q.Y_labels)
    throw LabelMismatch("sweep requires shared X and Y label sets");
}

void check_commuting_sigma(const FamilyPair& p, const char* side) {
  for (std::size_t i = 0; i < p.sigma.size(); ++i)
    for (std::size_t j = i + 1; j < p.sigma.size(); ++j) {
      const double cn = commutator_norm(p.sigma[i], p.sigma[j]);
      if (cn > kTolCommute)
        throw NotCommuting(std::string(side) + " sigma members " +
                           std::to_string(i) + "," + std::to_string(j) +
                           " have commutator norm " + std::to_string(cn));
    }
}

}  // namespace

SweepResult sweep_decide_asymptotic_commuting(const FamilyPair& p,
                                              const FamilyPair& q,
                                              const SweepGrid& grid,
                                              double tol) {
  check_shared_labels(p, q);
  check_commuting_sigma(p, "left");
  check_commuting_sigma(q, "right");
  return run_sweep(commuting_grid_points(p, grid), p, q, tol, true);
}

SweepResult sweep_quantum_necessary(const FamilyPair& p, const FamilyPair& q,
                                    const SweepGrid& grid, double tol) {
  check_shared_labels(p, q);
  return run_sweep(quantum_grid_points(p, grid), p, q, tol, false);
}

CatalyticResult check_catalytic_sufficient(const FamilyPair& p,
                                           const FamilyPair& q,
                                           const SweepGrid& grid,
                                           double strict_margin) {
  SweepResult sweep = sweep_decide_asymptotic_commuting(p, q, grid, 1e-12);
  CatalyticResult res;
  res.min_margin = sweep.min_margin;
  bool strict = true;
  for (const auto& row : sweep.rows) {
    if (!(row.margin > strict_margin)) {
      strict = false;
      if (!res.tightest || row.margin < res.tightest->margin) res.tightest = row;
    }
  }
  res.verdict = strict ? CatalyticVerdict::StrictAllSampled
                       : CatalyticVerdict::NotStrict;
  return res;
}

ConvexityReport joint_convexity_test(const SpectralPoint& f, int trials,
                                     std::uint64_t seed) {
  if (f.kind != SpectralKind::RealClassical &&
      f.kind != SpectralKind::TropicalClassical)
    throw DomainError("joint_convexity_test covers classical points only");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(0.05, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> dims(1, 3);

  // one synthetic X and Y label set: the point's x and gamma must refer to
  // them, so build vectors indexed by those labels
  ConvexityReport rep;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const int d = dims(rng);
    auto draw = [&](std::size_t nx, std::size_t ny) {
      std::pair<std::vector<std::vector<double>>, std::vector<std::vector<double>>> pq;
      pq.first.assign(d, std::vector<double>(nx));
      pq.second.assign(d, std::vector<double>(ny));
      for (auto& row : pq.first)
        for (auto& v : row) v = entry(rng);
      for (auto& row : pq.second)
        for (auto& v : row) v = entry(rng);
      return pq;
    };
    // labels: x plus gamma's support
    std::vector<std::string> xl{f.x};
    std::vector<std::string> yl = f.gamma->support;
    auto a = draw(xl.size(), yl.size());
    auto b = draw(xl.size(), yl.size());
    const double lam = unit(rng);

    auto value = [&](const std::vector<std::vector<double>>& p,
                     const std::vector<std::vector<double>>& q) {
      double acc = f.kind == SpectralKind::RealClassical ? 0.0 : -1e300;
      for (int i = 0; i < d; ++i) {
        double e = 0.0;
        for (std::size_t k = 0; k < yl.size(); ++k)
          e += f.gamma->weights[k] * std::log(q[i][k]);
        if (f.kind == SpectralKind::RealClassical) {
          acc += std::pow(p[i][0], f.alpha) * std::exp((1.0 - f.alpha) * e);
        } else {
          acc = std::max(acc, p[i][0] * std::exp(-e));
        }
      }
      return acc;
    };

    auto mix = a;
    for (int i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < xl.size(); ++k)
        mix.first[i][k] = lam * a.first[i][k] + (1.0 - lam) * b.first[i][k];
      for (std::size_t k = 0; k < yl.size(); ++k)
        mix.second[i][k] = lam * a.second[i][k] + (1.0 - lam) * b.second[i][k];
    }
    const double fmix = value(mix.first, mix.second);
    const double fa = value(a.first, a.second);
    const double fb = value(b.first, b.second);
    const double bound = f.kind == SpectralKind::RealClassical
                             ? lam * fa + (1.0 - lam) * fb
                             : std::max(fa, fb);
    const double viol = fmix - bound;
    if (viol > 1e-9) {
      ++rep.violations;
      rep.worst_violation = std::max(rep.worst_violation, viol);
    }
  }
  return rep;
}

std::string violation_table_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "kind,alpha,x,gamma_or_program,f_P,f_Q,margin\n";
  for (const auto& r : rows) {
    os << kind_name(r.point.kind) << ",";
    if (r.point.is_tropical())
      os << "inf";
    else
      os << io::format_double(r.point.alpha);
    os << "," << r.point.x << ",\"";
    if (r.point.gamma)
      os << r.point.gamma->describe();
    else if (r.point.mean_program)
      os << r.point.mean_program->describe();
    os << "\"," << io::format_double(r.f_p) << "," << io::format_double(r.f_q)
       << "," << io::format_double(r.margin) << "\n";
  }
  return os.str();
}

std::optional<SweepRow> find_best_violation(const FamilyPair& p,
                                            const FamilyPair& q,
                                            const SweepGrid& grid) {
  SweepResult sweep;
  try {
    sweep = sweep_decide_asymptotic_commuting(p, q, grid);
  } catch (const NotCommuting&) {
    sweep = sweep_quantum_necessary(p, q, grid);
  }
  if (sweep.witness && sweep.witness->margin < 0.0) return sweep.witness;
  return std::nullopt;
}

}  // namespace submaj
