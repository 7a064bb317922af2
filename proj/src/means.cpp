#include "submaj/means.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "submaj/errors.hpp"

namespace submaj {

double FiniteMeasure::total() const {
  double t = 0.0;
  for (double w : weights) t += w;
  return t;
}

bool FiniteMeasure::is_probability(double tol) const {
  for (double w : weights)
    if (w < -tol) return false;
  return std::abs(total() - 1.0) <= tol;
}

double FiniteMeasure::weight_of(const std::string& label) const {
  for (std::size_t i = 0; i < support.size(); ++i)
    if (support[i] == label) return weights[i];
  return 0.0;
}

FiniteMeasure FiniteMeasure::dirac(const std::string& label) {
  return FiniteMeasure{{label}, {1.0}};
}

FiniteMeasure FiniteMeasure::uniform(const std::vector<std::string>& labels) {
  return FiniteMeasure{labels, std::vector<double>(labels.size(),
                                                   1.0 / labels.size())};
}

std::string FiniteMeasure::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i) os << ",";
    os << support[i] << ":" << weights[i];
  }
  return os.str();
}

HermitianMatrix geometric_mean(const HermitianMatrix& a,
                               const HermitianMatrix& b, double gamma) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("geometric_mean: dimension mismatch");
  if (gamma < 0.0 || gamma > 1.0)
    throw GammaOutOfRange("geometric_mean: gamma = " + std::to_string(gamma));
  if (gamma == 0.0) return a;
  if (gamma == 1.0) return b;
  HermitianMatrix isqrt = mat_pow(a, -0.5);  // throws DomainError unless a PD
  HermitianMatrix sqrt_a = mat_sqrt(a);
  HermitianMatrix mid = hermitian_unchecked(isqrt.mat() * b.mat() * isqrt.mat());
  HermitianMatrix powed = mat_pow(mid, gamma);
  return hermitian_unchecked(sqrt_a.mat() * powed.mat() * sqrt_a.mat());
}

MeanProgram MeanProgram::load(const std::string& label) {
  MeanProgram p;
  p.push_load(label);
  return p;
}

MeanProgram MeanProgram::binary(const std::string& y1, const std::string& y2,
                                double gamma) {
  MeanProgram p;
  p.push_load(y1);
  p.push_load(y2);
  p.push_geo(0, 1, gamma);
  return p;
}

MeanProgram& MeanProgram::push_load(const std::string& label) {
  steps.push_back(Step{Step::Op::Load, label, 0, 0, 0.0});
  return *this;
}

MeanProgram& MeanProgram::push_geo(std::size_t reg_a, std::size_t reg_b,
                                   double gamma) {
  steps.push_back(Step{Step::Op::Geo, "", reg_a, reg_b, gamma});
  return *this;
}

void MeanProgram::validate(const std::vector<std::string>& y_labels) const {
  if (steps.empty()) throw MalformedProgram("empty mean program");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Step& s = steps[i];
    if (s.op == Step::Op::Load) {
      if (!y_labels.empty() &&
          std::find(y_labels.begin(), y_labels.end(), s.label) == y_labels.end())
        throw MalformedProgram("load of unknown label '" + s.label + "'");
    } else {
      if (s.reg_a >= i || s.reg_b >= i)
        throw MalformedProgram("geo step " + std::to_string(i) +
                               " references a register not yet assigned");
      if (s.gamma < 0.0 || s.gamma > 1.0)
        throw MalformedProgram("geo weight outside [0,1]");
    }
  }
}

std::map<std::string, double> MeanProgram::effective_weights() const {
  validate({});
  std::vector<std::map<std::string, double>> regs;
  for (const Step& s : steps) {
    if (s.op == Step::Op::Load) {
      regs.push_back({{s.label, 1.0}});
    } else {
      std::map<std::string, double> w;
      for (const auto& [k, v] : regs[s.reg_a]) w[k] += (1.0 - s.gamma) * v;
      for (const auto& [k, v] : regs[s.reg_b]) w[k] += s.gamma * v;
      regs.push_back(std::move(w));
    }
  }
  return regs.back();
}

std::string MeanProgram::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) os << ";";
    const Step& s = steps[i];
    if (s.op == Step::Op::Load)
      os << "load(" << s.label << ")";
    else
      os << "geo(" << s.reg_a << "," << s.reg_b << "," << s.gamma << ")";
  }
  return os.str();
}

HermitianMatrix eval_mean_program(const MeanProgram& program,
                                  const std::vector<std::string>& y_labels,
                                  const std::vector<HermitianMatrix>& sigma) {
  if (y_labels.size() != sigma.size())
    throw LengthMismatch("eval_mean_program: labels vs family size");
  program.validate(y_labels);
  std::vector<HermitianMatrix> regs;
  regs.reserve(program.steps.size());
  for (const auto& s : program.steps) {
    if (s.op == MeanProgram::Step::Op::Load) {
      const auto it = std::find(y_labels.begin(), y_labels.end(), s.label);
      regs.push_back(sigma[static_cast<std::size_t>(it - y_labels.begin())]);
    } else {
      regs.push_back(geometric_mean(regs[s.reg_a], regs[s.reg_b], s.gamma));
    }
  }
  return regs.back();
}

HermitianMatrix commuting_log_mean(const std::vector<std::string>& y_labels,
                                   const std::vector<HermitianMatrix>& sigma,
                                   const FiniteMeasure& gamma,
                                   double tol_commute) {
  if (y_labels.size() != sigma.size())
    throw LengthMismatch("commuting_log_mean: labels vs family size");
  if (sigma.empty()) throw DomainError("commuting_log_mean: empty family");
  if (!gamma.is_probability())
    throw DomainError("commuting_log_mean: gamma is not a probability measure");
  for (const auto& s : gamma.support)
    if (std::find(y_labels.begin(), y_labels.end(), s) == y_labels.end())
      throw LabelMismatch("commuting_log_mean: measure supported on unknown label '" +
                          s + "'");

  const Matrix u = simultaneous_eigenbasis(sigma, tol_commute);
  const std::size_t d = sigma.front().dim();

  // log-eigenvalues per member in the common basis
  std::vector<std::vector<double>> lneig(sigma.size(), std::vector<double>(d));
  for (std::size_t m = 0; m < sigma.size(); ++m) {
    Matrix b = u.adjoint() * sigma[m].mat() * u;
    for (std::size_t i = 0; i < d; ++i) {
      const double lam = b(i, i).real();
      if (lam <= kTolPsd)
        throw DomainError("commuting_log_mean: member " + std::to_string(m) +
                          " has eigenvalue " + std::to_string(lam));
      lneig[m][i] = std::log(lam);
    }
  }

  Matrix diag(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < gamma.support.size(); ++k) {
      const auto it =
          std::find(y_labels.begin(), y_labels.end(), gamma.support[k]);
      acc += gamma.weights[k] * lneig[static_cast<std::size_t>(it - y_labels.begin())][i];
    }
    diag(i, i) = std::exp(acc);
  }
  return hermitian_unchecked(u * diag * u.adjoint());
}

std::vector<MeanProgram> enumerate_mean_programs(
    const std::vector<std::string>& y_labels, int depth,
    const std::vector<double>& gammas) {
  std::vector<MeanProgram> out;
  for (const auto& y : y_labels) out.push_back(MeanProgram::load(y));
  std::size_t prev_begin = 0;  // start of the previous level's programs
  for (int level = 1; level <= depth; ++level) {
    const std::size_t level_end = out.size();
    std::vector<MeanProgram> fresh;
    for (std::size_t a = 0; a < level_end; ++a) {
      for (std::size_t b = std::max(a + 1, prev_begin); b < level_end; ++b) {
        for (double g : gammas) {
          // endpoints reproduce a or b, and (a,b,g) ~ (b,a,1-g)
          if (g <= 0.0 || g >= 1.0) continue;
          MeanProgram p;
          const std::size_t off_a = 0;
          for (const auto& s : out[a].steps) {
            MeanProgram::Step t = s;
            if (t.op == MeanProgram::Step::Op::Geo) {
              t.reg_a += off_a;
              t.reg_b += off_a;
            }
            p.steps.push_back(t);
          }
          const std::size_t off_b = p.steps.size();
          for (const auto& s : out[b].steps) {
            MeanProgram::Step t = s;
            if (t.op == MeanProgram::Step::Op::Geo) {
              t.reg_a += off_b;
              t.reg_b += off_b;
            }
            p.steps.push_back(t);
          }
          p.push_geo(off_b - 1, p.steps.size() - 1, g);
          fresh.push_back(std::move(p));
        }
      }
    }
    // next level must use at least one program from this level, otherwise
    // the same composition would be generated twice
    prev_begin = level_end;
    for (auto& p : fresh) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace submaj
