// submaj: relative submajorization toolkit command line.
//
// Exit codes: 0 = yes (Feasible / GE / ConditionsHold / all self tests pass),
// 1 = no (Infeasible / LT / Violated), 2 = borderline (Marginal /
// Inconclusive), 3 = usage or input error.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "submaj/applications.hpp"
#include "submaj/divergences.hpp"
#include "submaj/errors.hpp"
#include "submaj/feasibility.hpp"
#include "submaj/json_io.hpp"
#include "submaj/kernels.hpp"
#include "submaj/parallel.hpp"
#include "submaj/spectrum.hpp"

namespace {

using namespace submaj;
using io::json;

struct OutputSink {
  std::string dir;

  void emit(const std::string& name, const std::string& content) const {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << "\n";
    if (!dir.empty()) {
      std::filesystem::create_directories(dir);
      io::write_text_atomic(dir + "/" + name, content);
    }
  }
};

std::vector<double> parse_alpha_list(const std::string& csv, bool& tropical) {
  std::vector<double> alphas;
  tropical = false;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (tok == "inf" || tok == "Inf" || tok == "INF") {
      tropical = true;
    } else {
      alphas.push_back(std::stod(tok));
    }
  }
  return alphas;
}

SweepGrid make_grid(const std::string& alpha_csv, int gamma_res) {
  SweepGrid grid;
  if (!alpha_csv.empty()) {
    bool tropical = false;
    grid.alphas = parse_alpha_list(alpha_csv, tropical);
    grid.include_tropical = tropical;
    if (grid.alphas.empty() && !tropical)
      throw ParseError("--grid-alpha produced an empty grid");
  }
  if (gamma_res > 0) grid.gamma_resolution = gamma_res;
  return grid;
}

const char* status_name(Feasibility s) {
  switch (s) {
    case Feasibility::Feasible: return "Feasible";
    case Feasibility::Infeasible: return "Infeasible";
    case Feasibility::Marginal: return "Marginal";
  }
  return "?";
}

int status_exit(Feasibility s) {
  switch (s) {
    case Feasibility::Feasible: return 0;
    case Feasibility::Infeasible: return 1;
    case Feasibility::Marginal: return 2;
  }
  return 3;
}

json report_to_json(const FeasibilityReport& report) {
  json j;
  j["status"] = status_name(report.status);
  j["slack"] = report.slack;
  j["iterations"] = report.iterations;
  if (report.certificate) {
    j["certificate"] = io::hermitian_to_json(report.certificate->j);
    j["certificate_verified"] = report.certificate_verified;
    j["dim_in"] = report.certificate->dim_in;
    j["dim_out"] = report.certificate->dim_out;
  }
  if (report.violated_monotone) {
    j["violated_monotone"] = report.violated_monotone->point.describe();
    j["violated_margin"] = report.violated_monotone->margin;
  }
  return j;
}

// ---- eval ----

int cmd_eval(const std::string& family_path, const std::string& points_path,
             const SweepGrid& grid, const OutputSink& out) {
  FamilyPair fam = io::family_from_json(io::load_json_file(family_path));

  std::vector<SpectralPoint> points;
  if (!points_path.empty()) {
    const json spec = io::load_json_file(points_path);
    if (!spec.contains("points") || !spec["points"].is_array())
      throw ParseError(points_path + ": expected {\"points\": [...]}");
    for (const auto& p : spec["points"]) {
      const std::string kind = p.value("kind", "");
      const std::string x = p.value("x", "");
      if (kind == "real_classical") {
        points.push_back(SpectralPoint::real_classical(
            p.value("alpha", 1.0), x, io::measure_from_json(p.at("gamma"))));
      } else if (kind == "tropical_classical") {
        points.push_back(SpectralPoint::tropical_classical(
            x, io::measure_from_json(p.at("gamma"))));
      } else if (kind == "real_quantum") {
        points.push_back(SpectralPoint::real_quantum(
            p.value("alpha", 1.0), x, io::program_from_json(p.at("program"))));
      } else if (kind == "tropical_quantum") {
        points.push_back(SpectralPoint::tropical_quantum(
            x, io::program_from_json(p.at("program"))));
      } else {
        throw ParseError("unknown spectral point kind '" + kind + "'");
      }
    }
  } else {
    for (const auto& x : fam.X_labels)
      for (const auto& gamma : simplex_grid(fam.Y_labels, grid.gamma_resolution)) {
        for (double a : grid.alphas)
          points.push_back(SpectralPoint::real_classical(a, x, gamma));
        if (grid.include_tropical)
          points.push_back(SpectralPoint::tropical_classical(x, gamma));
      }
  }

  std::vector<double> values(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    values[i] = eval_spectral_point(points[i], fam);
  });

  std::ostringstream csv;
  csv << "kind,alpha,x,gamma_or_program,value\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SpectralPoint& p = points[i];
    csv << (p.kind == SpectralKind::RealClassical       ? "real_classical"
            : p.kind == SpectralKind::TropicalClassical ? "tropical_classical"
            : p.kind == SpectralKind::RealQuantum       ? "real_quantum"
                                                        : "tropical_quantum")
        << ",";
    if (p.is_tropical())
      csv << "inf";
    else
      csv << io::format_double(p.alpha);
    csv << "," << p.x << ",\"";
    if (p.gamma) csv << p.gamma->describe();
    if (p.mean_program) csv << p.mean_program->describe();
    csv << "\"," << io::format_double(values[i]) << "\n";
  }
  out.emit("eval.csv", csv.str());
  return 0;
}

// ---- feasible ----

int cmd_feasible(const std::string& p_path, const std::string& q_path,
                 bool classical, bool exact, bool trace_preserving,
                 const std::string& gibbs_path, const std::string& group_path,
                 double tol_feas, const OutputSink& out) {
  FamilyPair p = io::family_from_json(io::load_json_file(p_path));
  FamilyPair q = io::family_from_json(io::load_json_file(q_path));

  FeasibilityOptions opts;
  opts.trace_preserving = trace_preserving;
  if (tol_feas > 0.0) opts.tol_feas = tol_feas;
  if (!gibbs_path.empty())
    opts.gibbs_state = io::hermitian_from_json(io::load_json_file(gibbs_path));
  if (!group_path.empty()) {
    const io::GroupSpec g = io::group_from_json(io::load_json_file(group_path));
    if (g.kind == io::GroupSpec::Kind::Finite)
      opts.equivariance =
          equivariance_constraints_from_group(g.in_elements, g.out_elements);
    else
      opts.equivariance = u1_equivariance_constraint(
          HermitianMatrix(g.h_in), HermitianMatrix(g.h_out));
  }

  FeasibilityReport report;
  if (classical)
    report = decide_submajorization_classical(p, q, opts);
  else if (exact)
    report = decide_exact_transform(p, q, opts);
  else
    report = decide_submajorization(p, q, opts);

  std::cerr << report.describe() << "\n";
  out.emit("report.json", report_to_json(report).dump(2) + "\n");
  return status_exit(report.status);
}

// ---- asymptotic ----

int cmd_asymptotic(const std::string& p_path, const std::string& q_path,
                   const SweepGrid& grid, bool catalytic, bool quantum,
                   double tol, const OutputSink& out) {
  FamilyPair p = io::family_from_json(io::load_json_file(p_path));
  FamilyPair q = io::family_from_json(io::load_json_file(q_path));

  if (catalytic) {
    auto res = check_catalytic_sufficient(p, q, grid);
    std::cerr << (res.verdict == CatalyticVerdict::StrictAllSampled
                      ? "StrictAllSampled: sufficient condition holds on the sampled spectrum\n"
                      : "NotStrict: some sampled point is not strictly larger\n");
    std::ostringstream msg;
    msg << "verdict,"
        << (res.verdict == CatalyticVerdict::StrictAllSampled ? "StrictAllSampled"
                                                              : "NotStrict")
        << "\nmin_margin," << io::format_double(res.min_margin) << "\n";
    out.emit("catalytic.csv", msg.str());
    return res.verdict == CatalyticVerdict::StrictAllSampled ? 0 : 1;
  }

  SweepResult res;
  if (quantum) {
    res = sweep_quantum_necessary(p, q, grid, tol);
  } else {
    res = sweep_decide_asymptotic_commuting(p, q, grid, tol);
  }
  const char* verdict = res.verdict == SweepVerdict::GE   ? "GE"
                        : res.verdict == SweepVerdict::LT ? "LT"
                                                          : "Inconclusive";
  std::cerr << verdict << " (min margin " << res.min_margin << " over "
            << res.rows.size() << " grid points";
  if (quantum)
    std::cerr << "; mean-program sweep gives necessary conditions only";
  std::cerr << ")\n";
  if (res.witness)
    std::cerr << "witness: " << res.witness->point.describe() << " margin "
              << res.witness->margin << "\n";
  out.emit("sweep.csv", violation_table_csv(res.rows));
  switch (res.verdict) {
    case SweepVerdict::GE: return 0;
    case SweepVerdict::LT: return 1;
    case SweepVerdict::Inconclusive: return 2;
  }
  return 3;
}

// ---- thermal ----

int cmd_thermal_example(double beta, const std::vector<double>& epsilons,
                      const OutputSink& out) {
  GibbsVsThermalReport report = run_gibbs_vs_thermal_example(beta, epsilons);
  std::ostringstream csv, dat;
  csv << "epsilon,gibbs_only,covariant,monotone_initial,monotone_target\n";
  dat << "# log2(1/epsilon)  monotone_initial  monotone_target\n";
  for (const auto& row : report.rows) {
    csv << io::format_double(row.epsilon) << "," << status_name(row.gibbs_only)
        << "," << status_name(row.covariant) << ","
        << io::format_double(row.monotone_initial) << ","
        << io::format_double(row.monotone_target) << "\n";
    dat << io::format_double(std::log2(1.0 / row.epsilon)) << " "
        << io::format_double(row.monotone_initial) << " "
        << io::format_double(row.monotone_target) << "\n";
  }
  out.emit("thermal.csv", csv.str());
  if (!out.dir.empty()) io::write_text_atomic(out.dir + "/thermal.dat", dat.str());

  json j;
  j["beta"] = report.beta;
  j["target_exceeds_initial"] = report.target_exceeds_initial;
  j["target_increasing_as_eps_shrinks"] = report.target_increasing_as_eps_shrinks;
  if (!out.dir.empty())
    io::write_text_atomic(out.dir + "/thermal.json", j.dump(2) + "\n");

  const bool split_seen = !report.rows.empty();
  for (const auto& row : report.rows)
    if (row.gibbs_only != Feasibility::Feasible ||
        row.covariant != Feasibility::Infeasible)
      return 2;
  return split_seen && report.target_exceeds_initial ? 0 : 2;
}

int cmd_thermal_single(const std::string& h_path, double beta,
                       const std::string& state_path, double alpha,
                       double gamma, double time, bool unnormalized,
                       const OutputSink& out) {
  const HermitianMatrix h = io::hermitian_from_json(io::load_json_file(h_path));
  const HermitianMatrix state =
      io::hermitian_from_json(io::load_json_file(state_path));
  const double value = thermal_monotone(ThermalSystem::create(h, beta, state),
                                        alpha, gamma, time, !unnormalized);
  out.emit("thermal_value.csv",
           "alpha,gamma,time,value\n" + io::format_double(alpha) + "," +
               io::format_double(gamma) + "," + io::format_double(time) + "," +
               io::format_double(value) + "\n");
  return 0;
}

// ---- exponent ----

int cmd_exponent(const std::string& group_path, const std::string& rho_path,
                 const std::string& sigma_path, double r, double kappa,
                 const std::string& omega_path, const std::string& group_ref_path,
                 const std::string& alpha_csv, int gamma_res,
                 const OutputSink& out) {
  ExponentQuery query;
  const io::GroupSpec g = io::group_from_json(io::load_json_file(group_path));
  if (g.kind != io::GroupSpec::Kind::Finite)
    throw ParseError("exponent: group file must list finite group elements");
  query.group = g.in_elements;
  query.rho0 = io::hermitian_from_json(io::load_json_file(rho_path));
  query.sigma0 = io::hermitian_from_json(io::load_json_file(sigma_path));
  query.r = r;
  query.kappa = kappa;
  if (!omega_path.empty())
    query.omega = io::hermitian_from_json(io::load_json_file(omega_path));
  else if (kappa > 0.0)
    throw ParseError("exponent: --kappa > 0 needs --omega");
  if (!group_ref_path.empty()) {
    const io::GroupSpec gr =
        io::group_from_json(io::load_json_file(group_ref_path));
    query.group_ref = gr.in_elements;
  }

  ExponentGrid grid = ExponentGrid::defaults();
  if (!alpha_csv.empty()) {
    bool tropical = false;
    grid.alphas = parse_alpha_list(alpha_csv, tropical);
    grid.include_tropical = tropical;
  }
  if (gamma_res > 0) grid.gamma_resolution = gamma_res;

  const double value = kappa > 0.0 ? reference_frame_exponent(query, grid)
                                   : strong_converse_exponent(query, grid);
  out.emit("exponent.csv", "r,kappa,exponent\n" + io::format_double(r) + "," +
                               io::format_double(kappa) + "," +
                               io::format_double(value) + "\n");
  return 0;
}

// ---- selftest ----

int cmd_selftest(std::uint64_t seed);

int dispatch(int argc, char** argv) {
  CLI::App app{
      "submaj: decides and certifies relative submajorization between pairs "
      "of operator families, evaluates the associated monotone families, and "
      "runs the thermodynamic and hypothesis-testing drivers"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_dir;
  app.add_option("--out", out_dir, "directory for output files (written atomically)");

  std::string alpha_csv;
  int gamma_res = 0;
  std::uint64_t seed = 20240808;
  app.add_option("--grid-alpha", alpha_csv,
                 "comma separated alpha grid, 'inf' adds tropical rows");
  app.add_option("--grid-gamma-res", gamma_res, "simplex grid resolution over Y");
  app.add_option("--seed", seed, "seed for randomized self tests");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate spectral points on a family");
  eval->fallthrough();
  std::string family_path, points_path;
  eval->add_option("family", family_path, "family pair JSON")->required();
  eval->add_option("--points", points_path, "spectral point list JSON");

  // feasible
  auto* feas = app.add_subcommand("feasible", "one-shot preorder decision");
  feas->fallthrough();
  std::string p_path, q_path, gibbs_path, group_path;
  bool classical = false, exact = false, trace_preserving = false;
  double tol_feas = 0.0;
  feas->add_option("P", p_path, "left family pair JSON")->required();
  feas->add_option("Q", q_path, "right family pair JSON")->required();
  feas->add_flag("--classical", classical, "classical LP fast path");
  feas->add_flag("--exact", exact, "require T(rho) = rho' (two-sided)");
  feas->add_flag("--trace-preserving", trace_preserving, "require a channel");
  feas->add_option("--gibbs", gibbs_path, "state JSON that T must fix");
  feas->add_option("--equivariant", group_path, "group JSON for equivariance");
  feas->add_option("--tol-feas", tol_feas, "feasibility slack tolerance");

  // asymptotic
  auto* asym = app.add_subcommand("asymptotic", "grid sweep of the spectrum");
  asym->fallthrough();
  std::string ap_path, aq_path;
  bool catalytic = false, quantum = false;
  double sweep_tol = 1e-9;
  asym->add_option("P", ap_path, "left family pair JSON")->required();
  asym->add_option("Q", aq_path, "right family pair JSON")->required();
  asym->add_flag("--catalytic", catalytic, "strict-inequality sufficient check");
  asym->add_flag("--quantum", quantum,
                 "mean-program sweep (necessary conditions, noncommuting sigma)");
  asym->add_option("--tol", sweep_tol, "margin tolerance");

  // thermal
  auto* thermal = app.add_subcommand("thermal", "thermal-process second laws");
  thermal->fallthrough();
  double beta = 1.0, t_alpha = 2.0, t_gamma = 0.5, t_time = std::numbers::pi;
  bool example = false, unnormalized = false;
  std::string h_path, state_path, eps_csv = "1e-2,1e-3,1e-4";
  thermal->add_option("--beta", beta, "inverse temperature");
  thermal->add_flag("--example", example, "run the Gibbs-preserving vs thermal-process qubit example");
  thermal->add_option("--epsilons", eps_csv, "comma separated epsilon list");
  thermal->add_option("--hamiltonian", h_path, "Hamiltonian JSON");
  thermal->add_option("--state", state_path, "state JSON");
  thermal->add_option("--alpha", t_alpha, "Renyi order");
  thermal->add_option("--gamma", t_gamma, "geometric mean weight");
  thermal->add_option("--time", t_time, "time translation parameter");
  thermal->add_flag("--unnormalized-gibbs", unnormalized,
                    "use e^(-beta H) instead of the normalized Gibbs state");

  // exponent
  auto* expo = app.add_subcommand("exponent", "strong converse exponents");
  expo->fallthrough();
  std::string eg_path, er_path, es_path, eo_path, egr_path;
  double rate = 0.0, kappa = 0.0;
  expo->add_option("--group", eg_path, "finite group JSON")->required();
  expo->add_option("--rho", er_path, "rho0 JSON")->required();
  expo->add_option("--sigma", es_path, "sigma0 JSON")->required();
  expo->add_option("--r", rate, "type-II decay rate in bits")->required();
  expo->add_option("--kappa", kappa, "reference frames per sample");
  expo->add_option("--omega", eo_path, "reference state JSON");
  expo->add_option("--group-ref", egr_path, "reference representation JSON");

  // selftest
  app.add_subcommand("selftest", "run the built-in verification battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  OutputSink sink{out_dir};
  if (eval->parsed())
    return cmd_eval(family_path, points_path, make_grid(alpha_csv, gamma_res),
                    sink);
  if (feas->parsed())
    return cmd_feasible(p_path, q_path, classical, exact, trace_preserving,
                        gibbs_path, group_path, tol_feas, sink);
  if (asym->parsed())
    return cmd_asymptotic(ap_path, aq_path, make_grid(alpha_csv, gamma_res),
                          catalytic, quantum, sweep_tol, sink);
  if (thermal->parsed()) {
    if (example) {
      bool ignore = false;
      std::vector<double> epsilons = parse_alpha_list(eps_csv, ignore);
      return cmd_thermal_example(beta, epsilons, sink);
    }
    if (h_path.empty() || state_path.empty())
      throw ParseError("thermal: need --example or both --hamiltonian and --state");
    return cmd_thermal_single(h_path, beta, state_path, t_alpha, t_gamma,
                              t_time, unnormalized, sink);
  }
  if (expo->parsed())
    return cmd_exponent(eg_path, er_path, es_path, rate, kappa, eo_path,
                        egr_path, alpha_csv, gamma_res, sink);
  return cmd_selftest(seed);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

// ---- selftest implementation ----

namespace {

struct SelfTest {
  int failures = 0;
  void check(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name;
    if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
  }
};

HermitianMatrix st_random_pd(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = cplx{g(rng), g(rng)};
  Matrix p = m * m.adjoint();
  for (std::size_t i = 0; i < d; ++i) p(i, i) += 0.1;
  return hermitian_unchecked(std::move(p));
}

int cmd_selftest(std::uint64_t seed) {
  SelfTest st;
  std::mt19937_64 rng(seed);

  // kernel equivalence
  {
    namespace kd = submaj::kernels::detail;
    bool ok = true;
    if (kd::avx2_available()) {
      std::normal_distribution<double> g(0.0, 1.0);
      for (int trial = 0; trial < 10 && ok; ++trial) {
        const std::size_t m = 3 + trial % 4, k = 2 + trial % 5, n = 1 + trial % 7;
        std::vector<cplx> a(m * k), b(k * n), c1(m * n), c2(m * n);
        for (auto& z : a) z = cplx{g(rng), g(rng)};
        for (auto& z : b) z = cplx{g(rng), g(rng)};
        kd::gemm_scalar(a.data(), b.data(), c1.data(), m, k, n);
        kd::gemm_avx2(a.data(), b.data(), c2.data(), m, k, n);
        for (std::size_t i = 0; i < c1.size(); ++i)
          if (std::abs(c1[i] - c2[i]) > 1e-12) ok = false;
      }
      st.check("kernel equivalence (scalar vs avx2)", ok);
    } else {
      st.check("kernel equivalence (avx2 unavailable, scalar only)", true);
    }
  }

  // eigensolver reconstruction
  {
    bool ok = true;
    for (std::size_t d = 1; d <= 8 && ok; ++d) {
      HermitianMatrix a = st_random_pd(rng, d);
      auto ed = eig(a);
      Matrix lam(d, d);
      for (std::size_t i = 0; i < d; ++i) lam(i, i) = ed.eigenvalues[i];
      Matrix rec = ed.eigenvectors * lam * ed.eigenvectors.adjoint();
      if ((rec - a.mat()).max_abs() > 1e-8 * std::max(1.0, a.max_abs())) ok = false;
    }
    st.check("eigendecomposition reconstruction", ok);
  }

  // geometric mean axioms (spot)
  {
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
      HermitianMatrix a = st_random_pd(rng, 3), b = st_random_pd(rng, 3);
      auto m1 = geometric_mean(a, b, 0.3);
      auto m2 = geometric_mean(b, a, 0.7);
      if ((m1.mat() - m2.mat()).max_abs() > 1e-8 * std::max(1.0, m1.max_abs()))
        ok = false;
      auto bigger = geometric_mean(a + st_random_pd(rng, 3), b, 0.3);
      if (!loewner_geq(bigger, m1, 1e-7)) ok = false;
    }
    st.check("geometric mean symmetry and monotonicity (100 instances)", ok);
  }

  // data processing spot checks
  {
    bool ok = true;
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 50 && ok; ++trial) {
      Matrix raw(4, 2);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 2; ++j) raw(i, j) = cplx{g(rng), g(rng)};
      // Gram-Schmidt on two columns
      Matrix v(4, 2);
      double n0 = 0.0;
      for (int i = 0; i < 4; ++i) n0 += std::norm(raw(i, 0));
      for (int i = 0; i < 4; ++i) v(i, 0) = raw(i, 0) / std::sqrt(n0);
      cplx ip{0.0, 0.0};
      for (int i = 0; i < 4; ++i) ip += std::conj(v(i, 0)) * raw(i, 1);
      double n1 = 0.0;
      for (int i = 0; i < 4; ++i) {
        raw(i, 1) -= ip * v(i, 0);
        n1 += std::norm(raw(i, 1));
      }
      for (int i = 0; i < 4; ++i) v(i, 1) = raw(i, 1) / std::sqrt(n1);

      HermitianMatrix rho = st_random_pd(rng, 2);
      rho = (0.9 / rho.trace()) * rho;
      HermitianMatrix sig = st_random_pd(rng, 2);
      auto push = [&](const HermitianMatrix& m) {
        return partial_trace(hermitian_unchecked(v * m.mat() * v.adjoint()), 2,
                             2, 2);
      };
      for (double alpha : {1.5, 2.0, 3.0}) {
        if (sandwiched_divergence(push(rho), push(sig), alpha) >
            sandwiched_divergence(rho, sig, alpha) + 1e-7)
          ok = false;
        if (sandwiched_geometric_divergence(push(rho), push(sig), alpha, 0.5) >
            sandwiched_geometric_divergence(rho, sig, alpha, 0.5) + 1e-7)
          ok = false;
      }
    }
    st.check("data processing inequalities (50 random channels)", ok);
  }

  // classical LP vs quantum SDP agreement
  {
    bool ok = true;
    int marginal = 0;
    std::uniform_real_distribution<double> u(0.1, 1.0);
    for (int trial = 0; trial < 40 && ok; ++trial) {
      const std::size_t d = 2 + trial % 3;
      std::vector<double> pa(d), qa(d), pb(d), qb(d);
      for (std::size_t i = 0; i < d; ++i) {
        pa[i] = u(rng);
        qa[i] = u(rng);
        pb[i] = u(rng);
        qb[i] = u(rng);
      }
      FamilyPair p = FamilyPair::create({"x"}, {"y"},
                                        {HermitianMatrix::diagonal(pa)},
                                        {HermitianMatrix::diagonal(qa)});
      FamilyPair q = FamilyPair::create({"x"}, {"y"},
                                        {HermitianMatrix::diagonal(pb)},
                                        {HermitianMatrix::diagonal(qb)});
      auto lp_rep = decide_submajorization_classical(p, q);
      auto sdp_rep = decide_submajorization(p, q);
      if (lp_rep.status == Feasibility::Marginal ||
          sdp_rep.status == Feasibility::Marginal) {
        ++marginal;
        continue;
      }
      if (lp_rep.status != sdp_rep.status) ok = false;
    }
    st.check("classical LP and quantum SDP agree (40 diagonal instances)",
             ok && marginal <= 2,
             "marginal count " + std::to_string(marginal));
  }

  // thermal example
  {
    auto report = run_gibbs_vs_thermal_example(1.0, {1e-2, 1e-3});
    const double limit = 0.5 * std::log2(1.0 + std::exp(1.0));
    st.check("thermal example: Gibbs-preserving feasible",
             report.rows[0].gibbs_only == Feasibility::Feasible);
    st.check("thermal example: covariant infeasible",
             report.rows[0].covariant == Feasibility::Infeasible);
    st.check("thermal example: monotone near the closed-form limit",
             std::abs(report.rows[1].monotone_initial - limit) < 0.02);
    st.check("thermal example: target monotone diverging",
             report.target_exceeds_initial &&
                 report.target_increasing_as_eps_shrinks);
  }

  // exponent limits
  {
    ExponentGrid grid = ExponentGrid::defaults();
    ExponentQuery q;
    q.group = {Matrix::identity(2)};
    q.rho0 = HermitianMatrix::diagonal({0.3, 0.7});
    q.sigma0 = q.rho0;
    q.r = 0.8;
    st.check("exponent: same-state rate equals r",
             std::abs(strong_converse_exponent(q, grid) - 0.8) < 1e-9);
  }

  // sweep determinism
  {
    FamilyPair p = FamilyPair::create(
        {"x"}, {"y0", "y1"},
        {HermitianMatrix::diagonal({0.9, 0.2})},
        {HermitianMatrix::diagonal({0.5, 0.5}), HermitianMatrix::diagonal({0.4, 0.8})});
    SweepGrid grid;
    auto r1 = sweep_decide_asymptotic_commuting(p, p, grid);
    auto r2 = sweep_decide_asymptotic_commuting(p, p, grid);
    st.check("sweep determinism",
             violation_table_csv(r1.rows) == violation_table_csv(r2.rows));
  }

  std::cout << (st.failures == 0 ? "selftest: all checks passed\n"
                                 : "selftest: FAILURES\n");
  return st.failures == 0 ? 0 : 1;
}

}  // namespace
