#include "submaj/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "submaj/errors.hpp"

namespace submaj::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

void require(bool cond, const std::string& what) {
  if (!cond) fail(what);
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  require(j.is_array() && !j.empty(), "matrix: expected a nonempty array of rows");
  const std::size_t rows = j.size();
  require(j[0].is_array(), "matrix: row must be an array");
  const std::size_t cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    require(j[i].is_array() && j[i].size() == cols, "matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& e = j[i][c];
      if (e.is_number()) {
        m(i, c) = cplx{e.get<double>(), 0.0};
      } else {
        require(e.is_array() && e.size() == 2 && e[0].is_number() &&
                    e[1].is_number(),
                "matrix: entry must be [re, im]");
        m(i, c) = cplx{e[0].get<double>(), e[1].get<double>()};
      }
    }
  }
  return m;
}

json hermitian_to_json(const HermitianMatrix& m) {
  return matrix_to_json(m.mat());
}

HermitianMatrix hermitian_from_json(const json& j) {
  return HermitianMatrix(matrix_from_json(j));
}

json family_to_json(const FamilyPair& p) {
  json j;
  j["dim"] = p.dim;
  j["X"] = p.X_labels;
  j["Y"] = p.Y_labels;
  json rho = json::object(), sigma = json::object();
  for (std::size_t i = 0; i < p.rho.size(); ++i)
    rho[p.X_labels[i]] = hermitian_to_json(p.rho[i]);
  for (std::size_t i = 0; i < p.sigma.size(); ++i)
    sigma[p.Y_labels[i]] = hermitian_to_json(p.sigma[i]);
  j["rho"] = std::move(rho);
  j["sigma"] = std::move(sigma);
  return j;
}

FamilyPair family_from_json(const json& j) {
  require(j.is_object(), "family: expected an object");
  require(j.contains("X") && j.contains("Y"), "family: missing X or Y labels");
  std::vector<std::string> xl = j["X"].get<std::vector<std::string>>();
  std::vector<std::string> yl = j["Y"].get<std::vector<std::string>>();
  const std::size_t dim = j.value("dim", std::size_t{1});
  if (dim == 0) return FamilyPair::zero(std::move(xl), std::move(yl));
  require(j.contains("rho") && j.contains("sigma"),
          "family: missing rho or sigma maps");
  std::vector<HermitianMatrix> rho, sigma;
  for (const auto& l : xl) {
    require(j["rho"].contains(l), "family: rho missing label '" + l + "'");
    rho.push_back(hermitian_from_json(j["rho"][l]));
  }
  for (const auto& l : yl) {
    require(j["sigma"].contains(l), "family: sigma missing label '" + l + "'");
    sigma.push_back(hermitian_from_json(j["sigma"][l]));
  }
  FamilyPair p = FamilyPair::create(std::move(xl), std::move(yl),
                                    std::move(rho), std::move(sigma));
  require(p.dim == dim, "family: declared dim does not match matrices");
  return p;
}

json program_to_json(const MeanProgram& p) {
  json steps = json::array();
  for (const auto& s : p.steps) {
    if (s.op == MeanProgram::Step::Op::Load)
      steps.push_back(json{{"load", s.label}});
    else
      steps.push_back(json{{"geo", json::array({s.reg_a, s.reg_b, s.gamma})}});
  }
  return steps;
}

MeanProgram program_from_json(const json& j) {
  require(j.is_array(), "mean program: expected an array of steps");
  MeanProgram p;
  for (const auto& s : j) {
    require(s.is_object(), "mean program: step must be an object");
    if (s.contains("load")) {
      p.push_load(s["load"].get<std::string>());
    } else if (s.contains("geo")) {
      const json& g = s["geo"];
      require(g.is_array() && g.size() == 3, "mean program: geo needs [a, b, gamma]");
      p.push_geo(g[0].get<std::size_t>(), g[1].get<std::size_t>(),
                 g[2].get<double>());
    } else {
      fail("mean program: step must contain 'load' or 'geo'");
    }
  }
  return p;
}

json measure_to_json(const FiniteMeasure& m) {
  json j = json::object();
  for (std::size_t i = 0; i < m.support.size(); ++i)
    j[m.support[i]] = m.weights[i];
  return j;
}

FiniteMeasure measure_from_json(const json& j) {
  require(j.is_object(), "measure: expected {label: weight}");
  FiniteMeasure m;
  for (const auto& [k, v] : j.items()) {
    require(v.is_number(), "measure: weight must be a number");
    m.support.push_back(k);
    m.weights.push_back(v.get<double>());
  }
  return m;
}

GroupSpec group_from_json(const json& j) {
  require(j.is_object() && j.contains("kind"), "group: missing 'kind'");
  GroupSpec g;
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "finite") {
    g.kind = GroupSpec::Kind::Finite;
    require(j.contains("in"), "group: finite group needs 'in' element list");
    for (const auto& u : j["in"]) g.in_elements.push_back(matrix_from_json(u));
    if (j.contains("out"))
      for (const auto& u : j["out"]) g.out_elements.push_back(matrix_from_json(u));
    else
      g.out_elements = g.in_elements;
    require(g.in_elements.size() == g.out_elements.size(),
            "group: in/out element counts differ");
  } else if (kind == "u1") {
    g.kind = GroupSpec::Kind::U1;
    require(j.contains("h_in"), "group: u1 needs 'h_in'");
    g.h_in = matrix_from_json(j["h_in"]);
    g.h_out = j.contains("h_out") ? matrix_from_json(j["h_out"]) : g.h_in;
  } else {
    fail("group: kind must be 'finite' or 'u1'");
  }
  return g;
}

json parse_json(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // translate byte offset to line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(path + ":" + std::to_string(line) + ":" +
                     std::to_string(col) + ": " + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp + "'");
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error("cannot rename '" + tmp + "' to '" + path + "'");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace submaj::io
