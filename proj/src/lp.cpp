#include "submaj/lp.hpp"

#include <cmath>
#include <limits>

namespace submaj::lp {

namespace {

constexpr double kEps = 1e-11;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense tableau simplex. Rows 0..m-1 are constraints, row m the phase-2
// objective, row m+1 the phase-1 objective. Column n is the artificial
// variable used to reach a feasible basis, column n+1 the rhs.
struct Tableau {
  std::size_t m, n;
  std::vector<int> basic, nonbasic;
  std::vector<std::vector<double>> d;

  Tableau(const std::vector<std::vector<double>>& a,
          const std::vector<double>& b, const std::vector<double>& c)
      : m(a.size()), n(c.size()), basic(m), nonbasic(n + 1),
        d(m + 2, std::vector<double>(n + 2, 0.0)) {
    for (std::size_t i = 0; i < m; ++i) {
      basic[i] = static_cast<int>(n + i);
      for (std::size_t j = 0; j < n; ++j) d[i][j] = a[i][j];
      d[i][n] = -1.0;
      d[i][n + 1] = b[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
      nonbasic[j] = static_cast<int>(j);
      d[m][j] = -c[j];
    }
    nonbasic[n] = -1;  // artificial
    d[m + 1][n] = 1.0;
  }

  void pivot(std::size_t r, std::size_t s) {
    const double inv = 1.0 / d[r][s];
    for (std::size_t i = 0; i < m + 2; ++i) {
      if (i == r || std::abs(d[i][s]) <= kEps) continue;
      const double f = d[i][s] * inv;
      for (std::size_t j = 0; j <= n + 1; ++j) d[i][j] -= f * d[r][j];
      d[i][s] = -f;  // column of the leaving variable
    }
    for (std::size_t j = 0; j <= n + 1; ++j)
      if (j != s) d[r][j] *= inv;
    d[r][s] = inv;
    std::swap(basic[r], nonbasic[s]);
  }

  // optimize row `phase` (m+1 during phase 1, m in phase 2)
  bool simplex(std::size_t phase) {
    const std::size_t obj = phase == 1 ? m + 1 : m;
    for (long iter = 0;; ++iter) {
      // entering: most negative reduced cost, ties by lowest variable id;
      // after many degenerate pivots switch to Bland's rule, which cannot
      // cycle
      const bool bland = iter > 2000;
      std::size_t s = n + 1;
      for (std::size_t j = 0; j <= n; ++j) {
        if (phase == 2 && nonbasic[j] == -1) continue;  // artificial is locked
        if (d[obj][j] >= -kEps) continue;
        if (s == n + 1) {
          s = j;
        } else if (bland) {
          if (nonbasic[j] < nonbasic[s]) s = j;
        } else if (d[obj][j] < d[obj][s] - kEps ||
                   (d[obj][j] < d[obj][s] + kEps && nonbasic[j] < nonbasic[s])) {
          s = j;
        }
      }
      if (s == n + 1) return true;
      // leaving: tightest ratio, ties by lowest basic id
      std::size_t r = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (d[i][s] <= kEps) continue;
        if (r == m) {
          r = i;
          continue;
        }
        const double cur = d[i][n + 1] / d[i][s];
        const double best = d[r][n + 1] / d[r][s];
        if (cur < best - kEps ||
            (cur < best + kEps && basic[i] < basic[r]))
          r = i;
      }
      if (r == m) return false;  // unbounded
      pivot(r, s);
    }
  }
};

}  // namespace

Result solve(const std::vector<std::vector<double>>& a,
             const std::vector<double>& b, const std::vector<double>& c) {
  Tableau t(a, b, c);
  Result res;

  std::size_t worst = 0;
  for (std::size_t i = 1; i < t.m; ++i)
    if (t.d[i][t.n + 1] < t.d[worst][t.n + 1]) worst = i;
  if (t.m > 0 && t.d[worst][t.n + 1] < -kEps) {
    // phase 1: bring the artificial variable in, then drive it to zero
    t.pivot(worst, t.n);
    if (!t.simplex(1) || t.d[t.m + 1][t.n + 1] < -1e-9) return res;
    for (std::size_t i = 0; i < t.m; ++i) {
      if (t.basic[i] != -1) continue;
      // artificial still basic at zero: pivot it out on any eligible column
      std::size_t s = 0;
      for (std::size_t j = 1; j <= t.n; ++j)
        if (std::abs(t.d[i][j]) > std::abs(t.d[i][s])) s = j;
      t.pivot(i, s);
    }
  }

  res.feasible = true;
  if (!t.simplex(2)) {
    res.bounded = false;
    return res;
  }
  res.x.assign(t.n, 0.0);
  for (std::size_t i = 0; i < t.m; ++i)
    if (t.basic[i] >= 0 && t.basic[i] < static_cast<int>(t.n))
      res.x[t.basic[i]] = t.d[i][t.n + 1];
  res.objective = 0.0;
  for (std::size_t j = 0; j < t.n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

}  // namespace submaj::lp
