#pragma once

// Dense two-phase primal simplex on doubles. This is the fast path: it only
// proposes bases; every answer is re-derived and checked in exact arithmetic
// before anything depends on it, so numerical failure here costs time, never
// correctness. Fault injection exists to exercise exactly that recovery.

#include "plp/polyhedron.hpp"
#include "plp/rational.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace plp {

// Comparison tolerance for the float pipeline. Pinned project-wide; callers
// pass it explicitly so a CLI knob can override in one place.
inline constexpr double kFloatTolerance = 1e-7;

enum class FloatLpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

// min c·x  s.t.  A x = b, x >= 0 (dense row-major A).
struct FloatLp {
  std::size_t rows = 0, cols = 0;
  std::vector<double> a;  // rows*cols
  std::vector<double> b;  // rows
  std::vector<double> c;  // cols

  double& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
  double at(std::size_t r, std::size_t col) const { return a[r * cols + col]; }
};

struct FloatLpResult {
  FloatLpStatus status = FloatLpStatus::Infeasible;
  std::vector<std::size_t> basic;  // structural basic columns, ascending
  std::vector<double> lambda;      // size cols
  double objective = 0.0;
};

// Deliberate corruption of the float answer, for testing the exact recovery
// path. wrong_basis swaps one basic column for a nonbasic one after solving;
// premature_opt stops phase 2 after `premature_after` pivots even though
// improving columns remain.
struct FaultInjection {
  bool wrong_basis = false;
  bool premature_opt = false;
  int premature_after = 1;
  std::uint64_t seed = 0;
};

namespace detail {

class FloatTableau {
 public:
  FloatTableau(const FloatLp& p, double tol) : k_(p.rows), n_(p.cols), tol_(tol) {
    t_.assign(k_ * (n_ + k_ + 1), 0.0);
    basic_.resize(k_);
    // flip rows to make b >= 0, then append the artificial identity
    for (std::size_t i = 0; i < k_; ++i) {
      double s = p.b[i] < 0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = s * p.at(i, j);
      at(i, n_ + i) = 1.0;
      rhs(i) = s * p.b[i];
      basic_[i] = n_ + i;
    }
    active_.assign(k_, true);
  }

  std::size_t ncols() const { return n_ + k_; }
  double& at(std::size_t r, std::size_t c) { return t_[r * (n_ + k_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (n_ + k_ + 1) + c]; }
  double& rhs(std::size_t r) { return t_[r * (n_ + k_ + 1) + n_ + k_]; }
  double rhs(std::size_t r) const { return t_[r * (n_ + k_ + 1) + n_ + k_]; }
  bool is_artificial(std::size_t j) const { return j >= n_; }
  const std::vector<std::size_t>& basic() const { return basic_; }
  bool active(std::size_t r) const { return active_[r]; }

  std::vector<double> reduced_costs(const std::vector<double>& cost) const {
    std::vector<double> red(cost);
    for (std::size_t i = 0; i < k_; ++i) {
      if (!active_[i]) continue;
      double cb = cost[basic_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < ncols(); ++j) red[j] -= cb * at(i, j);
    }
    return red;
  }

  // Dantzig pricing: most negative reduced cost, smallest index on ties.
  // Ratio test: smallest ratio, then smallest basic variable index.
  FloatLpStatus iterate(const std::vector<double>& cost, bool ban_artificials,
                        int max_iters, const FaultInjection* faults = nullptr) {
    std::vector<double> red = reduced_costs(cost);
    int pivots = 0;
    for (int it = 0; it < max_iters; ++it) {
      std::size_t enter = ncols();
      double best = -tol_;
      for (std::size_t j = 0; j < ncols(); ++j) {
        if (ban_artificials && is_artificial(j)) continue;
        if (red[j] < best) { best = red[j]; enter = j; }
      }
      if (enter == ncols()) return FloatLpStatus::Optimal;
      if (faults && faults->premature_opt && pivots >= faults->premature_after)
        return FloatLpStatus::Optimal;  // lie: improving column remains

      std::size_t leave = k_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < k_; ++i) {
        if (!active_[i]) continue;
        double aij = at(i, enter);
        if (aij <= tol_) continue;
        double ratio = rhs(i) / aij;
        if (ratio < best_ratio ||
            (ratio == best_ratio && (leave == k_ || basic_[i] < basic_[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave == k_) return FloatLpStatus::Unbounded;
      pivot(leave, enter, red);
      ++pivots;
    }
    return FloatLpStatus::IterationLimit;
  }

  void pivot(std::size_t row, std::size_t col, std::vector<double>& red) {
    double inv = 1.0 / at(row, col);
    for (std::size_t j = 0; j <= ncols(); ++j) t_[row * (n_ + k_ + 1) + j] *= inv;
    at(row, col) = 1.0;  // kill roundoff on the pivot itself
    for (std::size_t i = 0; i < k_; ++i) {
      if (i == row) continue;
      double f = at(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= ncols(); ++j)
        t_[i * (n_ + k_ + 1) + j] -= f * t_[row * (n_ + k_ + 1) + j];
      at(i, col) = 0.0;
    }
    double fr = red[col];
    if (fr != 0.0)
      for (std::size_t j = 0; j < ncols(); ++j) red[j] -= fr * at(row, j);
    red[col] = 0.0;
    basic_[row] = col;
  }

  // Pivot artificial basics to structural columns; rows with no structural
  // entry are dependent and get deactivated.
  void drive_out_artificials() {
    std::vector<double> dummy(ncols(), 0.0);
    for (std::size_t i = 0; i < k_; ++i) {
      if (!active_[i] || !is_artificial(basic_[i])) continue;
      std::size_t col = n_;
      double best = tol_;
      for (std::size_t j = 0; j < n_; ++j)
        if (std::fabs(at(i, j)) > best) { best = std::fabs(at(i, j)); col = j; }
      if (col == n_) {
        active_[i] = false;
        continue;
      }
      pivot(i, col, dummy);
    }
  }

  double phase1_value() const {
    double v = 0.0;
    for (std::size_t i = 0; i < k_; ++i)
      if (active_[i] && is_artificial(basic_[i])) v += rhs(i);
    return v;
  }

 private:
  std::size_t k_, n_;
  double tol_;
  std::vector<double> t_;
  std::vector<std::size_t> basic_;
  std::vector<bool> active_;
};

}  // namespace detail

inline FloatLpResult float_simplex(const FloatLp& p, double tol = kFloatTolerance,
                                   const FaultInjection* faults = nullptr,
                                   int max_iters = 0) {
  if (max_iters <= 0) max_iters = 200 + 40 * static_cast<int>(p.rows + p.cols);
  detail::FloatTableau tab(p, tol);
  FloatLpResult res;

  std::vector<double> phase1(tab.ncols(), 0.0);
  for (std::size_t j = p.cols; j < tab.ncols(); ++j) phase1[j] = 1.0;
  FloatLpStatus st = tab.iterate(phase1, false, max_iters);
  if (st == FloatLpStatus::IterationLimit) {
    res.status = st;
    return res;
  }
  if (tab.phase1_value() > tol) {
    res.status = FloatLpStatus::Infeasible;
    return res;
  }
  tab.drive_out_artificials();

  std::vector<double> phase2(tab.ncols(), 0.0);
  for (std::size_t j = 0; j < p.cols; ++j) phase2[j] = p.c[j];
  st = tab.iterate(phase2, true, max_iters, faults);
  if (st != FloatLpStatus::Optimal) {
    res.status = st;
    return res;
  }

  res.status = FloatLpStatus::Optimal;
  res.lambda.assign(p.cols, 0.0);
  for (std::size_t i = 0; i < p.rows; ++i) {
    if (!tab.active(i)) continue;
    std::size_t j = tab.basic()[i];
    if (!tab.is_artificial(j)) {
      res.basic.push_back(j);
      res.lambda[j] = tab.rhs(i);
    }
  }
  std::sort(res.basic.begin(), res.basic.end());
  res.objective = 0.0;
  for (std::size_t j = 0; j < p.cols; ++j) res.objective += p.c[j] * res.lambda[j];

  if (faults && faults->wrong_basis && !res.basic.empty()) {
    // deterministically swap one basic column for the first nonbasic one
    std::vector<bool> in_basis(p.cols, false);
    for (std::size_t j : res.basic) in_basis[j] = true;
    std::size_t swap_from = faults->seed % res.basic.size();
    for (std::size_t j = 0; j < p.cols; ++j) {
      if (!in_basis[(j + faults->seed) % p.cols]) {
        res.basic[swap_from] = (j + faults->seed) % p.cols;
        std::sort(res.basic.begin(), res.basic.end());
        break;
      }
    }
  }
  return res;
}

// ---- geometric wrapper ------------------------------------------------------
// Inequalities a·x + b >= 0 (or equalities) over free variables, maximizing a
// linear objective. Same x = u − v + slack encoding as the exact twin.

struct FloatGeoRow {
  std::vector<double> a;
  double b = 0.0;
  bool eq = false;
};

struct FloatGeoLp {
  std::size_t dim = 0;
  std::vector<FloatGeoRow> rows;
  std::vector<double> objective;  // maximized; empty = feasibility only
};

struct FloatGeoResult {
  FloatLpStatus status = FloatLpStatus::Infeasible;
  FloatPoint point;
  double value = 0.0;
};

inline FloatGeoResult solve_geo_float(const FloatGeoLp& lp, double tol = kFloatTolerance) {
  const std::size_t m = lp.dim;
  std::size_t n_ineq = 0;
  for (const auto& r : lp.rows)
    if (!r.eq) ++n_ineq;
  FloatLp p;
  p.rows = lp.rows.size();
  p.cols = 2 * m + n_ineq;
  p.a.assign(p.rows * p.cols, 0.0);
  p.b.assign(p.rows, 0.0);
  p.c.assign(p.cols, 0.0);
  std::size_t slack = 2 * m;
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    const FloatGeoRow& row = lp.rows[r];
    for (std::size_t i = 0; i < m; ++i) {
      p.at(r, i) = row.a[i];
      p.at(r, m + i) = -row.a[i];
    }
    if (!row.eq) p.at(r, slack++) = -1.0;
    p.b[r] = -row.b;
  }
  if (!lp.objective.empty())
    for (std::size_t i = 0; i < m; ++i) {
      p.c[i] = -lp.objective[i];
      p.c[m + i] = lp.objective[i];
    }
  FloatLpResult r = float_simplex(p, tol);
  FloatGeoResult out;
  out.status = r.status;
  if (r.status == FloatLpStatus::Optimal) {
    out.point.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) out.point[i] = r.lambda[i] - r.lambda[m + i];
    if (!lp.objective.empty())
      for (std::size_t i = 0; i < m; ++i) out.value += lp.objective[i] * out.point[i];
  }
  return out;
}

}  // namespace plp
