#pragma once

// Exact LPs phrased over free geometric variables x ∈ Q^m:
//   maximize obj·x  s.t. rows a·x + b >= 0 (or == 0),
// canonicalized to the simplex standard form via x = u − v plus slacks.
// These back every exact geometric query: feasibility, interior search by
// max-min-slack, irredundancy witnesses, separating points.

#include "plp/polyhedron.hpp"
#include "plp/rational_simplex.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace plp {

struct GeoRow {
  RatVec a;
  Rational b;
  bool eq = false;  // a·x + b == 0 instead of >= 0

  GeoRow() = default;
  GeoRow(RatVec a_, Rational b_, bool eq_ = false)
      : a(std::move(a_)), b(std::move(b_)), eq(eq_) {}
  explicit GeoRow(const Constraint& c) : a(c.coeffs), b(c.constant) {}
};

struct GeoLp {
  std::size_t dim = 0;
  std::vector<GeoRow> rows;
  RatVec objective;  // maximized; empty = pure feasibility
};

struct GeoResult {
  LpStatus status = LpStatus::Infeasible;
  RatPoint point;  // on Optimal
  Rational value = 0;
};

inline GeoResult solve_geo_rational(const GeoLp& lp) {
  const std::size_t m = lp.dim;
  std::size_t n_ineq = 0;
  for (const auto& r : lp.rows)
    if (!r.eq) ++n_ineq;
  const std::size_t nv = 2 * m + n_ineq;
  RatLp p;
  p.A = RationalMatrix(lp.rows.size(), nv);
  p.b.assign(lp.rows.size(), Rational(0));
  p.c.assign(nv, Rational(0));
  std::size_t slack = 2 * m;
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    const GeoRow& row = lp.rows[r];
    if (row.a.size() != m) throw std::invalid_argument("solve_geo: row dimension");
    for (std::size_t i = 0; i < m; ++i) {
      p.A.at(r, i) = row.a[i];
      p.A.at(r, m + i) = -row.a[i];
    }
    if (!row.eq) p.A.at(r, slack++) = -1;  // a·x − s = −b
    p.b[r] = -row.b;
  }
  if (!lp.objective.empty()) {
    for (std::size_t i = 0; i < m; ++i) {
      p.c[i] = -lp.objective[i];  // maximize obj ⇔ minimize −obj
      p.c[m + i] = lp.objective[i];
    }
  }
  RatLpResult r = rational_simplex(p);
  GeoResult out;
  out.status = r.status;
  if (r.status == LpStatus::Optimal) {
    out.point.assign(m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) out.point[i] = r.lambda[i] - r.lambda[m + i];
    if (!lp.objective.empty()) out.value = dot(lp.objective, out.point);
  }
  return out;
}

// Any exact point of {rows}, or none.
inline std::optional<RatPoint> rat_feasible_point(const std::vector<Constraint>& rows,
                                                  std::size_t dim) {
  GeoLp lp;
  lp.dim = dim;
  for (const auto& c : rows) lp.rows.emplace_back(c);
  GeoResult r = solve_geo_rational(lp);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.point;
}

struct SlackResult {
  Rational delta = 0;  // max over x of min over rows of (a·x + b)/weight, capped
  RatPoint point;
  bool feasible = false;
};

// maximize δ s.t. a_r·x + b_r >= δ·w_r for every row, 0 <= δ <= cap.
// weights empty = all-ones. δ > 0 at the optimum certifies interior exactly.
inline SlackResult rat_max_min_slack(const std::vector<Constraint>& rows, std::size_t dim,
                                     const RatVec& weights = {},
                                     const Rational& cap = Rational(1),
                                     const std::vector<Constraint>& extra_hard = {}) {
  GeoLp lp;
  lp.dim = dim + 1;  // x..., δ
  for (std::size_t r = 0; r < rows.size(); ++r) {
    RatVec a(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) a[i] = rows[r].coeffs[i];
    a[dim] = weights.empty() ? Rational(-1) : -weights[r];
    lp.rows.emplace_back(std::move(a), rows[r].constant);
  }
  for (const auto& h : extra_hard) {  // rows that must hold but take no slack
    RatVec a(dim + 1);
    for (std::size_t i = 0; i < dim; ++i) a[i] = h.coeffs[i];
    lp.rows.emplace_back(std::move(a), h.constant);
  }
  {
    RatVec a(dim + 1, Rational(0));
    a[dim] = -1;
    lp.rows.emplace_back(std::move(a), cap);  // δ <= cap
  }
  {
    RatVec a(dim + 1, Rational(0));
    a[dim] = 1;
    lp.rows.emplace_back(std::move(a), Rational(0));  // δ >= 0
  }
  lp.objective.assign(dim + 1, Rational(0));
  lp.objective[dim] = 1;
  GeoResult r = solve_geo_rational(lp);
  SlackResult out;
  if (r.status != LpStatus::Optimal) return out;  // infeasible even at δ=0
  out.feasible = true;
  out.delta = r.point[dim];
  out.point.assign(r.point.begin(), r.point.begin() + dim);
  return out;
}

// Exact irredundancy witness for row i: a point violating row i and satisfying
// the other rows, found by minimizing g_i over {others, g_i <= 0}; an
// unbounded objective is resolved by the shifted feasibility problem g_i <= -1.
// nullopt ⇔ row i is entailed by the others (no violation possible).
inline std::optional<RatPoint> rat_witness_point(const std::vector<Constraint>& rows,
                                                 std::size_t i) {
  const std::size_t dim = rows[i].coeffs.size();
  GeoLp lp;
  lp.dim = dim;
  for (std::size_t j = 0; j < rows.size(); ++j)
    if (j != i) lp.rows.emplace_back(rows[j]);
  RatVec neg(dim);
  for (std::size_t d = 0; d < dim; ++d) neg[d] = -rows[i].coeffs[d];
  lp.rows.emplace_back(neg, -rows[i].constant);  // −g_i >= 0, i.e. g_i <= 0
  lp.objective = neg;                            // maximize −a_i·x
  GeoResult r = solve_geo_rational(lp);
  if (r.status == LpStatus::Infeasible) return std::nullopt;
  if (r.status == LpStatus::Optimal) {
    if (eval_constraint(rows[i], r.point) < 0) return r.point;
    return std::nullopt;
  }
  // Unbounded: any point of {others, g_i <= −1} works and must exist.
  GeoLp lp2;
  lp2.dim = dim;
  for (std::size_t j = 0; j < rows.size(); ++j)
    if (j != i) lp2.rows.emplace_back(rows[j]);
  lp2.rows.emplace_back(neg, -rows[i].constant - 1);
  GeoResult r2 = solve_geo_rational(lp2);
  if (r2.status != LpStatus::Optimal) return std::nullopt;  // cannot happen
  return r2.point;
}

}  // namespace plp
