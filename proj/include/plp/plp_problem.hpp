#pragma once

// Parametric-LP formulation of projection and convex hull.
//
// Projection of P = {x : a_i·x + b_i >= 0} onto the non-eliminated variables:
//   minimize   sum_i (a_i·x + b_i) lambda_i + lambda_0     (x = parameters)
//   subject to sum_i (a_i·p + b_i) lambda_i + lambda_0 = 1  (normalization at p)
//              sum_i a_ij lambda_i = 0   for every eliminated j
//              lambda >= 0
// with p a strictly interior point of P, which makes the feasible set a
// polytope: the LP is never unbounded and never infeasible at any parameter.
//
// Convex hull of P and P': same objective over P's multipliers, with the
// combination forced to agree on both generator sets:
//   rows: normalization at p; per dimension j, sum_i a_ij lambda_i =
//   sum_i a'_ij lambda'_i; and matching constant terms.
//
// Matrix layout (shared): columns are [lambda..., lambda_0, (primed block,)
// const]; the const column is the right-hand side. O holds the objective as
// affine forms: row per parameter then a constant row, so the cost vector at
// parameter w is chi_w^T O with chi_w = (w, 1), and after reduction against a
// basis B the entries chi_w^T O'_j are exactly the reduced costs at w.

#include "plp/matrix.hpp"
#include "plp/minimize.hpp"
#include "plp/polyhedron.hpp"
#include "plp/rational_simplex.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace plp {

struct NoInteriorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class PlpKind { Projection, Hull };

struct PlpProblem {
  PlpKind kind = PlpKind::Projection;
  std::size_t n_vars = 0;    // lambda variables (lambda_0 and primed block included)
  std::size_t m_params = 0;  // parameter space dimension
  RationalMatrix m;          // constraints, const column last (index n_vars)
  RationalMatrix o;          // objective template, m_params rows then constant row
  RatPoint norm_point;       // strictly interior normalization point, original space
  RatPoint norm_param;       // its image in parameter space
  std::vector<std::size_t> keep_dims;  // projection: original index per parameter
  Polyhedron input_a;
  Polyhedron input_b;  // hull only

  std::vector<double> m_f;  // float mirror of m, row-major
  std::vector<double> o_f;  // float mirror of o, row-major

  double mf(std::size_t r, std::size_t c) const { return m_f[r * m.cols() + c]; }
  double of(std::size_t r, std::size_t c) const { return o_f[r * o.cols() + c]; }
};

namespace detail {

inline void build_float_mirrors(PlpProblem& p) {
  p.m_f.resize(p.m.rows() * p.m.cols());
  for (std::size_t r = 0; r < p.m.rows(); ++r)
    for (std::size_t c = 0; c < p.m.cols(); ++c)
      p.m_f[r * p.m.cols() + c] = to_double_nearest_or_throw(p.m.at(r, c));
  p.o_f.resize(p.o.rows() * p.o.cols());
  for (std::size_t r = 0; r < p.o.rows(); ++r)
    for (std::size_t c = 0; c < p.o.cols(); ++c)
      p.o_f[r * p.o.cols() + c] = to_double_nearest_or_throw(p.o.at(r, c));
}

}  // namespace detail

// Strictly interior point with small coordinates: float Chebyshev-style
// center, snapped to simple rationals and verified exactly; exact LP fallback
// when snapping cannot be verified. Throws NoInteriorError if the set has no
// strict interior (it may still be nonempty but flat).
inline RatPoint strict_interior_point(const Polyhedron& p) {
  if (p.contradiction()) throw NoInteriorError("input is empty");
  if (p.size() == 0) return RatPoint(p.dimension(), Rational(0));
  FloatInterior fi = interior_point(p.float_mirror());
  if (fi.found) {
    for (std::uint64_t max_den : {1ull << 8, 1ull << 16, 1ull << 32}) {
      RatPoint cand(p.dimension());
      for (std::size_t i = 0; i < p.dimension(); ++i)
        cand[i] = snap_to_simple(fi.x[i], max_den);
      if (p.contains_strict(cand)) return cand;
    }
  }
  SlackResult s = rat_max_min_slack(p.rows(), p.dimension());
  if (!s.feasible || s.delta <= 0) throw NoInteriorError("input has no strict interior");
  return s.point;
}

inline PlpProblem construct_projection(const Polyhedron& input,
                                       std::vector<std::size_t> eliminate,
                                       std::optional<RatPoint> interior = {}) {
  std::sort(eliminate.begin(), eliminate.end());
  eliminate.erase(std::unique(eliminate.begin(), eliminate.end()), eliminate.end());
  for (std::size_t v : eliminate)
    if (v >= input.dimension())
      throw std::invalid_argument("construct_projection: variable out of range");

  PlpProblem p;
  p.kind = PlpKind::Projection;
  p.input_a = input;
  p.norm_point = interior ? *interior : strict_interior_point(input);
  if (!input.contains_strict(p.norm_point))
    throw NoInteriorError("normalization point is not strictly interior");

  for (std::size_t d = 0; d < input.dimension(); ++d)
    if (!std::binary_search(eliminate.begin(), eliminate.end(), d)) p.keep_dims.push_back(d);
  p.m_params = p.keep_dims.size();
  p.norm_param.resize(p.m_params);
  for (std::size_t k = 0; k < p.m_params; ++k) p.norm_param[k] = p.norm_point[p.keep_dims[k]];

  const std::size_t n = input.size();
  p.n_vars = n + 1;  // lambda_1..n, lambda_0
  p.m = RationalMatrix(1 + eliminate.size(), p.n_vars + 1);
  for (std::size_t i = 0; i < n; ++i) {
    Rational v = eval_constraint(input.row(i), p.norm_point);
    p.m.at(0, i) = v;  // > 0 by strict interiority
  }
  p.m.at(0, n) = 1;      // lambda_0
  p.m.at(0, n + 1) = 1;  // = 1
  for (std::size_t e = 0; e < eliminate.size(); ++e)
    for (std::size_t i = 0; i < n; ++i)
      p.m.at(1 + e, i) = input.row(i).coeffs[eliminate[e]];

  p.o = RationalMatrix(p.m_params + 1, p.n_vars + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < p.m_params; ++k)
      p.o.at(k, i) = input.row(i).coeffs[p.keep_dims[k]];
    p.o.at(p.m_params, i) = input.row(i).constant;
  }
  p.o.at(p.m_params, n) = 1;  // lambda_0 contributes its coefficient, constantly

  detail::build_float_mirrors(p);
  return p;
}

inline PlpProblem construct_hull(const Polyhedron& a, const Polyhedron& b,
                                 std::optional<RatPoint> interior = {}) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("construct_hull: dimension mismatch");
  PlpProblem p;
  p.kind = PlpKind::Hull;
  p.input_a = a;
  p.input_b = b;
  p.norm_point = interior ? *interior : strict_interior_point(a);
  if (!a.contains_strict(p.norm_point))
    throw NoInteriorError("normalization point is not strictly interior");
  // Boundedness of the multiplier polytope needs an interior on both sides.
  strict_interior_point(b);

  const std::size_t d = a.dimension(), n = a.size(), n2 = b.size();
  p.m_params = d;
  p.keep_dims.resize(d);
  for (std::size_t k = 0; k < d; ++k) p.keep_dims[k] = k;
  p.norm_param = p.norm_point;

  p.n_vars = n + 1 + n2 + 1;  // lambda..., lambda_0, lambda'..., lambda'_0
  const std::size_t l0 = n, prim = n + 1, l0p = n + 1 + n2;
  p.m = RationalMatrix(1 + d + 1, p.n_vars + 1);
  for (std::size_t i = 0; i < n; ++i)
    p.m.at(0, i) = eval_constraint(a.row(i), p.norm_point);
  p.m.at(0, l0) = 1;
  p.m.at(0, p.n_vars) = 1;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < n; ++i) p.m.at(1 + j, i) = a.row(i).coeffs[j];
    for (std::size_t i = 0; i < n2; ++i) p.m.at(1 + j, prim + i) = -b.row(i).coeffs[j];
  }
  for (std::size_t i = 0; i < n; ++i) p.m.at(1 + d, i) = a.row(i).constant;
  p.m.at(1 + d, l0) = 1;
  for (std::size_t i = 0; i < n2; ++i) p.m.at(1 + d, prim + i) = -b.row(i).constant;
  p.m.at(1 + d, l0p) = -1;

  p.o = RationalMatrix(d + 1, p.n_vars + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) p.o.at(k, i) = a.row(i).coeffs[k];
    p.o.at(d, i) = a.row(i).constant;
  }
  p.o.at(d, l0) = 1;

  detail::build_float_mirrors(p);
  return p;
}

// Cost vector at parameter w: chi_w^T O per lambda column.
inline RatVec obj_at(const PlpProblem& p, const RatPoint& w) {
  if (w.size() != p.m_params) throw std::invalid_argument("obj_at: parameter dimension");
  RatVec c(p.n_vars, Rational(0));
  for (std::size_t j = 0; j < p.n_vars; ++j) {
    Rational v = p.o.at(p.m_params, j);
    for (std::size_t k = 0; k < p.m_params; ++k)
      if (p.o.at(k, j) != 0 && w[k] != 0) v += p.o.at(k, j) * w[k];
    c[j] = v;
  }
  return c;
}

inline std::vector<double> obj_at_f(const PlpProblem& p, const FloatPoint& w) {
  std::vector<double> c(p.n_vars, 0.0);
  for (std::size_t j = 0; j < p.n_vars; ++j) {
    double v = p.of(p.m_params, j);
    for (std::size_t k = 0; k < p.m_params; ++k) v += p.of(k, j) * w[k];
    c[j] = v;
  }
  return c;
}

// The LP instantiated at parameter w, float and exact flavors.
inline FloatLp make_float_lp(const PlpProblem& p, const FloatPoint& w) {
  FloatLp lp;
  lp.rows = p.m.rows();
  lp.cols = p.n_vars;
  lp.a.resize(lp.rows * lp.cols);
  lp.b.resize(lp.rows);
  for (std::size_t r = 0; r < lp.rows; ++r) {
    for (std::size_t j = 0; j < p.n_vars; ++j) lp.at(r, j) = p.mf(r, j);
    lp.b[r] = p.mf(r, p.n_vars);
  }
  lp.c = obj_at_f(p, w);
  return lp;
}

inline RatLp make_rat_lp(const PlpProblem& p, const RatPoint& w) {
  RatLp lp;
  lp.A = RationalMatrix(p.m.rows(), p.n_vars);
  lp.b.assign(p.m.rows(), Rational(0));
  for (std::size_t r = 0; r < p.m.rows(); ++r) {
    for (std::size_t j = 0; j < p.n_vars; ++j) lp.A.at(r, j) = p.m.at(r, j);
    lp.b[r] = p.m.at(r, p.n_vars);
  }
  lp.c = obj_at(p, w);
  return lp;
}

}  // namespace plp
