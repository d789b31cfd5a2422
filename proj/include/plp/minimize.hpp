#pragma once

// Hybrid constraint minimization. A float ray-trace from an interior point
// proposes irredundant rows together with witness points; every proposal is
// confirmed in exact arithmetic, and rows the float stage cannot classify are
// settled by exact Farkas certificates. The output is therefore exact no
// matter how badly the float stage misbehaves.

#include "plp/float_simplex.hpp"
#include "plp/geo_lp.hpp"
#include "plp/polyhedron.hpp"
#include "plp/rational_simplex.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace plp {

// ---- float interior points --------------------------------------------------

struct FloatInterior {
  bool found = false;  // delta exceeded the tolerance
  FloatPoint x;
  double delta = 0.0;
};

namespace detail {

inline double norm2(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

inline FloatInterior interior_lp(const std::vector<FloatConstraint>& rows, std::size_t dim,
                                 bool unit_box, double tol) {
  FloatGeoLp lp;
  lp.dim = dim + 1;  // x..., delta
  for (const auto& r : rows) {
    FloatGeoRow g;
    g.a.assign(dim + 1, 0.0);
    for (std::size_t i = 0; i < dim; ++i) g.a[i] = r.coeffs[i];
    double w = norm2(r.coeffs);
    g.a[dim] = w > 0 ? -w : -1.0;
    g.b = r.constant;
    lp.rows.push_back(std::move(g));
  }
  if (unit_box) {
    for (std::size_t i = 0; i < dim; ++i)
      for (double s : {1.0, -1.0}) {
        FloatGeoRow g;
        g.a.assign(dim + 1, 0.0);
        g.a[i] = s;
        g.b = 1.0;  // -1 <= x_i <= 1
        lp.rows.push_back(std::move(g));
      }
  }
  for (double s : {1.0, -1.0}) {  // 0 <= delta <= 1
    FloatGeoRow g;
    g.a.assign(dim + 1, 0.0);
    g.a[dim] = s;
    g.b = s > 0 ? 0.0 : 1.0;
    lp.rows.push_back(std::move(g));
  }
  lp.objective.assign(dim + 1, 0.0);
  lp.objective[dim] = 1.0;
  FloatGeoResult r = solve_geo_float(lp, tol);
  FloatInterior out;
  if (r.status != FloatLpStatus::Optimal) return out;
  out.delta = r.point[dim];
  out.x.assign(r.point.begin(), r.point.begin() + dim);
  out.found = out.delta > tol;
  return out;
}

}  // namespace detail

// Deepest point of a general polyhedron: maximize the minimum distance-like
// slack (a_i·x + b_i)/|a_i| with the slack capped at 1 so unbounded sets
// still give a finite answer. found=false means float judged the set flat.
inline FloatInterior interior_point(const FloatPolyhedron& p, double tol = kFloatTolerance) {
  return detail::interior_lp(p.rows, p.dimension, /*unit_box=*/false, tol);
}

// Cone variant: every row passes through the origin, so slack scales with x
// and "is there an interior" only makes sense at a fixed scale. Restricting
// to the unit box fixes the scale: the cone has an interior iff it has one
// inside the box.
inline FloatInterior cone_interior_point(const std::vector<FloatConstraint>& rows,
                                         std::size_t dim, double tol = kFloatTolerance) {
  return detail::interior_lp(rows, dim, /*unit_box=*/true, tol);
}

// ---- float ray-tracing (fast irredundancy proposals) -------------------------

enum class RowFate { Irredundant, Redundant, Uncertain };

struct RayTraceOutcome {
  std::vector<RowFate> fate;        // per input row
  std::vector<FloatPoint> witness;  // meaningful where fate == Irredundant
};

// One ray per row, from the interior point toward that row's boundary. The
// uniquely-first-hit row of each ray is irredundant, witnessed by a point just
// past the hit. Rows never uniquely hit first stay Uncertain; no row is ever
// declared Redundant here (that requires a certificate, not a miss).
inline RayTraceOutcome ray_trace_minimize(const std::vector<FloatConstraint>& rows,
                                          const FloatPoint& x0, double tol = kFloatTolerance) {
  const std::size_t n = rows.size(), dim = x0.size();
  RayTraceOutcome out;
  out.fate.assign(n, RowFate::Uncertain);
  out.witness.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    double ni = detail::norm2(rows[i].coeffs);
    if (ni <= tol) continue;
    FloatPoint d(dim);
    for (std::size_t k = 0; k < dim; ++k) d[k] = -rows[i].coeffs[k] / ni;
    // first boundary crossing along x0 + s*d for each row approached from inside
    double s1 = std::numeric_limits<double>::infinity();
    double s2 = std::numeric_limits<double>::infinity();
    std::size_t hit = n;
    bool tie = false;
    for (std::size_t j = 0; j < n; ++j) {
      double slope = 0.0;
      for (std::size_t k = 0; k < dim; ++k) slope += rows[j].coeffs[k] * d[k];
      if (slope >= -tol) continue;  // ray does not approach this boundary
      double s = eval_constraint_f(rows[j], x0) / -slope;
      if (s < s1 - tol) {
        s2 = s1;
        s1 = s;
        hit = j;
        tie = false;
      } else if (s <= s1 + tol) {
        tie = true;
        if (s < s2) s2 = s;
      } else if (s < s2) {
        s2 = s;
      }
    }
    if (hit == n || tie) continue;
    if (out.fate[hit] == RowFate::Irredundant) continue;  // already witnessed
    double gap = std::isfinite(s2) ? s2 - s1 : 1.0;
    double sw = s1 + std::min(gap / 2, 1.0);
    FloatPoint w(dim);
    for (std::size_t k = 0; k < dim; ++k) w[k] = x0[k] + sw * d[k];
    // float sanity: w must violate exactly the hit row
    bool ok = eval_constraint_f(rows[hit], w) < 0;
    for (std::size_t j = 0; ok && j < n; ++j)
      if (j != hit && eval_constraint_f(rows[j], w) < 0) ok = false;
    if (!ok) continue;
    out.fate[hit] = RowFate::Irredundant;
    out.witness[hit] = std::move(w);
  }
  return out;
}

// ---- float witness search (slow path before going exact) --------------------

struct WitnessVerdict {
  RowFate fate = RowFate::Uncertain;
  FloatPoint point;  // on Irredundant
};

// Minimizes g_i over {other rows, g_i <= 0}: a value below -tol yields a
// violation witness, infeasibility suggests redundancy, an unbounded ray is
// resolved by the shifted feasibility problem {others, g_i <= -1}.
inline WitnessVerdict witness_point(const std::vector<FloatConstraint>& rows,
                                    std::size_t i, double tol = kFloatTolerance) {
  const std::size_t dim = rows[i].coeffs.size();
  WitnessVerdict out;
  FloatGeoLp lp;
  lp.dim = dim;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (j == i) continue;
    FloatGeoRow g;
    g.a = rows[j].coeffs;
    g.b = rows[j].constant;
    lp.rows.push_back(std::move(g));
  }
  FloatGeoRow cap;
  cap.a.assign(dim, 0.0);
  for (std::size_t k = 0; k < dim; ++k) cap.a[k] = -rows[i].coeffs[k];
  cap.b = -rows[i].constant;  // -g_i >= 0
  lp.rows.push_back(cap);
  lp.objective = cap.a;  // maximize -a_i·x, i.e. minimize g_i
  FloatGeoResult r = solve_geo_float(lp, tol);
  if (r.status == FloatLpStatus::Infeasible) {
    out.fate = RowFate::Redundant;
    return out;
  }
  if (r.status == FloatLpStatus::Optimal) {
    double gi = eval_constraint_f(rows[i], r.point);
    if (gi <= -tol) {
      out.fate = RowFate::Irredundant;
      out.point = std::move(r.point);
    }
    return out;  // |g_i| < tol stays Uncertain
  }
  if (r.status == FloatLpStatus::Unbounded) {
    FloatGeoLp lp2;
    lp2.dim = dim;
    for (std::size_t j = 0; j + 1 < lp.rows.size(); ++j) lp2.rows.push_back(lp.rows[j]);
    FloatGeoRow shifted = cap;
    shifted.b -= 1.0;  // g_i <= -1
    lp2.rows.push_back(std::move(shifted));
    FloatGeoResult r2 = solve_geo_float(lp2, tol);
    if (r2.status == FloatLpStatus::Optimal) {
      out.fate = RowFate::Irredundant;
      out.point = std::move(r2.point);
    }
  }
  return out;
}

// ---- exact-confirmed minimization -------------------------------------------

struct MinimizationResult {
  std::vector<std::size_t> irredundant;  // kept rows, ascending input indexes
  std::vector<RatPoint> witnesses;       // parallel: exact violation witness
  std::vector<std::size_t> uncertain;    // rows the float stage failed to settle
  std::vector<DroppedRow> dropped;       // exact certificate per removed row
};

namespace detail {

inline bool confirm_witness(const std::vector<Constraint>& rows,
                            const std::vector<bool>& alive, std::size_t i,
                            const RatPoint& w) {
  if (eval_constraint(rows[i], w) >= 0) return false;
  for (std::size_t j = 0; j < rows.size(); ++j)
    if (j != i && alive[j] && eval_constraint(rows[j], w) < 0) return false;
  return true;
}

inline RatPoint lift_point(const FloatPoint& w) {
  RatPoint r(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) r[k] = rat_of_double(w[k]);
  return r;
}

}  // namespace detail

// Greedy ascending pass over the rows. Keep decisions rest on an exactly
// confirmed witness (a point violating only that row among the still-alive
// ones); drop decisions rest on an exact Farkas certificate. Both survive any
// later removals, so one pass suffices. Rows must be satisfiable as a system;
// the caller checks feasibility first. float_stage=false (or any entry too
// large for binary64) skips the float pipeline and decides everything exactly.
// keep_witnesses=false keeps certificate-less rows without constructing an
// exact witness (keeping is always sound); `witnesses` is then sparse and the
// result may retain redundant rows the float stage could not settle.
inline MinimizationResult minimize_hybrid(const std::vector<Constraint>& rows,
                                          std::size_t dim,
                                          std::optional<FloatPoint> interior_hint = {},
                                          double tol = kFloatTolerance,
                                          bool float_stage = true,
                                          bool keep_witnesses = true) {
  MinimizationResult out;
  const std::size_t n = rows.size();
  if (n == 0) return out;

  std::vector<FloatConstraint> mirror(n);
  for (std::size_t i = 0; i < n && float_stage; ++i) {
    mirror[i].rel = rows[i].rel;
    auto b = to_double_nearest(rows[i].constant);
    if (!b) { float_stage = false; break; }
    mirror[i].constant = *b;
    mirror[i].coeffs.reserve(dim);
    for (const auto& c : rows[i].coeffs) {
      auto d = to_double_nearest(c);
      if (!d) { float_stage = false; break; }
      mirror[i].coeffs.push_back(*d);
    }
  }

  RayTraceOutcome rt;
  rt.fate.assign(n, RowFate::Uncertain);
  rt.witness.assign(n, {});
  FloatPoint x0;
  if (float_stage) {
    if (interior_hint) {
      x0 = *interior_hint;
    } else {
      FloatPolyhedron fp;
      fp.dimension = dim;
      fp.rows = mirror;
      FloatInterior fi = interior_point(fp, tol);
      if (fi.found) x0 = fi.x;
    }
  }
  if (!x0.empty()) rt = ray_trace_minimize(mirror, x0, tol);

  std::vector<bool> alive(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    bool kept = false;
    RowFate float_view = rt.fate[i];  // Irredundant or Uncertain
    if (float_view == RowFate::Irredundant) {
      RatPoint w = detail::lift_point(rt.witness[i]);
      if (detail::confirm_witness(rows, alive, i, w)) {
        out.irredundant.push_back(i);
        out.witnesses.push_back(std::move(w));
        kept = true;
      } else {
        float_view = RowFate::Uncertain;
      }
    }
    if (!kept && float_stage && float_view == RowFate::Uncertain) {
      WitnessVerdict v = witness_point(mirror, i, tol);
      float_view = v.fate;
      if (v.fate == RowFate::Irredundant) {
        RatPoint w = detail::lift_point(v.point);
        if (detail::confirm_witness(rows, alive, i, w)) {
          out.irredundant.push_back(i);
          out.witnesses.push_back(std::move(w));
          kept = true;
        } else {
          float_view = RowFate::Uncertain;
        }
      }
    }
    if (kept) continue;
    if (float_view == RowFate::Uncertain) out.uncertain.push_back(i);

    // exact stage: certificate or confirmed keep
    DroppedRow d;
    d.row = i;
    std::vector<Constraint> others;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && alive[j]) {
        others.push_back(rows[j]);
        d.others.push_back(j);
      }
    auto cert = farkas_combination(rows[i], others);
    if (cert) {
      alive[i] = false;
      d.cert = std::move(*cert);
      out.dropped.push_back(std::move(d));
      continue;
    }
    if (!keep_witnesses) {
      out.irredundant.push_back(i);
      continue;
    }
    // no certificate: the row is irredundant; build its witness exactly
    std::vector<Constraint> sub = others;
    sub.push_back(rows[i]);
    auto w = rat_witness_point(sub, sub.size() - 1);
    if (!w)
      throw std::logic_error("minimize_hybrid: no certificate and no witness (infeasible input?)");
    out.irredundant.push_back(i);
    out.witnesses.push_back(std::move(*w));
  }
  return out;
}

}  // namespace plp
