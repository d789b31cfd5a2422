#pragma once

// A region is the set of parameters at which one basis of the PLP stays
// optimal: the conjunction chi_w^T O'_j >= 0 over the nonbasic columns j,
// where O' is the objective template reduced against the basis. Every region
// row vanishes at the normalization parameter, so regions are cones with a
// common apex. The optimal function of the region is Z*(w) = -chi_w^T O'_c
// over the constant column c, an affine form worth exactly 1 at the apex.

#include "plp/checkers.hpp"
#include "plp/minimize.hpp"
#include "plp/plp_problem.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace plp {

struct Region {
  std::vector<std::size_t> basis;          // ascending M columns
  std::vector<Constraint> rows;            // minimized frontier rows (parameter space)
  std::vector<std::size_t> frontier_cols;  // nonbasic M column per kept row
  RatVec zstar;                            // m_params coefficients then the constant
  bool flat = false;                       // no interior: explored through, never emitted
  std::optional<RatPoint> interior_dir;    // y with row(apex + y) >= 1 for all rows
};

inline Rational eval_zstar(const RatVec& zstar, const RatPoint& w) {
  Rational v = zstar.back();
  for (std::size_t k = 0; k + 1 < zstar.size(); ++k)
    if (zstar[k] != 0 && w[k] != 0) v += zstar[k] * w[k];
  return v;
}

struct ExtractionResult {
  Region region;
  bool empty = false;            // a reduced cost is a negative constant: optimal nowhere
  MinimizationResult min_info;   // kept/dropped bookkeeping for audits
};

// Rebuilds the region of a rationally verified basis. `check` must come from
// verify_feasible_basis with verdict Verified (its echelon of M is reused).
inline ExtractionResult extract_region(const PlpProblem& p,
                                       const std::vector<std::size_t>& basis,
                                       const BasisCheck& check) {
  ExtractionResult out;
  out.region.basis = basis;
  std::sort(out.region.basis.begin(), out.region.basis.end());

  RationalMatrix oprime = reconstruct_from_echelon(check.echelon, p.o);

  std::vector<bool> is_basic(p.n_vars, false);
  for (std::size_t c : basis) is_basic[c] = true;

  std::vector<Constraint> cand;
  std::vector<std::size_t> cand_cols;
  for (std::size_t j = 0; j < p.n_vars; ++j) {
    if (is_basic[j]) continue;
    RatVec a(p.m_params);
    bool zero = true;
    for (std::size_t k = 0; k < p.m_params; ++k) {
      a[k] = oprime.at(k, j);
      if (a[k] != 0) zero = false;
    }
    const Rational& b = oprime.at(p.m_params, j);
    if (zero) {
      if (b < 0) {
        out.empty = true;  // reduced cost constantly negative: never optimal
        return out;
      }
      continue;  // constantly nonnegative reduced cost: no constraint
    }
    cand.emplace_back(std::move(a), b);
    cand_cols.push_back(j);
  }

  out.region.zstar.assign(p.m_params + 1, Rational(0));
  for (std::size_t k = 0; k <= p.m_params; ++k)
    out.region.zstar[k] = -oprime.at(k, p.n_vars);
  if (eval_zstar(out.region.zstar, p.norm_param) != 1)
    throw std::logic_error("extract_region: optimal function is not 1 at the apex");
  for (const auto& c : cand)
    if (eval_constraint(c, p.norm_param) != 0)
      throw std::logic_error("extract_region: frontier row does not vanish at the apex");

  // Interior test at a fixed scale (rows are a cone around the apex). The
  // float verdict is only a routing decision: both branches end in exact
  // confirmation.
  std::vector<FloatConstraint> homog(cand.size());
  bool rep_ok = true;
  for (std::size_t i = 0; i < cand.size() && rep_ok; ++i) {
    homog[i].constant = 0.0;
    homog[i].coeffs.reserve(p.m_params);
    for (const auto& x : cand[i].coeffs) {
      auto d = to_double_nearest(x);
      if (!d) { rep_ok = false; break; }
      homog[i].coeffs.push_back(*d);
    }
  }
  FloatInterior fi;
  if (rep_ok) fi = cone_interior_point(homog, p.m_params);

  std::optional<FloatPoint> hint;
  bool use_float = false;
  if (fi.found) {
    FloatPoint x0(p.m_params);
    for (std::size_t k = 0; k < p.m_params; ++k)
      x0[k] = to_double_nearest_or_throw(p.norm_param[k]) + fi.x[k];
    hint = std::move(x0);
    use_float = true;
  } else {
    FlatCheck fc = flat_region_check(cand, p.m_params);
    if (fc.flat) {
      out.region.flat = true;
      out.region.rows = std::move(cand);
      out.region.frontier_cols = std::move(cand_cols);
      return out;
    }
    RatPoint y = std::move(*fc.witness);  // x-space point with all rows >= 1
    for (std::size_t k = 0; k < p.m_params; ++k) y[k] -= p.norm_param[k];
    out.region.interior_dir = std::move(y);
  }

  out.min_info = minimize_hybrid(cand, p.m_params, hint, kFloatTolerance, use_float);
  out.region.rows.reserve(out.min_info.irredundant.size());
  out.region.frontier_cols.reserve(out.min_info.irredundant.size());
  for (std::size_t idx : out.min_info.irredundant) {
    out.region.rows.push_back(cand[idx]);
    out.region.frontier_cols.push_back(cand_cols[idx]);
  }
  return out;
}

inline bool region_contains(const Region& r, const RatPoint& w) {
  for (const auto& c : r.rows)
    if (eval_constraint(c, w) < 0) return false;
  return true;
}

inline bool region_contains_strict(const Region& r, const RatPoint& w) {
  for (const auto& c : r.rows)
    if (eval_constraint(c, w) <= 0) return false;
  return true;
}

// Exact interior representative of a non-flat region: apex + y where every
// row is at least 1 at apex + y. Computed on demand and cached.
inline RatPoint region_interior_rep(const PlpProblem& p, Region& r) {
  if (!r.interior_dir) {
    FlatCheck fc = flat_region_check(r.rows, p.m_params);
    if (fc.flat) throw std::logic_error("region_interior_rep: flat region");
    RatPoint y = std::move(*fc.witness);
    for (std::size_t k = 0; k < p.m_params; ++k) y[k] -= p.norm_param[k];
    r.interior_dir = std::move(y);
  }
  RatPoint rep(p.m_params);
  for (std::size_t k = 0; k < p.m_params; ++k)
    rep[k] = p.norm_param[k] + (*r.interior_dir)[k];
  return rep;
}

}  // namespace plp
