#pragma once

// Independent verification and benchmarking support: exact Fourier-Motzkin
// projection (the oracle the PLP output is judged against), exact polyhedron
// equality by mutual Farkas entailment, and the seeded random instance
// generator (CN rows, VN variables, projection ratio, zero-coefficient density).

#include "plp/geo_lp.hpp"
#include "plp/minimize.hpp"
#include "plp/polyhedron.hpp"
#include "plp/rational_simplex.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace plp {

inline constexpr std::size_t kFourierMotzkinRowCap = 20000;

namespace detail {

// Rescale to the primitive integer form (positive scale, so the inequality is
// unchanged). Combination steps multiply coefficients, and without this the
// entries compound across eliminations until every pivot is a bignum grind.
inline void make_primitive(Constraint& c) {
  Integer l = denominator(c.constant);
  for (const auto& a : c.coeffs) l = lcm(l, Integer(denominator(a)));
  Integer g = numerator(c.constant) * (l / denominator(c.constant));
  if (g < 0) g = -g;
  for (const auto& a : c.coeffs) {
    Integer n = numerator(a) * (l / denominator(a));
    g = gcd(g, n);
  }
  if (g == 0 || (l == 1 && g == 1)) return;
  Rational s = Rational(l) / Rational(g);
  for (auto& a : c.coeffs) a *= s;
  c.constant *= s;
}

// Derived row together with the set of input rows it combines. The history
// drives Imbert's bound: after eliminating k variables, a row combining more
// than k+1 inputs is a nonnegative combination of other derived rows, so it
// can be dropped without touching the projection.
struct FmRow {
  Constraint c;
  std::vector<std::uint64_t> hist;
};

inline std::size_t hist_count(const std::vector<std::uint64_t>& h) {
  std::size_t n = 0;
  for (std::uint64_t w : h) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

}  // namespace detail

// Exact projection: eliminates the given variables one at a time (greedy,
// cheapest product first), pruning after each step, then drops the
// eliminated coordinates.
// The result lives in the surviving coordinates, original order preserved.
inline Polyhedron fourier_motzkin(const Polyhedron& p, std::vector<std::size_t> eliminate) {
  std::sort(eliminate.begin(), eliminate.end());
  eliminate.erase(std::unique(eliminate.begin(), eliminate.end()), eliminate.end());
  for (std::size_t v : eliminate)
    if (v >= p.dimension()) throw std::invalid_argument("fourier_motzkin: variable out of range");

  std::vector<std::size_t> keep_dims;
  for (std::size_t d = 0; d < p.dimension(); ++d)
    if (!std::binary_search(eliminate.begin(), eliminate.end(), d)) keep_dims.push_back(d);
  auto empty_result = [&] {
    // projection of an empty set: one contradiction row marks it unsatisfiable
    return Polyhedron(keep_dims.size(),
                      {Constraint(RatVec(keep_dims.size(), Rational(0)), Rational(-1))});
  };

  if (p.contradiction()) return empty_result();
  const std::size_t words = (p.size() + 63) / 64;
  std::vector<detail::FmRow> cur;
  cur.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    detail::FmRow r{p.row(i), std::vector<std::uint64_t>(words, 0)};
    r.hist[i / 64] |= std::uint64_t{1} << (i % 64);
    cur.push_back(std::move(r));
  }

  std::size_t eliminated = 0;
  std::vector<std::size_t> remaining = eliminate;  // coordinates dropped at the end
  while (!remaining.empty()) {
    ++eliminated;
    // greedy order: the projection is order-independent, the intermediate row
    // growth is not; take the variable with the smallest product count
    std::size_t pick = 0;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      std::size_t np = 0, nn = 0;
      for (const auto& r : cur) {
        const Rational& c = r.c.coeffs[remaining[k]];
        if (c > 0) ++np;
        else if (c < 0) ++nn;
      }
      if (np * nn < best_cost) {
        best_cost = np * nn;
        pick = k;
      }
    }
    const std::size_t v = remaining[pick];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));

    std::vector<std::size_t> pos, neg;
    std::vector<detail::FmRow> out;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const Rational& c = cur[i].c.coeffs[v];
      if (c > 0) pos.push_back(i);
      else if (c < 0) neg.push_back(i);
      else out.push_back(cur[i]);
    }
    if (pos.size() * neg.size() + out.size() > kFourierMotzkinRowCap)
      throw std::runtime_error("fourier_motzkin: intermediate row cap exceeded");
    for (std::size_t ip : pos)
      for (std::size_t in : neg) {
        const Constraint& cp = cur[ip].c;
        const Constraint& cn = cur[in].c;
        detail::FmRow nr;
        nr.hist.resize(words);
        for (std::size_t w = 0; w < words; ++w) nr.hist[w] = cur[ip].hist[w] | cur[in].hist[w];
        if (detail::hist_count(nr.hist) > eliminated + 1) continue;  // Imbert: redundant
        // cp positive on v, cn negative; cancel v with positive multipliers
        Rational mp = -cn.coeffs[v];
        Rational mn = cp.coeffs[v];
        RatVec a(cp.coeffs.size());
        for (std::size_t d = 0; d < a.size(); ++d) a[d] = mp * cp.coeffs[d] + mn * cn.coeffs[d];
        nr.c = Constraint(std::move(a), mp * cp.constant + mn * cn.constant);
        detail::make_primitive(nr.c);
        bool zero = true;
        for (const auto& ai : nr.c.coeffs)
          if (ai != 0) {
            zero = false;
            break;
          }
        if (zero) {
          if (nr.c.constant < 0) return empty_result();
          continue;  // tautology
        }
        out.push_back(std::move(nr));
      }
    // primitive rows compare syntactically: collapse duplicates and parallel
    // rows, keeping the tightest constant (smaller history on ties)
    {
      std::map<RatVec, std::size_t> best;
      std::vector<detail::FmRow> dedup;
      for (auto& r : out) {
        auto [it, fresh] = best.try_emplace(r.c.coeffs, dedup.size());
        if (fresh) {
          dedup.push_back(std::move(r));
          continue;
        }
        detail::FmRow& held = dedup[it->second];
        if (r.c.constant < held.c.constant ||
            (r.c.constant == held.c.constant &&
             detail::hist_count(r.hist) < detail::hist_count(held.hist)))
          held = std::move(r);
      }
      out = std::move(dedup);
    }
    // prune between steps or the survivors still compound; drop decisions carry
    // exact certificates, keeps need no proof here
    std::vector<Constraint> rows;
    rows.reserve(out.size());
    for (const auto& r : out) rows.push_back(r.c);
    MinimizationResult min =
        minimize_hybrid(rows, p.dimension(), {}, kFloatTolerance, true, /*keep_witnesses=*/false);
    std::vector<detail::FmRow> kept;
    kept.reserve(min.irredundant.size());
    for (std::size_t i : min.irredundant) kept.push_back(std::move(out[i]));
    cur = std::move(kept);
  }

  // project coordinates: keep variables not eliminated, original order
  std::vector<Constraint> rows;
  rows.reserve(cur.size());
  for (const auto& r : cur) {
    RatVec a(keep_dims.size());
    for (std::size_t i = 0; i < keep_dims.size(); ++i) a[i] = r.c.coeffs[keep_dims[i]];
    rows.emplace_back(std::move(a), r.c.constant, r.c.rel);
  }
  return Polyhedron(keep_dims.size(), std::move(rows));
}

// ---- exact polyhedron equality ---------------------------------------------

struct EqualityVerdict {
  bool equal = false;
  // On inequality: a row of one polyhedron and a point of the other violating it.
  std::optional<Constraint> witness_row;
  std::optional<RatPoint> witness_point;
};

namespace detail {

// Searches a point of `inside` strictly violating `row` (proves non-entailment
// with an explicit separating point).
inline std::optional<RatPoint> separating_point(const std::vector<Constraint>& inside,
                                                const Constraint& row) {
  const std::size_t dim = row.coeffs.size();
  GeoLp lp;
  lp.dim = dim + 1;  // x, δ
  for (const auto& c : inside) {
    RatVec a(dim + 1, Rational(0));
    for (std::size_t d = 0; d < dim; ++d) a[d] = c.coeffs[d];
    lp.rows.emplace_back(std::move(a), c.constant);
  }
  {
    RatVec a(dim + 1, Rational(0));  // −g_row − δ >= 0  ⇔  g_row <= −δ
    for (std::size_t d = 0; d < dim; ++d) a[d] = -row.coeffs[d];
    a[dim] = -1;
    lp.rows.emplace_back(std::move(a), -row.constant);
  }
  {
    RatVec a(dim + 1, Rational(0));
    a[dim] = -1;
    lp.rows.emplace_back(std::move(a), Rational(1));  // δ <= 1
  }
  lp.objective.assign(dim + 1, Rational(0));
  lp.objective[dim] = 1;
  GeoResult r = solve_geo_rational(lp);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  if (r.point[dim] <= 0) return std::nullopt;
  return RatPoint(r.point.begin(), r.point.begin() + dim);
}

}  // namespace detail

// Exact set equality via mutual Farkas entailment of every row. Both inputs
// must be feasible or both empty; feasibility is checked first so the Farkas
// test is complete.
inline EqualityVerdict poly_equal(const Polyhedron& a, const Polyhedron& b) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("poly_equal: dimension mismatch");
  EqualityVerdict v;
  std::optional<RatPoint> pa, pb;
  if (!a.contradiction()) pa = rat_feasible_point(a.rows(), a.dimension());
  if (!b.contradiction()) pb = rat_feasible_point(b.rows(), b.dimension());
  if (!pa && !pb) {
    v.equal = true;
    return v;
  }
  if (!pa || !pb) {
    v.equal = false;
    v.witness_point = pa ? *pa : *pb;
    return v;
  }
  auto entails = [&](const Polyhedron& outer, const Polyhedron& inner) -> bool {
    // outer ⊇ inner ⇔ every row of outer holds on inner
    for (const auto& row : outer.rows()) {
      if (farkas_combination(row, inner.rows())) continue;
      v.equal = false;
      v.witness_row = row;
      v.witness_point = detail::separating_point(inner.rows(), row);
      return false;
    }
    return true;
  };
  if (!entails(a, b)) return v;
  if (!entails(b, a)) return v;
  v.equal = true;
  return v;
}

// ---- random instance generator ----------------------------------------------

struct GeneratorParams {
  std::size_t constraint_count = 4;   // CN
  std::size_t variable_count = 2;    // VN
  double projection_ratio = 0.5;     // PR: fraction of variables eliminated
  double density = 0.0;              // D: probability of a zero coefficient
  std::uint64_t seed = 0;
};

// Number of variables a harness eliminates for these parameters.
inline std::size_t eliminate_count(const GeneratorParams& g) {
  auto k = static_cast<std::size_t>(g.projection_ratio * static_cast<double>(g.variable_count) + 0.5);
  if (k == 0) k = 1;
  if (k > g.variable_count) k = g.variable_count;
  return k;
}

// CN rows over VN variables; each coefficient is zero with probability D,
// otherwise a uniform nonzero integer in [−50, 50]; all-zero rows are redrawn.
// Constants embed a random interior point, so the result is full-dimensional
// and nonempty by construction. Deterministic for a given seed: only modular
// draws from mt19937_64, no std::distributions (their mappings vary).
inline Polyhedron generate(const GeneratorParams& g) {
  if (g.density < 0 || g.density >= 1) throw std::invalid_argument("generate: density");
  std::mt19937_64 rng(g.seed);
  const auto zero_bar = static_cast<std::uint64_t>(g.density * 1e6);
  auto draw_zero = [&] { return rng() % 1000000 < zero_bar; };
  auto draw_nonzero = [&] {
    std::uint64_t u = rng() % 100;
    return u < 50 ? static_cast<long>(u + 1) : -static_cast<long>(u - 49);
  };
  RatPoint q(g.variable_count);
  for (auto& x : q) x = static_cast<long>(rng() % 21) - 10;  // interior point coords
  std::vector<Constraint> rows;
  rows.reserve(g.constraint_count);
  for (std::size_t r = 0; r < g.constraint_count; ++r) {
    RatVec a(g.variable_count);
    while (true) {
      bool all_zero = true;
      for (std::size_t d = 0; d < g.variable_count; ++d) {
        a[d] = draw_zero() ? 0 : draw_nonzero();
        if (a[d] != 0) all_zero = false;
      }
      if (!all_zero) break;
    }
    Rational slack = static_cast<long>(rng() % 50) + 1;
    Rational b = slack - dot(a, q);
    rows.emplace_back(std::move(a), std::move(b));
  }
  return Polyhedron(g.variable_count, std::move(rows));
}

}  // namespace plp
