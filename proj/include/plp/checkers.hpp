#pragma once

// Exact checkers guarding every float-derived result. A basis proposed by the
// float solver is re-derived in rational arithmetic before use; regions are
// tested for flatness exactly; witness points are confirmed by substitution.

#include "plp/geo_lp.hpp"
#include "plp/matrix.hpp"
#include "plp/plp_problem.hpp"
#include "plp/polyhedron.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plp {

// Default margin for witness confirmation, the rational twin of the float
// tolerance: a confirmed witness is visibly separated even in binary64.
inline const Rational kWitnessMargin = Rational(1, 10000000);

enum class BasisVerdict {
  Verified,   // basis columns independent, basic solution nonnegative
  NotABasis,  // columns dependent, or they fail to span the row space
  Infeasible  // valid basis but a basic value is negative, or 0 = c row
};

struct BasisCheck {
  BasisVerdict verdict = BasisVerdict::NotABasis;
  EchelonResult echelon;   // M reduced on the basis columns (valid unless NotABasis)
  RatVec basic_values;     // parallel to the basis argument
  bool degenerate = false; // some basic value is exactly zero
};

// Exact re-derivation of the basic solution for a proposed basis of the PLP
// constraint matrix. Never trusts float output: the verdict depends only on
// rational arithmetic over M.
inline BasisCheck verify_feasible_basis(const PlpProblem& p,
                                        const std::vector<std::size_t>& basis) {
  BasisCheck out;
  for (std::size_t c : basis)
    if (c >= p.n_vars) return out;  // const column or out of range: NotABasis
  EchelonResult er = row_echelon(p.m, basis);
  if (!er.missing_pivots.empty()) return out;  // dependent columns
  // Unpivoted rows must be all-zero on the lambda columns...
  std::vector<bool> pivot_row(p.m.rows(), false);
  for (const auto& [r, c] : er.pivots) pivot_row[r] = true;
  for (std::size_t r = 0; r < p.m.rows(); ++r) {
    if (pivot_row[r]) continue;
    for (std::size_t j = 0; j < p.n_vars; ++j)
      if (er.reduced.at(r, j) != 0) return out;  // basis does not span: NotABasis
  }
  out.echelon = std::move(er);
  // ...and their right-hand sides must vanish, else the system is inconsistent.
  for (std::size_t r = 0; r < p.m.rows(); ++r) {
    if (pivot_row[r]) continue;
    if (out.echelon.reduced.at(r, p.n_vars) != 0) {
      out.verdict = BasisVerdict::Infeasible;
      return out;
    }
  }
  out.basic_values.assign(basis.size(), Rational(0));
  bool neg = false;
  for (const auto& [r, c] : out.echelon.pivots) {
    const Rational& v = out.echelon.reduced.at(r, p.n_vars);
    for (std::size_t bi = 0; bi < basis.size(); ++bi)
      if (basis[bi] == c) out.basic_values[bi] = v;
    if (v < 0) neg = true;
    if (v == 0) out.degenerate = true;
  }
  out.verdict = neg ? BasisVerdict::Infeasible : BasisVerdict::Verified;
  return out;
}

struct FlatCheck {
  bool flat = false;
  std::optional<RatPoint> witness;  // interior scale witness when not flat
};

// Exact interior test for cones (rows sharing a common zero): the cone has an
// interior point iff the system shifted by one unit of slack is satisfiable,
// because interior slack scales linearly along the cone. For general rows the
// test is sufficient for an interior but not necessary.
inline FlatCheck flat_region_check(const std::vector<Constraint>& rows, std::size_t dim) {
  FlatCheck out;
  std::vector<Constraint> shifted;
  shifted.reserve(rows.size());
  for (const auto& r : rows)
    shifted.emplace_back(r.coeffs, r.constant - 1);
  auto pt = rat_feasible_point(shifted, dim);
  if (pt)
    out.witness = std::move(*pt);
  else
    out.flat = true;
  return out;
}

struct WitnessCheck {
  bool confirmed = false;
  std::string reason;
};

// Confirms that `point` witnesses the irredundancy of row i: it must violate
// row i's witness target by at least `margin` while satisfying every other
// row. For a nonstrict row the target is the row itself (ordinary violation);
// for a strict row g > 0 the target is the closure complement -g >= 0, so the
// witness strictly satisfies g with margin (showing the boundary is excluded
// by that row alone).
inline WitnessCheck verify_witness(const std::vector<Constraint>& rows, std::size_t i,
                                   const RatPoint& point,
                                   const Rational& margin = kWitnessMargin) {
  WitnessCheck out;
  if (i >= rows.size()) {
    out.reason = "row index out of range";
    return out;
  }
  Rational v = eval_constraint(rows[i], point);
  if (rows[i].rel == Relation::Strict) {
    if (v < margin) {
      out.reason = "point does not strictly satisfy the strict row with margin";
      return out;
    }
  } else if (v > -margin) {
    out.reason = "point does not violate the row with margin";
    return out;
  }
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (j == i) continue;
    if (!satisfies(rows[j], point)) {
      out.reason = "point violates another row";
      return out;
    }
  }
  out.confirmed = true;
  return out;
}

// Symmetric region-to-region adjacency across frontiers. A slot per (region,
// frontier) holds the neighbor's region index once established; the solve is
// not complete until every slot of every non-flat region is set.
class AdjacencyTable {
 public:
  void add_region(std::size_t frontier_count) {
    slots_.emplace_back(frontier_count, std::optional<std::size_t>{});
  }
  std::size_t regions() const { return slots_.size(); }
  std::size_t frontiers(std::size_t r) const { return slots_[r].size(); }
  void set(std::size_t r, std::size_t f, std::size_t neighbor) {
    slots_.at(r).at(f) = neighbor;
  }
  std::optional<std::size_t> get(std::size_t r, std::size_t f) const {
    return slots_.at(r).at(f);
  }
  bool complete() const {
    for (const auto& row : slots_)
      for (const auto& s : row)
        if (!s) return false;
    return true;
  }
  std::vector<std::pair<std::size_t, std::size_t>> unresolved() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t r = 0; r < slots_.size(); ++r)
      for (std::size_t f = 0; f < slots_[r].size(); ++f)
        if (!slots_[r][f]) out.emplace_back(r, f);
    return out;
  }

 private:
  std::vector<std::vector<std::optional<std::size_t>>> slots_;
};

}  // namespace plp
