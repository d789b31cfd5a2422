#pragma once

// Exact two-phase simplex on the canonical form  min c·λ  s.t.  Aλ = b, λ >= 0,
// with Bland's rule throughout (termination guaranteed), plus the Farkas
// certificate search used for redundancy decisions.

#include "plp/matrix.hpp"
#include "plp/polyhedron.hpp"
#include "plp/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

namespace plp {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct RatLp {
  RationalMatrix A;  // k x n
  RatVec b;          // k
  RatVec c;          // n, minimized
};

struct RatLpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<std::size_t> basic;  // structural basic columns, one per active row
  RatVec lambda;                   // size n, exact basic solution (Optimal only)
  Rational objective = 0;
};

namespace detail {

class RatTableau {
 public:
  RatTableau(const RationalMatrix& a, const RatVec& b)
      : k_(a.rows()), n_(a.cols()), t_(a.rows(), a.cols() + a.rows() + 1) {
    basis_.resize(k_);
    active_.assign(k_, true);
    for (std::size_t i = 0; i < k_; ++i) {
      bool neg = b[i] < 0;
      for (std::size_t j = 0; j < n_; ++j) t_.at(i, j) = neg ? -a.at(i, j) : a.at(i, j);
      t_.at(i, rhs()) = neg ? -b[i] : b[i];
      t_.at(i, n_ + i) = 1;  // artificial
      basis_[i] = n_ + i;
    }
    artificial_banned_.assign(k_, false);
  }

  std::size_t rhs() const { return n_ + k_; }
  std::size_t ncols() const { return n_ + k_; }  // excluding rhs

  bool is_artificial(std::size_t j) const { return j >= n_; }

  // Reduced-cost row for cost vector over all columns (artificials included).
  RatVec reduced_costs(const RatVec& cost) const {
    RatVec red(ncols() + 1, Rational(0));
    for (std::size_t j = 0; j <= ncols(); ++j) {
      Rational z = 0;
      for (std::size_t i = 0; i < k_; ++i) {
        if (!active_[i]) continue;
        const Rational& cb = cost[basis_[i]];
        if (cb != 0 && t_.at(i, j) != 0) z += cb * t_.at(i, j);
      }
      red[j] = (j < ncols() ? cost[j] : Rational(0)) - z;
    }
    return red;
  }

  // Bland iteration loop. Returns Unbounded or Optimal for the given costs.
  LpStatus iterate(const RatVec& cost) {
    RatVec red = reduced_costs(cost);
    while (true) {
      std::size_t enter = ncols();
      for (std::size_t j = 0; j < ncols(); ++j) {
        if (is_artificial(j) && artificial_banned_[j - n_]) continue;
        if (red[j] < 0) { enter = j; break; }  // Bland: smallest index
      }
      if (enter == ncols()) return LpStatus::Optimal;
      std::size_t leave = k_;
      Rational best_ratio = 0;
      for (std::size_t i = 0; i < k_; ++i) {
        if (!active_[i]) continue;
        const Rational& aij = t_.at(i, enter);
        if (aij <= 0) continue;
        Rational ratio = t_.at(i, rhs()) / aij;
        if (leave == k_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == k_) return LpStatus::Unbounded;
      pivot(leave, enter, &red);
    }
  }

  void pivot(std::size_t row, std::size_t col, RatVec* red) {
    std::size_t old = basis_[row];
    if (is_artificial(old)) artificial_banned_[old - n_] = true;
    Rational inv = Rational(1) / t_.at(row, col);
    t_.scale_row(row, inv);
    for (std::size_t i = 0; i < k_; ++i) {
      if (i == row || !active_[i]) continue;
      t_.axpy_row(i, t_.at(i, col), row);
    }
    if (red) {
      Rational f = (*red)[col];
      if (f != 0)
        for (std::size_t j = 0; j <= ncols(); ++j)
          if (t_.at(row, j) != 0) (*red)[j] -= f * t_.at(row, j);
    }
    basis_[row] = col;
  }

  // After a zero-cost phase 1: pivot artificials out of the basis where a
  // structural column is available; rows with all-zero structural part are
  // dependent and get deactivated.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < k_; ++i) {
      if (!active_[i] || !is_artificial(basis_[i])) continue;
      std::size_t j = 0;
      for (; j < n_; ++j)
        if (t_.at(i, j) != 0) break;
      if (j < n_) {
        pivot(i, j, nullptr);
      } else {
        active_[i] = false;
      }
    }
  }

  std::size_t k_, n_;
  RationalMatrix t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
  std::vector<bool> artificial_banned_;
};

}  // namespace detail

inline RatLpResult rational_simplex(const RatLp& p) {
  const std::size_t k = p.A.rows(), n = p.A.cols();
  detail::RatTableau tab(p.A, p.b);

  RatVec phase1(tab.ncols(), Rational(0));
  for (std::size_t j = n; j < tab.ncols(); ++j) phase1[j] = 1;
  tab.iterate(phase1);  // artificial start is feasible, Unbounded impossible
  Rational infeas = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (tab.active_[i] && tab.is_artificial(tab.basis_[i])) infeas += tab.t_.at(i, tab.rhs());
  RatLpResult res;
  if (infeas != 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  tab.drive_out_artificials();

  RatVec phase2(tab.ncols(), Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = p.c[j];
  LpStatus st = tab.iterate(phase2);
  if (st == LpStatus::Unbounded) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.lambda.assign(n, Rational(0));
  for (std::size_t i = 0; i < k; ++i) {
    if (!tab.active_[i]) continue;
    res.basic.push_back(tab.basis_[i]);
    res.lambda[tab.basis_[i]] = tab.t_.at(i, tab.rhs());
  }
  std::sort(res.basic.begin(), res.basic.end());
  res.objective = dot(res.lambda, p.c);
  return res;
}

// ---- Farkas certificates ----------------------------------------------------

// target = sum mu_j·others_j + offset with mu >= 0, offset >= 0, exact.
struct FarkasCertificate {
  RatVec multipliers;  // one per row of `others`
  Rational offset = 0;
};

inline bool farkas_verify(const FarkasCertificate& cert, const Constraint& target,
                          const std::vector<Constraint>& others) {
  if (cert.multipliers.size() != others.size() || cert.offset < 0) return false;
  std::size_t dim = target.coeffs.size();
  RatVec acc(dim, Rational(0));
  Rational cacc = cert.offset;
  for (std::size_t j = 0; j < others.size(); ++j) {
    const Rational& mu = cert.multipliers[j];
    if (mu < 0) return false;
    if (mu == 0) continue;
    for (std::size_t d = 0; d < dim; ++d) acc[d] += mu * others[j].coeffs[d];
    cacc += mu * others[j].constant;
  }
  return acc == target.coeffs && cacc == target.constant;
}

// Searches nonnegative multipliers proving the target row redundant w.r.t.
// `others` (relations ignored: closures only — the pipeline is non-strict).
// Complete for feasible `others`; callers guarantee feasibility.
inline std::optional<FarkasCertificate> farkas_combination(
    const Constraint& target, const std::vector<Constraint>& others) {
  const std::size_t dim = target.coeffs.size();
  const std::size_t nv = others.size() + 1;  // mu..., offset
  RatLp lp;
  lp.A = RationalMatrix(dim + 1, nv);
  lp.b.assign(dim + 1, Rational(0));
  lp.c.assign(nv, Rational(0));
  for (std::size_t j = 0; j < others.size(); ++j) {
    if (others[j].coeffs.size() != dim)
      throw std::invalid_argument("farkas_combination: dimension mismatch");
    for (std::size_t d = 0; d < dim; ++d) lp.A.at(d, j) = others[j].coeffs[d];
    lp.A.at(dim, j) = others[j].constant;
  }
  lp.A.at(dim, others.size()) = 1;  // offset slack
  for (std::size_t d = 0; d < dim; ++d) lp.b[d] = target.coeffs[d];
  lp.b[dim] = target.constant;
  RatLpResult r = rational_simplex(lp);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  FarkasCertificate cert;
  cert.multipliers.assign(r.lambda.begin(), r.lambda.begin() + others.size());
  cert.offset = r.lambda[others.size()];
  return cert;
}

// Greedy exact minimization: drops every row Farkas-entailed by the rest.
struct DroppedRow {
  std::size_t row;
  std::vector<std::size_t> others;  // rows the certificate combines, in order
  FarkasCertificate cert;
};
struct ExactMinimization {
  std::vector<std::size_t> kept;  // ascending
  std::vector<DroppedRow> dropped;
};

inline ExactMinimization minimize_exact(const std::vector<Constraint>& rows) {
  ExactMinimization out;
  std::vector<bool> alive(rows.size(), true);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    DroppedRow d;
    d.row = i;
    std::vector<Constraint> others;
    others.reserve(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (j != i && alive[j]) {
        others.push_back(rows[j]);
        d.others.push_back(j);
      }
    auto cert = farkas_combination(rows[i], others);
    if (cert) {
      alive[i] = false;
      d.cert = std::move(*cert);
      out.dropped.push_back(std::move(d));
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (alive[i]) out.kept.push_back(i);
  return out;
}

}  // namespace plp
