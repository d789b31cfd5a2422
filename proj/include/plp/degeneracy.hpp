#pragma once

// Degenerate optimal vertices have many bases; each basis tiles part of the
// territory on which the shared optimal function wins. This module walks the
// basis graph of one vertex (pivots along zero-value rows never move the
// vertex) so the engine can emit a complete tiling, and provides the exact
// lexicographic pivot used when crossing a frontier into a neighbor basis.
//
// Because only the objective of the PLP is parametric, the basic solution of
// a basis is a constant vector: degeneracy is an exact, parameter-free test
// on the right-hand side.

#include "plp/checkers.hpp"
#include "plp/plp_problem.hpp"
#include "plp/region.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace plp {

inline bool detect_degenerate(const BasisCheck& check) {
  return check.verdict == BasisVerdict::Verified && check.degenerate;
}

// -1, 0, 1 comparison of rational vectors, first difference decides.
inline int lex_compare(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("lex_compare: size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

// The reduced system of a verified basis with a perturbation identity
// attached: columns [lambda... | const | I]. Pivoting keeps all parts
// consistent; the perturbation block makes every ratio-test comparison
// strict, so the leaving row is always unique.
class ExactTableau {
 public:
  ExactTableau(const PlpProblem& p, const BasisCheck& check) : nv_(p.n_vars) {
    if (check.verdict != BasisVerdict::Verified)
      throw std::invalid_argument("ExactTableau: basis not verified");
    k_ = check.echelon.pivots.size();
    t_ = RationalMatrix(k_, nv_ + 1 + k_);
    basic_.resize(k_);
    for (std::size_t r = 0; r < k_; ++r) {
      const auto& [row, col] = check.echelon.pivots[r];
      for (std::size_t c = 0; c <= nv_; ++c) t_.at(r, c) = check.echelon.reduced.at(row, c);
      t_.at(r, nv_ + 1 + r) = 1;
      basic_[r] = col;
    }
  }

  std::size_t rows() const { return k_; }
  std::size_t basic_col(std::size_t r) const { return basic_[r]; }
  const Rational& at(std::size_t r, std::size_t c) const { return t_.at(r, c); }
  const Rational& rhs(std::size_t r) const { return t_.at(r, nv_); }

  std::vector<std::size_t> basis() const {
    std::vector<std::size_t> b = basic_;
    std::sort(b.begin(), b.end());
    return b;
  }

  bool degenerate() const {
    for (std::size_t r = 0; r < k_; ++r)
      if (rhs(r) == 0) return true;
    return false;
  }

  // Lexicographic ratio test for an entering column: minimize
  // (rhs, perturbation row)/a over rows with a > 0 (optionally only rows with
  // rhs == 0, which is the within-vertex restriction). nullopt = no eligible
  // row, i.e. the direction is unbounded.
  std::optional<std::size_t> lex_leaving(std::size_t enter, bool zero_rows_only) const {
    std::optional<std::size_t> best;
    for (std::size_t r = 0; r < k_; ++r) {
      const Rational& a = t_.at(r, enter);
      if (a <= 0) continue;
      if (zero_rows_only && rhs(r) != 0) continue;
      if (!best) {
        best = r;
        continue;
      }
      const Rational& ab = t_.at(*best, enter);
      // compare (row r)/a against (row best)/ab over [const | perturbation]
      for (std::size_t c = nv_; c < nv_ + 1 + k_; ++c) {
        Rational lhs = t_.at(r, c) * ab;
        Rational rhsv = t_.at(*best, c) * a;
        if (lhs == rhsv) continue;
        if (lhs < rhsv) best = r;
        break;
      }
    }
    return best;
  }

  void pivot(std::size_t row, std::size_t enter) {
    Rational inv = Rational(1) / t_.at(row, enter);
    t_.scale_row(row, inv);
    for (std::size_t r = 0; r < k_; ++r) {
      if (r == row) continue;
      if (t_.at(r, enter) != 0) t_.axpy_row(r, t_.at(r, enter), row);
    }
    basic_[row] = enter;
  }

  // The lambda|const block as an echelon result, suitable for region
  // extraction without re-reducing M.
  EchelonResult to_echelon() const {
    EchelonResult er;
    er.reduced = RationalMatrix(k_, nv_ + 1);
    er.pivots.reserve(k_);
    for (std::size_t r = 0; r < k_; ++r) {
      for (std::size_t c = 0; c <= nv_; ++c) er.reduced.at(r, c) = t_.at(r, c);
      er.pivots.emplace_back(r, basic_[r]);
    }
    return er;
  }

 private:
  std::size_t nv_ = 0, k_ = 0;
  RationalMatrix t_;
  std::vector<std::size_t> basic_;
};

// Breadth-first walk over the degeneracy regions of one optimal vertex.
// Entering candidates are the frontier columns of each visited region;
// the leaving row is the lexicographically smallest ratio over the
// perturbation block, restricted to zero-value rows, so every pivot keeps
// the vertex and keeps the basis feasible for the perturbed problem. Visiting
// only perturbed-feasible bases is what makes the emitted regions tile the
// optimal function's territory without interior overlap: the perturbed
// problem has no primal degeneracy, so no parameter point admits two of
// them as optimal bases. A frontier with no zero-row pivot leads to a
// different optimal function and is left to the task-point loop.
// `process(basis, check, extraction)` sees each visited basis exactly once.
template <typename ProcessFn>
inline void explore_degeneracy(const PlpProblem& p, const std::vector<std::size_t>& start,
                               ProcessFn process) {
  std::set<std::vector<std::size_t>> seen;
  std::deque<std::vector<std::size_t>> queue;
  auto push = [&](std::vector<std::size_t> b) {
    std::sort(b.begin(), b.end());
    if (seen.insert(b).second) queue.push_back(std::move(b));
  };
  push(start);
  while (!queue.empty()) {
    std::vector<std::size_t> b = std::move(queue.front());
    queue.pop_front();
    BasisCheck check = verify_feasible_basis(p, b);
    if (check.verdict != BasisVerdict::Verified)
      throw std::logic_error("explore_degeneracy: lex pivot left the feasible bases");
    ExactTableau tab(p, check);
    ExtractionResult ext = extract_region(p, b, check);
    // flat regions are stored unminimized, so this covers all their columns
    for (std::size_t e : ext.region.frontier_cols) {
      auto leave = tab.lex_leaving(e, /*zero_rows_only=*/true);
      if (!leave) continue;
      std::vector<std::size_t> nb;
      nb.reserve(b.size());
      for (std::size_t c : b)
        if (c != tab.basic_col(*leave)) nb.push_back(c);
      nb.push_back(e);
      push(std::move(nb));
    }
    process(b, check, std::move(ext));
  }
}

}  // namespace plp
