#pragma once

// Exact dense rational matrices: reduced row echelon on designated pivot
// columns, linear-system solving, and the objective reconstruction
// O' = O - O_B M_B^{-1} M used to rebuild a parametric tableau from a basis.

#include "plp/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace plp {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, Rational(0)) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
  }
  void scale_row(std::size_t r, const Rational& f) {
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != 0) at(r, c) *= f;
  }
  // row[dst] -= f * row[src]; f by value since it often aliases an entry of dst
  void axpy_row(std::size_t dst, Rational f, std::size_t src) {
    if (f == 0) return;
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(src, c) != 0) at(dst, c) -= f * at(src, c);
  }

  bool row_is_zero(std::size_t r) const {
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != 0) return false;
    return true;
  }

  RationalMatrix multiply(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("multiply: shape mismatch");
    RationalMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (o.at(k, j) != 0) out.at(i, j) += a * o.at(k, j);
      }
    return out;
  }

  bool operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> e_;
};

struct EchelonResult {
  RationalMatrix reduced;
  // (row, col) of each successful pivot, in pivot_cols order; rows without a
  // pivot are moved below all pivot rows (stable among themselves).
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::vector<std::size_t> missing_pivots;  // requested columns with no pivot
  // Product of the elementary row operations (transform·input == reduced);
  // only filled on request.
  RationalMatrix transform;
};

// Reduced row echelon form pivoting on the requested columns in order.
// Pivot choice: first row (scanning down) with a nonzero entry — exact
// arithmetic needs no numerical pivoting, and the scan order is deterministic.
inline EchelonResult row_echelon(RationalMatrix m,
                                 const std::vector<std::size_t>& pivot_cols,
                                 bool want_transform = false) {
  EchelonResult res;
  RationalMatrix t;
  if (want_transform) t = RationalMatrix::identity(m.rows());
  std::size_t next_row = 0;
  for (std::size_t c : pivot_cols) {
    if (c >= m.cols()) throw std::invalid_argument("row_echelon: pivot column out of range");
    std::size_t pr = next_row;
    while (pr < m.rows() && m.at(pr, c) == 0) ++pr;
    if (pr == m.rows()) {
      res.missing_pivots.push_back(c);
      continue;
    }
    m.swap_rows(pr, next_row);
    if (want_transform) t.swap_rows(pr, next_row);
    Rational inv = Rational(1) / m.at(next_row, c);
    m.scale_row(next_row, inv);
    if (want_transform) t.scale_row(next_row, inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == next_row) continue;
      if (m.at(r, c) != 0) {
        Rational f = m.at(r, c);
        m.axpy_row(r, f, next_row);
        if (want_transform) t.axpy_row(r, f, next_row);
      }
    }
    res.pivots.emplace_back(next_row, c);
    ++next_row;
  }
  res.reduced = std::move(m);
  res.transform = std::move(t);
  return res;
}

// Solves basis·X = rhs exactly. Empty result signals a singular basis
// (the float solver handed us a degenerate/invalid column set).
inline std::optional<RationalMatrix> solve_columns(const RationalMatrix& basis,
                                                   const RationalMatrix& rhs) {
  if (basis.rows() != basis.cols()) throw std::invalid_argument("solve_columns: basis not square");
  if (basis.rows() != rhs.rows()) throw std::invalid_argument("solve_columns: rhs shape mismatch");
  std::size_t n = basis.rows();
  RationalMatrix aug(n, n + rhs.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = basis.at(i, j);
    for (std::size_t j = 0; j < rhs.cols(); ++j) aug.at(i, n + j) = rhs.at(i, j);
  }
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  EchelonResult er = row_echelon(std::move(aug), cols);
  if (!er.missing_pivots.empty()) return std::nullopt;
  RationalMatrix x(n, rhs.cols());
  for (const auto& [r, c] : er.pivots)
    for (std::size_t j = 0; j < rhs.cols(); ++j)
      x.at(c, j) = er.reduced.at(r, n + j);
  return x;
}

// O' = O - Theta·M with Theta = O_B M_B^{-1}, computed by eliminating the
// basic columns of M (identity block after reduction) and subtracting the
// matching multiples of O's basic columns. Columns of O' over basic_cols are
// exactly zero. Works when M's rows are dependent as long as every basic
// column gets a pivot; otherwise the basis is singular.
inline RationalMatrix reconstruct_from_echelon(const EchelonResult& er,
                                               const RationalMatrix& o) {
  RationalMatrix out = o;
  for (const auto& [r, c] : er.pivots) {
    // out -= (column c of o) ⊗ (row r of reduced m); pivot rows are zero at
    // each other's pivot columns, so reading factors from the original o is
    // exact.
    for (std::size_t i = 0; i < o.rows(); ++i) {
      const Rational& f = o.at(i, c);
      if (f == 0) continue;
      for (std::size_t j = 0; j < o.cols(); ++j)
        if (er.reduced.at(r, j) != 0) out.at(i, j) -= f * er.reduced.at(r, j);
    }
  }
  return out;
}

inline std::optional<RationalMatrix> reconstruct_objective(
    const RationalMatrix& m, const RationalMatrix& o,
    const std::vector<std::size_t>& basic_cols) {
  if (m.cols() != o.cols()) throw std::invalid_argument("reconstruct_objective: col mismatch");
  EchelonResult er = row_echelon(m, basic_cols);
  if (!er.missing_pivots.empty()) return std::nullopt;
  return reconstruct_from_echelon(er, o);
}

}  // namespace plp
