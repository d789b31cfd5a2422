#pragma once

// Constraints and polyhedra in constraint-only representation.
// Fixed orientation: a constraint is coeffs·x + constant >= 0 (or > 0).
// Polyhedra are immutable after construction; the float mirror is built once.

#include "plp/rational.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace plp {

enum class Relation { NonStrict, Strict };

struct Constraint {
  RatVec coeffs;
  Rational constant;
  Relation rel = Relation::NonStrict;

  Constraint() = default;
  Constraint(RatVec c, Rational k, Relation r = Relation::NonStrict)
      : coeffs(std::move(c)), constant(std::move(k)), rel(r) {}

  // Builds a·x <= b (or < b) in the canonical >= 0 orientation.
  static Constraint from_leq(const RatVec& a, const Rational& b,
                             Relation r = Relation::NonStrict) {
    RatVec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return Constraint(std::move(c), b, r);
  }

  bool zero_coeffs() const {
    for (const auto& c : coeffs) if (c != 0) return false;
    return true;
  }
  bool operator==(const Constraint& o) const {
    return rel == o.rel && constant == o.constant && coeffs == o.coeffs;
  }
};

inline Rational eval_constraint(const Constraint& c, const RatPoint& pt) {
  if (c.coeffs.size() != pt.size())
    throw std::invalid_argument("eval_constraint: dimension mismatch");
  Rational v = c.constant;
  for (std::size_t i = 0; i < pt.size(); ++i)
    if (c.coeffs[i] != 0 && pt[i] != 0) v += c.coeffs[i] * pt[i];
  return v;
}

inline bool satisfies(const Constraint& c, const RatPoint& pt) {
  Rational v = eval_constraint(c, pt);
  return c.rel == Relation::Strict ? v > 0 : v >= 0;
}

struct FloatConstraint {
  std::vector<double> coeffs;
  double constant = 0.0;
  Relation rel = Relation::NonStrict;
};

inline double eval_constraint_f(const FloatConstraint& c, const FloatPoint& pt) {
  double v = c.constant;
  for (std::size_t i = 0; i < pt.size(); ++i) v += c.coeffs[i] * pt[i];
  return v;
}

struct FloatPolyhedron {
  std::size_t dimension = 0;
  std::vector<FloatConstraint> rows;
};

class Polyhedron {
 public:
  Polyhedron() = default;
  explicit Polyhedron(std::size_t dim) : dim_(dim) {}

  // Tautology rows (0·x + b >= 0 with b >= 0) are dropped; contradiction rows
  // (0·x + b >= 0 with b < 0, or strict with b <= 0) mark the set unsatisfiable.
  Polyhedron(std::size_t dim, std::vector<Constraint> rows) : dim_(dim) {
    for (auto& r : rows) add_row(std::move(r));
    rebuild_mirror();
  }

  std::size_t dimension() const { return dim_; }
  const std::vector<Constraint>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  const Constraint& row(std::size_t i) const { return rows_.at(i); }
  bool contradiction() const { return contradiction_; }

  const FloatPolyhedron& float_mirror() const { return mirror_; }

  bool contains(const RatPoint& pt) const {
    if (contradiction_) return false;
    for (const auto& r : rows_) if (!satisfies(r, pt)) return false;
    return true;
  }
  bool contains_strict(const RatPoint& pt) const {
    if (contradiction_) return false;
    for (const auto& r : rows_) if (eval_constraint(r, pt) <= 0) return false;
    return true;
  }

  Polyhedron with_rows(std::vector<Constraint> rows) const {
    return Polyhedron(dim_, std::move(rows));
  }

 private:
  void add_row(Constraint&& r) {
    if (r.coeffs.size() != dim_)
      throw std::invalid_argument("Polyhedron: row dimension mismatch");
    if (r.zero_coeffs()) {
      bool sat = r.rel == Relation::Strict ? r.constant > 0 : r.constant >= 0;
      if (!sat) contradiction_ = true;
      return;  // tautologies and contradictions are not stored
    }
    rows_.push_back(std::move(r));
  }

  void rebuild_mirror() {
    mirror_.dimension = dim_;
    mirror_.rows.clear();
    mirror_.rows.reserve(rows_.size());
    for (const auto& r : rows_) {
      FloatConstraint f;
      f.rel = r.rel;
      f.constant = to_double_nearest_or_throw(r.constant);
      f.coeffs.reserve(dim_);
      for (const auto& c : r.coeffs) f.coeffs.push_back(to_double_nearest_or_throw(c));
      mirror_.rows.push_back(std::move(f));
    }
  }

  std::size_t dim_ = 0;
  std::vector<Constraint> rows_;
  FloatPolyhedron mirror_;
  bool contradiction_ = false;
};

inline FloatPolyhedron to_float(const Polyhedron& p) { return p.float_mirror(); }

// ---- text format ----------------------------------------------------------
// line 1: `<dimension> <num_constraints>`
// then one line per constraint: `<a1> ... <ad> <b>` meaning a·x + b >= 0,
// entries are integers or `p/q` in lowest terms; `#` starts a comment line.

inline void print_polyhedron(std::ostream& os, const Polyhedron& p) {
  os << p.dimension() << " " << p.size() << "\n";
  for (const auto& r : p.rows()) {
    for (std::size_t i = 0; i < p.dimension(); ++i)
      os << rat_to_string(r.coeffs[i]) << " ";
    os << rat_to_string(r.constant) << "\n";
  }
}

inline std::string polyhedron_to_string(const Polyhedron& p) {
  std::ostringstream os;
  print_polyhedron(os, p);
  return os.str();
}

namespace detail {
inline bool next_data_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '#') continue;
    return true;
  }
  return false;
}
}  // namespace detail

inline Polyhedron parse_polyhedron(std::istream& is) {
  std::string line;
  if (!detail::next_data_line(is, line))
    throw std::runtime_error("polyhedron parse: missing header line");
  std::istringstream hs(line);
  std::size_t dim = 0, n = 0;
  if (!(hs >> dim >> n))
    throw std::runtime_error("polyhedron parse: bad header line");
  std::vector<Constraint> rows;
  rows.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!detail::next_data_line(is, line))
      throw std::runtime_error("polyhedron parse: fewer rows than declared");
    std::istringstream rs(line);
    RatVec coeffs(dim);
    std::string tok;
    for (std::size_t i = 0; i < dim; ++i) {
      if (!(rs >> tok)) throw std::runtime_error("polyhedron parse: short row");
      coeffs[i] = rat_parse(tok);
    }
    if (!(rs >> tok)) throw std::runtime_error("polyhedron parse: missing constant");
    Rational b = rat_parse(tok);
    std::string extra;
    if (rs >> extra) throw std::runtime_error("polyhedron parse: trailing tokens");
    rows.emplace_back(std::move(coeffs), std::move(b));
  }
  return Polyhedron(dim, std::move(rows));
}

inline Polyhedron parse_polyhedron(const std::string& text) {
  std::istringstream is(text);
  return parse_polyhedron(is);
}

}  // namespace plp
