#pragma once

// Exact rational scalars and small helpers for moving between the rational
// and binary64 worlds. All arithmetic on Rational is exact; conversions to
// double are correctly rounded (nearest, ties to even).

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace plp {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using RatVec = std::vector<Rational>;
using RatPoint = std::vector<Rational>;
using FloatPoint = std::vector<double>;

// Exact conversion: every finite double is a rational.
inline Rational rat_of_double(double d) {
  if (!std::isfinite(d)) throw std::invalid_argument("rat_of_double: non-finite");
  return Rational(d);
}

// Nearest binary64 image of a rational (ties to even). GMP's mpq_get_d
// truncates toward zero, so the true nearest is either that value or its
// neighbor away from zero; compare both distances exactly.
inline std::optional<double> to_double_nearest(const Rational& r) {
  static const Rational kMax = rat_of_double(std::numeric_limits<double>::max());
  if (r > kMax || r < -kMax) {
    // Could still round down into range only if within half an ulp of max;
    // treat anything beyond max as overflow (the artifact never needs it).
    return std::nullopt;
  }
  double d0 = r.convert_to<double>();  // rounded toward zero
  if (rat_of_double(d0) == r) return d0;
  double d1 = std::nextafter(d0, std::numeric_limits<double>::infinity());
  double dm1 = std::nextafter(d0, -std::numeric_limits<double>::infinity());
  // r lies strictly between d0 and one neighbor; find which side.
  double lo = d0, hi = d0;
  if (r > rat_of_double(d0)) hi = d1; else lo = dm1;
  Rational dlo = r - rat_of_double(lo);
  Rational dhi = rat_of_double(hi) - r;
  if (dlo < dhi) return lo;
  if (dhi < dlo) return hi;
  // Exact tie: adjacent doubles differ by one unit in the last place, so
  // exactly one of the two has an even significand bit pattern.
  std::uint64_t ulo;
  static_assert(sizeof(double) == 8);
  std::memcpy(&ulo, &lo, 8);
  return ((ulo & 1) == 0) ? lo : hi;
}

inline double to_double_nearest_or_throw(const Rational& r) {
  auto d = to_double_nearest(r);
  if (!d) throw std::overflow_error("to_float: entry magnitude exceeds float range");
  return *d;
}

// Best rational approximation of d with denominator <= max_den (continued
// fractions). Used to keep normalization-point entries small; callers must
// verify the snapped point still satisfies whatever made d interesting.
inline Rational snap_to_simple(double d, std::uint64_t max_den = (1ull << 16)) {
  if (!std::isfinite(d)) throw std::invalid_argument("snap_to_simple: non-finite");
  Rational target = rat_of_double(d);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;  // convergents
  Rational x = target;
  bool neg = x < 0;
  if (neg) x = -x;
  while (true) {
    Integer a = numerator(x) / denominator(x);  // floor (x >= 0)
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    Rational frac = x - Rational(a);
    if (frac == 0) break;
    x = Rational(1) / frac;
  }
  Rational best(p1, q1 == 0 ? Integer(1) : q1);
  return neg ? -best : best;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

inline std::string rat_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

// Parses `p`, `-p`, or `p/q`, reducing to lowest terms (mpq_set_str leaves
// the fraction as written, so canonicalize via exact division).
inline Rational rat_parse(const std::string& tok) {
  auto slash = tok.find('/');
  if (slash == std::string::npos) return Rational(Integer(tok));
  Integer num(tok.substr(0, slash));
  Integer den(tok.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rat_parse: zero denominator");
  return Rational(num) / Rational(den);
}

}  // namespace plp
