#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace horolab {

/// Exact rational scalar used by every exact-arithmetic path.
using Rational = mpq_class;

/// Serializes as "p/q" (always with an explicit denominator).
std::string to_string(const Rational& q);

/// Accepts "p/q", "p", or a finite decimal literal such as "-0.25".
/// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical p/q; mpq_class comparisons assume canonical form.
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact conversion: every finite double is a dyadic rational.
inline Rational from_double(double x) { return Rational(x); }

inline Rational rabs(const Rational& q) { return Rational(abs(q)); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

std::vector<Rational> parse_rational_list(std::string_view csv);

}  // namespace horolab
