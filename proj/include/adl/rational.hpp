#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace adl {

// Exact probabilities. Every stored likelihood and role weight is one of these;
// the semantics branch on exact zero tests, so doubles are only used at the
// solver and sampler boundaries.
using Rational = mpq_class;

// Parses "p/q", an integer, or a plain decimal such as "0.15" (taken exactly as
// 15/100). Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Canonical "p/q" (or "p" when the denominator is 1).
std::string to_string(const Rational& r);

// Short decimal rendering, always with a decimal point: 1 -> "1.0".
std::string to_decimal(const Rational& r, int significant = 10);

// "p/q (d.ddd)", the format every CLI subcommand uses for numbers.
std::string format_probability(const Rational& r);

double to_double(const Rational& r);

// Best rational approximation with denominator <= max_den (continued fractions).
Rational rationalize(double value, std::int64_t max_den);

// n/d in lowest terms. mpq_class(n, d) does not reduce, and unreduced values
// break comparison and arithmetic.
inline Rational ratio(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool in_unit_interval(const Rational& r) { return r >= 0 && r <= 1; }

}  // namespace adl
