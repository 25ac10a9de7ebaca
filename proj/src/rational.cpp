#include "adl/rational.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace adl {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::string digits = std::string(whole.empty() ? "0" : whole) + std::string(frac);
    out = Rational(mpz_class(digits, 10), den);
  } else {
    if (!all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(s), 10));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

std::string to_decimal(const Rational& r, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, r.get_d());
  std::string s(buf);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string format_probability(const Rational& r) {
  return to_string(r) + " (" + to_decimal(r) + ")";
}

Rational rationalize(double value, std::int64_t max_den) {
  if (!std::isfinite(value)) throw std::invalid_argument("cannot rationalize a non-finite value");
  bool negative = value < 0;
  double x = std::fabs(value);
  // Convergents h/k of the continued fraction of x.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  while (frac > 1e-15) {
    double inv = 1.0 / frac;
    long a = static_cast<long>(std::floor(inv));
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) {
      // Best semiconvergent that still fits.
      mpz_class room = mpz_class(static_cast<long>(max_den)) - k_prev;
      long a_max = mpz_class(room / k).get_si();
      if (2 * a_max >= a && a_max > 0) {
        mpz_class hs = a_max * h + h_prev, ks = a_max * k + k_prev;
        Rational cand(hs, ks), cur(h, k);
        cand.canonicalize();
        cur.canonicalize();
        if (std::fabs(cand.get_d() - x) < std::fabs(cur.get_d() - x)) {
          h = hs;
          k = ks;
        }
      }
      break;
    }
    mpz_class h_next = a * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    frac = inv - static_cast<double>(a);
  }
  Rational out(h, k);
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

}  // namespace adl
