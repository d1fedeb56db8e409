#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "freudlab/bigreal.hpp"
#include "freudlab/errors.hpp"

namespace freudlab {

using Rational = mpq_class;

/// Parses "3", "-1/2", "0.9", "1e-6" or "-2.5E3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> Rational { throw DomainError("not a rational number: '" + s + "'"); };
  if (s.empty()) return fail();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + s + "'");
    Rational r = num / den;
    r.canonicalize();
    return r;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false, seen_digit = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    char ch = s[i];
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits += ch;
      seen_digit = true;
      if (seen_point) --scale;
    } else {
      return fail();
    }
  }
  if (!seen_digit) return fail();
  if (i < s.size()) {
    std::string exponent = s.substr(i + 1);
    if (exponent.empty()) return fail();
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exponent, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != exponent.size()) return fail();
    scale += e;
  }
  mpz_class mantissa(digits, 10);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational r = scale >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// The rational rounded to precision `p`.
inline BigReal to_real(const Rational& r, Precision p) {
  WorkingPrecision wp(p);
  BigReal out;
  mpfr_set_q(out.get(), r.get_mpq_t(), MPFR_RNDN);
  return out;
}

/// Exact square root of a rational when it is a perfect square.
inline bool rational_sqrt(const Rational& r, Rational& root) {
  if (r < 0) return false;
  mpz_class num = r.get_num(), den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  root = Rational(rn, rd);
  root.canonicalize();
  return true;
}

}  // namespace freudlab
