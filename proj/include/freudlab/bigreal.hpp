#pragma once

// Thin value-semantic wrapper around an MPFR number.  Every value carries its
// own precision; new values are created at the calling thread's working
// precision (see WorkingPrecision).  Binary operations round to the larger of
// the two operand precisions, round-to-nearest throughout.

#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "freudlab/errors.hpp"

namespace freudlab {

/// Number of mantissa bits used for `digits` significant decimal digits.
/// Same rounding rule as Boost.Multiprecision's digits10 -> digits2 mapping.
constexpr unsigned bits_for_digits(unsigned digits) {
  return digits * 1000u / 301u + ((digits * 1000u) % 301u ? 2u : 1u);
}

/// Largest digit count whose bit requirement fits in `bits`.
constexpr unsigned digits_for_bits(unsigned bits) {
  unsigned d = bits * 301u / 1000u + 1u;
  while (d > 1 && bits_for_digits(d) > bits) --d;
  return d;
}

/// Working precision in significant decimal digits (at least 10).
class Precision {
 public:
  static constexpr unsigned kMinDigits = 10;
  static constexpr unsigned kGuardDigits = 10;

  explicit Precision(unsigned digits) : digits_(digits) {
    if (digits < kMinDigits)
      throw DomainError("precision must be at least " + std::to_string(kMinDigits) +
                        " digits, got " + std::to_string(digits));
  }

  unsigned digits() const noexcept { return digits_; }
  unsigned bits() const noexcept { return bits_for_digits(digits_); }

  /// The internal precision used by special functions: p + 10 digits.
  Precision guarded(unsigned extra = kGuardDigits) const { return Precision(digits_ + extra); }

  friend bool operator==(Precision, Precision) = default;
  friend auto operator<=>(Precision, Precision) = default;

 private:
  unsigned digits_;
};

namespace detail {
inline mpfr_prec_t& working_bits() {
  thread_local mpfr_prec_t bits = static_cast<mpfr_prec_t>(bits_for_digits(30));
  return bits;
}
}  // namespace detail

/// RAII: sets the calling thread's working precision for newly created values.
class WorkingPrecision {
 public:
  explicit WorkingPrecision(Precision p) : saved_(detail::working_bits()) {
    detail::working_bits() = static_cast<mpfr_prec_t>(p.bits());
  }
  ~WorkingPrecision() { detail::working_bits() = saved_; }
  WorkingPrecision(const WorkingPrecision&) = delete;
  WorkingPrecision& operator=(const WorkingPrecision&) = delete;

  static Precision current() {
    return Precision(std::max(Precision::kMinDigits,
                              digits_for_bits(static_cast<unsigned>(detail::working_bits()))));
  }

 private:
  mpfr_prec_t saved_;
};

class BigReal {
 public:
  BigReal() {
    mpfr_init2(v_, detail::working_bits());
    mpfr_set_zero(v_, 1);
  }

  template <std::signed_integral I>
  BigReal(I i) {  // NOLINT: implicit on purpose, integers are exact
    mpfr_init2(v_, detail::working_bits());
    mpfr_set_si(v_, static_cast<long>(i), MPFR_RNDN);
  }

  template <std::unsigned_integral U>
  BigReal(U u) {  // NOLINT
    mpfr_init2(v_, detail::working_bits());
    mpfr_set_ui(v_, static_cast<unsigned long>(u), MPFR_RNDN);
  }

  explicit BigReal(double d) {
    mpfr_init2(v_, detail::working_bits());
    mpfr_set_d(v_, d, MPFR_RNDN);
  }

  /// Parses a decimal literal such as "0.9" or "-2.5e-3".
  explicit BigReal(std::string_view text) {
    mpfr_init2(v_, detail::working_bits());
    std::string s(text);
    if (s.empty() || mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
      mpfr_clear(v_);
      throw DomainError("not a decimal number: '" + s + "'");
    }
  }

  /// Copy of `other` rounded to precision `p`.
  BigReal(const BigReal& other, Precision p) {
    mpfr_init2(v_, static_cast<mpfr_prec_t>(p.bits()));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  BigReal(const BigReal& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  BigReal(BigReal&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }

  BigReal& operator=(const BigReal& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigReal& operator=(BigReal&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }

  ~BigReal() { mpfr_clear(v_); }

  static BigReal ratio(long num, long den) {
    BigReal r(num);
    mpfr_div_si(r.v_, r.v_, den, MPFR_RNDN);
    return r;
  }

  static BigReal pi() {
    BigReal r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  /// 10^e at the working precision.
  static BigReal pow10(long e) {
    BigReal r(10);
    mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
  }

  unsigned bits() const noexcept { return static_cast<unsigned>(mpfr_get_prec(v_)); }
  /// The precision this value was computed at.
  Precision precision() const {
    return Precision(std::max(Precision::kMinDigits, digits_for_bits(bits())));
  }

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Scientific notation with `significant` digits, e.g. "6.7598e-01".
  std::string to_string(unsigned significant) const {
    if (significant == 0) significant = 1;
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", static_cast<int>(significant - 1), v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  std::string to_string() const { return to_string(precision().digits()); }

  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  BigReal operator-() const {
    BigReal r = *this;
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  BigReal& operator+=(const BigReal& o) { return apply(o, mpfr_add); }
  BigReal& operator-=(const BigReal& o) { return apply(o, mpfr_sub); }
  BigReal& operator*=(const BigReal& o) { return apply(o, mpfr_mul); }
  BigReal& operator/=(const BigReal& o) { return apply(o, mpfr_div); }

  BigReal& operator+=(long i) { mpfr_add_si(v_, v_, i, MPFR_RNDN); return *this; }
  BigReal& operator-=(long i) { mpfr_sub_si(v_, v_, i, MPFR_RNDN); return *this; }
  BigReal& operator*=(long i) { mpfr_mul_si(v_, v_, i, MPFR_RNDN); return *this; }
  BigReal& operator/=(long i) { mpfr_div_si(v_, v_, i, MPFR_RNDN); return *this; }

  friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
  friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
  friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
  friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }

  friend BigReal operator+(BigReal a, long b) { return a += b; }
  friend BigReal operator-(BigReal a, long b) { return a -= b; }
  friend BigReal operator*(BigReal a, long b) { return a *= b; }
  friend BigReal operator/(BigReal a, long b) { return a /= b; }
  friend BigReal operator+(long a, BigReal b) { return b += a; }
  friend BigReal operator*(long a, BigReal b) { return b *= a; }
  friend BigReal operator-(long a, const BigReal& b) {
    BigReal r(b);
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(long a, const BigReal& b) {
    BigReal r(b);
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0 && !mpfr_nan_p(a.v_); }
  friend std::partial_ordering operator<=>(const BigReal& a, long b) {
    if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.to_string(); }

 private:
  using BinaryOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  BigReal& apply(const BigReal& o, BinaryOp op) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
    op(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

namespace detail {
template <class F>
BigReal unary(const BigReal& x, F f) {
  BigReal r(x);
  f(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline BigReal abs(const BigReal& x) { return detail::unary(x, mpfr_abs); }
inline BigReal sqrt(const BigReal& x) { return detail::unary(x, mpfr_sqrt); }
inline BigReal exp(const BigReal& x) { return detail::unary(x, mpfr_exp); }
inline BigReal log(const BigReal& x) { return detail::unary(x, mpfr_log); }
inline BigReal log10(const BigReal& x) { return detail::unary(x, mpfr_log10); }
inline BigReal cos(const BigReal& x) { return detail::unary(x, mpfr_cos); }

inline BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal r(x);
  if (y.bits() > r.bits()) r = BigReal(x, y.precision());
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

inline BigReal pow(const BigReal& x, long e) {
  BigReal r(x);
  mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

/// Arithmetic-geometric mean.
inline BigReal agm(const BigReal& a, const BigReal& b) {
  BigReal r(a.bits() >= b.bits() ? a : b);
  mpfr_agm(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

inline BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

/// True when a and b agree to `digits` significant digits (relative to the larger magnitude).
inline bool agrees_to(const BigReal& a, const BigReal& b, unsigned digits) {
  if (a == b) return true;
  BigReal scale = max(abs(a), abs(b));
  return abs(a - b) <= scale * BigReal::pow10(-static_cast<long>(digits));
}

}  // namespace freudlab
