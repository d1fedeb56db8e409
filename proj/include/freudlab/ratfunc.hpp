#pragma once

// Polynomials and rational functions in one formal symbol r over ℚ.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "freudlab/bigreal.hpp"
#include "freudlab/errors.hpp"
#include "freudlab/rational.hpp"

namespace freudlab {

/// Polynomial in r with rational coefficients, ascending, no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c) : Polynomial(Rational(c)) {}
  Polynomial(const Rational& c) {
    if (c != 0) c_.push_back(c);
  }
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial r() { return Polynomial(std::vector<Rational>{0, 1}); }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& lead() const { return c_.back(); }
  Rational coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const std::vector<Rational>& coefficients() const { return c_; }

  Rational operator()(const Rational& x) const {
    Rational out = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * x + *it;
    return out;
  }
  BigReal operator()(const BigReal& x, Precision p) const {
    WorkingPrecision wp(p);
    BigReal out(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * x + to_real(*it, p);
    return out;
  }

  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
  }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// (quotient, remainder) of Euclidean division.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    Polynomial rem = a;
    std::vector<Rational> q(a.degree() >= b.degree() ? a.c_.size() - b.c_.size() + 1 : 0, Rational(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
      const std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
      Rational f = rem.lead() / b.lead();
      q[shift] = f;
      std::vector<Rational> sub(shift + b.c_.size(), Rational(0));
      for (std::size_t i = 0; i < b.c_.size(); ++i) sub[shift + i] = f * b.c_[i];
      rem = rem - Polynomial(std::move(sub));
    }
    return {Polynomial(std::move(q)), rem};
  }

  /// Monic greatest common divisor; gcd(0, 0) = 0.
  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.is_zero() ? a : a.scaled(1 / a.lead());
  }

  Polynomial scaled(const Rational& f) const {
    Polynomial out = *this;
    for (auto& v : out.c_) v *= f;
    out.trim();
    return out;
  }

  std::string to_string(const std::string& var = "r") const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      const Rational& v = c_[k];
      if (v == 0) continue;
      const bool neg = v < 0;
      const Rational mag = neg ? Rational(-v) : v;
      out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
      if (k == 0) out += freudlab::to_string(mag);
      else if (mag == 1) out += mono;
      else out += freudlab::to_string(mag) + "*" + mono;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// num/den in lowest terms with a monic denominator.
class RationalFunctionR {
 public:
  RationalFunctionR() : den_(1) {}
  RationalFunctionR(long c) : num_(c), den_(1) {}
  RationalFunctionR(const Rational& c) : num_(c), den_(1) {}
  RationalFunctionR(Polynomial p) : num_(std::move(p)), den_(1) {}
  RationalFunctionR(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

  static RationalFunctionR r() { return RationalFunctionR(Polynomial::r()); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  bool depends_on_r() const { return !is_constant(); }
  /// The value as a rational; requires is_constant().
  Rational constant() const {
    if (!is_constant()) throw DomainError("rational function depends on r");
    return num_.coefficient(0);
  }

  Rational operator()(const Rational& x) const {
    Rational d = den_(x);
    if (d == 0) throw DomainError("rational function has a pole at the evaluation point");
    return num_(x) / d;
  }
  BigReal operator()(const BigReal& x, Precision p) const {
    WorkingPrecision wp(p);
    return num_(x, p) / den_(x, p);
  }

  RationalFunctionR operator-() const { return RationalFunctionR(-num_, den_); }
  friend RationalFunctionR operator+(const RationalFunctionR& a, const RationalFunctionR& b) {
    if (a.den_ == b.den_) return RationalFunctionR(a.num_ + b.num_, a.den_);
    return RationalFunctionR(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunctionR operator-(const RationalFunctionR& a, const RationalFunctionR& b) { return a + (-b); }
  friend RationalFunctionR operator*(const RationalFunctionR& a, const RationalFunctionR& b) {
    return RationalFunctionR(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunctionR operator/(const RationalFunctionR& a, const RationalFunctionR& b) {
    if (b.is_zero()) throw DomainError("rational function division by zero");
    return RationalFunctionR(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunctionR& operator+=(const RationalFunctionR& b) { return *this = *this + b; }
  RationalFunctionR& operator-=(const RationalFunctionR& b) { return *this = *this - b; }
  RationalFunctionR& operator*=(const RationalFunctionR& b) { return *this = *this * b; }
  friend bool operator==(const RationalFunctionR& a, const RationalFunctionR& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const {
    if (den_.degree() == 0) return num_.to_string();
    auto wrap = [](const Polynomial& p) {
      const auto& c = p.coefficients();
      auto terms = std::count_if(c.begin(), c.end(), [](const Rational& v) { return v != 0; });
      return terms > 1 ? "(" + p.to_string() + ")" : p.to_string();
    };
    return wrap(num_) + "/" + wrap(den_);
  }

 private:
  void canonicalize() {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    Rational lead = den_.lead();
    if (lead != 1) {
      num_ = num_.scaled(1 / lead);
      den_ = den_.scaled(1 / lead);
    }
  }

  Polynomial num_, den_;
};

}  // namespace freudlab
