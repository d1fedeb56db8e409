#pragma once

// Truncated Laurent series in ε with coefficients in ℚ(r).

#include <algorithm>
#include <climits>
#include <string>
#include <vector>

#include "freudlab/errors.hpp"
#include "freudlab/ratfunc.hpp"

namespace freudlab {

namespace detail {
inline thread_local unsigned laurent_length_value = 3;
}

/// Number of ε-orders kept when a series has to be inverted.
inline unsigned laurent_length() { return detail::laurent_length_value; }

/// RAII override of laurent_length() for the current thread.
class LaurentLength {
 public:
  explicit LaurentLength(unsigned length) : saved_(detail::laurent_length_value) {
    if (length == 0) throw DomainError("Laurent length must be positive");
    detail::laurent_length_value = length;
  }
  ~LaurentLength() { detail::laurent_length_value = saved_; }
  LaurentLength(const LaurentLength&) = delete;
  LaurentLength& operator=(const LaurentLength&) = delete;

 private:
  unsigned saved_;
};

/// Σ_k c_k ε^k over lowest_order() ≤ k < truncation_order().  Coefficients past
/// the stored ones and below the truncation order are zero; orders at or
/// beyond the truncation order are unknown.  Exact series (constants, ε, finite
/// sums and products of those) carry truncation_order() == kExact.
class SymbolicLaurent {
 public:
  static constexpr long kExact = LONG_MAX / 4;

  SymbolicLaurent() = default;
  SymbolicLaurent(long c) : SymbolicLaurent(RationalFunctionR(c)) {}
  SymbolicLaurent(const Rational& c) : SymbolicLaurent(RationalFunctionR(c)) {}
  SymbolicLaurent(const RationalFunctionR& c) {
    if (!c.is_zero()) c_.push_back(c);
  }

  static SymbolicLaurent monomial(const RationalFunctionR& c, long power) {
    SymbolicLaurent s(c);
    if (!c.is_zero()) s.low_ = power;
    return s;
  }
  static SymbolicLaurent epsilon() { return monomial(RationalFunctionR(1), 1); }
  static SymbolicLaurent symbol_r() { return SymbolicLaurent(RationalFunctionR::r()); }

  bool is_exact() const { return trunc_ >= kExact; }
  /// No nonzero coefficient is known: exact zero, or zero up to the truncation order.
  bool known_zero() const { return c_.empty(); }
  /// Order of the first nonzero coefficient; for known_zero() series the truncation order.
  long lowest_order() const { return c_.empty() ? (is_exact() ? kExact : trunc_) : low_; }
  long truncation_order() const { return trunc_; }
  bool knows(long k) const { return k < trunc_; }

  /// Coefficient of ε^k; TruncationInsufficient if k is at or past the truncation order.
  RationalFunctionR coefficient(long k) const {
    if (!knows(k))
      throw TruncationInsufficient("coefficient of eps^" + std::to_string(k) + " is beyond the truncation order");
    if (c_.empty() || k < low_ || k >= low_ + static_cast<long>(c_.size())) return RationalFunctionR(0);
    return c_[static_cast<std::size_t>(k - low_)];
  }

  SymbolicLaurent operator-() const {
    SymbolicLaurent out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
  }

  friend SymbolicLaurent operator+(const SymbolicLaurent& a, const SymbolicLaurent& b) {
    SymbolicLaurent out;
    out.trunc_ = std::min(a.trunc_, b.trunc_);
    if (a.c_.empty() && b.c_.empty()) return out.normalized();
    long lo = std::min(a.c_.empty() ? b.low_ : a.low_, b.c_.empty() ? a.low_ : b.low_);
    long hi = std::max(a.end(), b.end());
    if (!out.is_exact()) hi = std::min(hi, out.trunc_);
    out.low_ = lo;
    for (long k = lo; k < hi; ++k) out.c_.push_back(a.stored(k) + b.stored(k));
    return out.normalized();
  }
  friend SymbolicLaurent operator-(const SymbolicLaurent& a, const SymbolicLaurent& b) { return a + (-b); }

  friend SymbolicLaurent operator*(const SymbolicLaurent& a, const SymbolicLaurent& b) {
    SymbolicLaurent out;
    if ((a.c_.empty() && a.is_exact()) || (b.c_.empty() && b.is_exact())) return out;
    const long la = a.lowest_order(), lb = b.lowest_order();
    out.trunc_ = std::min(saturate(la + b.trunc_), saturate(lb + a.trunc_));
    if (a.c_.empty() || b.c_.empty()) return out.normalized();
    out.low_ = la + lb;
    std::size_t n = a.c_.size() + b.c_.size() - 1;
    if (!out.is_exact()) n = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(0L, out.trunc_ - out.low_)));
    out.c_.assign(n, RationalFunctionR(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size() && i + j < n; ++j) out.c_[i + j] += a.c_[i] * b.c_[j];
    return out.normalized();
  }

  /// 1/s to laurent_length() orders past its leading term (exact for monomials).
  SymbolicLaurent inverse() const {
    if (c_.empty())
      throw TruncationInsufficient("series is zero up to eps^" + std::to_string(trunc_) + "; cannot invert");
    SymbolicLaurent out;
    out.low_ = -low_;
    if (is_exact() && c_.size() == 1) {
      out.c_.push_back(RationalFunctionR(1) / c_[0]);
      return out;
    }
    long rel = static_cast<long>(laurent_length());
    if (!is_exact()) rel = std::min(rel, trunc_ - low_);
    out.trunc_ = out.low_ + rel;
    const RationalFunctionR inv0 = RationalFunctionR(1) / c_[0];
    for (long k = 0; k < rel; ++k) {
      if (k == 0) {
        out.c_.push_back(inv0);
        continue;
      }
      RationalFunctionR acc(0);
      for (long j = 1; j <= k && j < static_cast<long>(c_.size()); ++j)
        acc += c_[static_cast<std::size_t>(j)] * out.c_[static_cast<std::size_t>(k - j)];
      out.c_.push_back(-(acc * inv0));
    }
    return out.normalized();
  }

  friend SymbolicLaurent operator/(const SymbolicLaurent& a, const SymbolicLaurent& b) { return a * b.inverse(); }

  SymbolicLaurent& operator+=(const SymbolicLaurent& b) { return *this = *this + b; }
  SymbolicLaurent& operator-=(const SymbolicLaurent& b) { return *this = *this - b; }
  SymbolicLaurent& operator*=(const SymbolicLaurent& b) { return *this = *this * b; }

  friend bool operator==(const SymbolicLaurent& a, const SymbolicLaurent& b) {
    return a.trunc_ == b.trunc_ && a.c_ == b.c_ && (a.c_.empty() || a.low_ == b.low_);
  }

  /// "c_k*eps^k + ... + O(eps^T)".
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      const long k = low_ + static_cast<long>(i);
      if (!out.empty()) out += " + ";
      out += "(" + c_[i].to_string() + ")";
      if (k != 0) out += k == 1 ? "*eps" : "*eps^" + std::to_string(k);
    }
    if (!is_exact()) out += (out.empty() ? "" : " + ") + std::string("O(eps^") + std::to_string(trunc_) + ")";
    return out.empty() ? "0" : out;
  }

 private:
  static long saturate(long v) { return v >= kExact / 2 ? kExact : v; }
  long end() const { return c_.empty() ? LONG_MIN / 4 : low_ + static_cast<long>(c_.size()); }
  RationalFunctionR stored(long k) const {
    if (c_.empty() || k < low_ || k >= end()) return RationalFunctionR(0);
    return c_[static_cast<std::size_t>(k - low_)];
  }
  SymbolicLaurent normalized() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    low_ += static_cast<long>(lead);
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.empty()) low_ = 0;
    return *this;
  }

  long low_ = 0;
  std::vector<RationalFunctionR> c_;
  long trunc_ = kExact;
};

/// Symbolic pivots are never reported as exact zeros; failing inversions raise
/// TruncationInsufficient instead.
inline bool is_exact_zero(const SymbolicLaurent&) { return false; }

}  // namespace freudlab
