#pragma once

// Special functions needed for initial data and moments, evaluated with
// Precision::kGuardDigits extra digits and rounded to the requested precision.

#include <optional>
#include <type_traits>
#include <vector>

#include "freudlab/bigreal.hpp"
#include "freudlab/errors.hpp"

namespace freudlab {

/// Relative threshold below which a series term (or product factor deviation)
/// is dropped when working at precision `p`: 10^-(p+10).
inline BigReal truncation_threshold(Precision p) {
  WorkingPrecision wp(p.guarded());
  return BigReal::pow10(-static_cast<long>(p.guarded().digits()));
}

/// Γ(x) for x > 0.
inline BigReal gamma(const BigReal& x, Precision p) {
  if (!(x > 0)) throw DomainError("gamma: argument must be positive, got " + x.to_string(20));
  WorkingPrecision wp(p.guarded());
  BigReal xg(x, p.guarded());
  BigReal r;
  mpfr_gamma(r.get(), xg.get(), MPFR_RNDN);
  return BigReal(r, p);
}

/// Modified Bessel function I_ν(z), integer ν ≥ 0, z ≥ 0, by its power series
///   I_ν(z) = Σ_k (z/2)^{2k+ν} / (k! (k+ν)!).
inline BigReal bessel_i(long nu, const BigReal& z, Precision p) {
  if (nu < 0) throw DomainError("bessel_i: order must be nonnegative");
  if (z < 0) throw DomainError("bessel_i: argument must be nonnegative");
  const Precision guard = p.guarded();
  WorkingPrecision wp(guard);
  const BigReal eps = truncation_threshold(p);

  BigReal half(z, guard);
  half /= 2;
  if (half.is_zero()) return BigReal(BigReal(nu == 0 ? 1 : 0), p);

  // Leading term (z/2)^ν / ν!
  BigReal term = pow(half, nu);
  for (long j = 2; j <= nu; ++j) term /= j;
  const BigReal quarter_sq = half * half;

  BigReal sum = term;
  for (long k = 1;; ++k) {
    term *= quarter_sq;
    term /= k * (k + nu);
    sum += term;
    if (term <= sum * eps) break;
  }
  return BigReal(sum, p);
}

/// q-Pochhammer symbol (x; q)_∞ = Π_{k≥0} (1 − x q^k), 0 < q < 1.
///
/// The product stops at the first k with |x q^k| < (1 − q)·10^-(p+10).  The
/// remaining factors then satisfy |log Π_{j≥k}(1 − x q^j)| ≲ |x q^k|/(1 − q),
/// which is below the truncation threshold.
inline BigReal q_pochhammer_inf(const BigReal& x, const BigReal& q, Precision p) {
  if (!(q > 0 && q < 1)) throw DomainError("q_pochhammer_inf: q must lie in (0, 1)");
  const Precision guard = p.guarded();
  WorkingPrecision wp(guard);
  if (x.is_zero()) return BigReal(BigReal(1), p);

  const BigReal qg(q, guard);
  const BigReal stop = truncation_threshold(p) * (1 - qg);
  BigReal xqk(x, guard);
  BigReal prod(1);
  while (abs(xqk) >= stop) {
    prod *= 1 - xqk;
    if (prod.is_zero()) break;
    xqk *= qg;
  }
  return BigReal(prod, p);
}

/// Elementwise agreement for sequences; sizes must match.
template <class T>
bool agrees_to(const std::vector<T>& a, const std::vector<T>& b, unsigned digits) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!agrees_to(a[i], b[i], digits)) return false;
  return true;
}

struct AdaptiveOptions {
  /// Number of precision doublings after the first run.
  unsigned max_doublings = 4;
  /// First precision tried; defaults to target_digits + 20.
  std::optional<unsigned> start_digits;
};

/// Runs `eval(Precision)` at a doubling precision schedule until two
/// consecutive results agree to `target_digits` significant digits and
/// returns the more precise of the two.  A PrecisionExhausted thrown by the
/// evaluator counts as "no result at this precision".
template <class Eval>
auto adaptive_eval(Eval&& eval, unsigned target_digits, AdaptiveOptions opts = {})
    -> std::invoke_result_t<Eval&, Precision> {
  using Result = std::invoke_result_t<Eval&, Precision>;
  unsigned digits = opts.start_digits.value_or(target_digits + 20);
  std::optional<Result> previous;
  for (unsigned round = 0; round <= opts.max_doublings; ++round, digits *= 2) {
    try {
      Result current = eval(Precision(digits));
      if (previous && agrees_to(*previous, current, target_digits)) return current;
      previous = std::move(current);
    } catch (const ConvergenceError&) {
      throw;
    } catch (const PrecisionExhausted&) {
      previous.reset();
    }
  }
  throw ConvergenceError("adaptive_eval: no agreement to " + std::to_string(target_digits) +
                         " digits up to " + std::to_string(digits / 2) + " digits of precision");
}

}  // namespace freudlab
