#pragma once

// Weight families, their moments, initial data for the Painlevé recurrences,
// and the closed-form recurrence coefficients that exist.

#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "freudlab/bigreal.hpp"
#include "freudlab/errors.hpp"
#include "freudlab/mpnum.hpp"
#include "freudlab/rational.hpp"

namespace freudlab {

/// |x|^ρ e^{−x²}
struct GeneralizedHermite {
  Rational rho;
};
/// |x|^ρ e^{−x⁴+λx²}
struct FreudQuartic {
  Rational rho;
  Rational lambda = 0;
};
/// |x|^ρ e^{−x⁶}
struct FreudSextic {
  Rational rho;
};
/// e^{λ cos θ} on the unit circle
struct ExpCosCircle {
  Rational lambda;
};
/// w_k = a^k/k! on k = 0, 1, 2, ...
struct Charlier {
  Rational a;
};
/// w_k = a^k/(k!)²
struct GeneralizedCharlier {
  Rational a;
};
/// (x²q²; q²)_∞ on the lattice {±q^k}
struct QHermite {
  Rational q;
};
/// (q⁴x⁴; q⁴)_∞ on the lattice {±q^k}
struct QFreud {
  Rational q;
};
/// (x²q²; q²)_∞ (c x²q²; q²)_∞ on the lattice {±q^k}
struct QFreudGeneral {
  Rational q;
  Rational c;
};

using WeightFamily = std::variant<GeneralizedHermite, FreudQuartic, FreudSextic, ExpCosCircle, Charlier,
                                  GeneralizedCharlier, QHermite, QFreud, QFreudGeneral>;

/// Recurrence coefficients x p_n = a_{n+1} p_{n+1} + b_n p_n + a_n p_{n−1}.
/// Stored as a_n² (index 0 holds the convention a_0 = 0) and b_n.
struct RecurrenceCoeffs {
  std::vector<BigReal> a2;
  std::vector<BigReal> b;

  /// Largest n with a_n available.
  std::size_t max_index() const { return a2.empty() ? 0 : a2.size() - 1; }
  BigReal a(std::size_t n) const { return sqrt(a2.at(n)); }
};

inline bool agrees_to(const RecurrenceCoeffs& x, const RecurrenceCoeffs& y, unsigned digits) {
  return agrees_to(x.a2, y.a2, digits) && agrees_to(x.b, y.b, digits);
}

namespace detail {

inline void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

inline void check_q(const Rational& q) { require(q > 0 && q < 1, "q must lie in (0, 1)"); }

}  // namespace detail

/// Rejects parameters outside the family's domain; returns the family unchanged.
inline const WeightFamily& validate(const WeightFamily& family) {
  using detail::require;
  std::visit(
      [](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (requires { f.rho; }) require(f.rho > -1, "rho must exceed -1");
        if constexpr (std::is_same_v<F, ExpCosCircle>) require(f.lambda > 0, "lambda must be positive");
        if constexpr (requires { f.a; }) require(f.a > 0, "a must be positive");
        if constexpr (requires { f.q; }) detail::check_q(f.q);
        if constexpr (requires { f.c; }) require(f.c <= 1 && f.c != 0, "c must satisfy c <= 1 and c != 0");
      },
      family);
  return family;
}

/// Short identifier used by the CLI and in provenance records.
inline std::string family_name(const WeightFamily& family) {
  struct {
    std::string operator()(const GeneralizedHermite&) const { return "hermite"; }
    std::string operator()(const FreudQuartic&) const { return "freud4"; }
    std::string operator()(const FreudSextic&) const { return "freud6"; }
    std::string operator()(const ExpCosCircle&) const { return "circle"; }
    std::string operator()(const Charlier&) const { return "charlier"; }
    std::string operator()(const GeneralizedCharlier&) const { return "gencharlier"; }
    std::string operator()(const QHermite&) const { return "qhermite"; }
    std::string operator()(const QFreud&) const { return "qfreud"; }
    std::string operator()(const QFreudGeneral&) const { return "qfreud-general"; }
  } name;
  return std::visit(name, family);
}

/// Named parameters, in declaration order.
inline std::vector<std::pair<std::string, Rational>> family_parameters(const WeightFamily& family) {
  std::vector<std::pair<std::string, Rational>> out;
  std::visit(
      [&](const auto& f) {
        if constexpr (requires { f.rho; }) out.emplace_back("rho", f.rho);
        if constexpr (requires { f.lambda; }) out.emplace_back("lambda", f.lambda);
        if constexpr (requires { f.a; }) out.emplace_back("a", f.a);
        if constexpr (requires { f.q; }) out.emplace_back("q", f.q);
        if constexpr (requires { f.c; }) out.emplace_back("c", f.c);
      },
      family);
  return out;
}

/// Real-line or lattice weight that is even in x (so b_n = 0).
inline bool is_symmetric(const WeightFamily& family) {
  return !std::holds_alternative<Charlier>(family) && !std::holds_alternative<GeneralizedCharlier>(family) &&
         !std::holds_alternative<ExpCosCircle>(family);
}

inline bool is_circle(const WeightFamily& family) { return std::holds_alternative<ExpCosCircle>(family); }

/// Δ_n = (1 − (−1)^n)/2.
constexpr long parity_delta(long n) { return n % 2 == 0 ? 0 : 1; }

namespace detail {

/// (2/m) Γ((s+1)/m) = ∫ |x|^s e^{−|x|^m} dx, s = ρ + k.
inline BigReal freud_moment(const Rational& rho, long k, long m, Precision guard) {
  WorkingPrecision wp(guard);
  BigReal arg = to_real((rho + k + 1) / m, guard);
  return gamma(arg, guard) * 2 / m;
}

/// ∫ |x|^{ρ+k} e^{−x⁴+λx²} dx = Σ_j λ^j/j! · Γ((ρ+k+2j+1)/4)/2 for even k.
inline BigReal freud_lambda_moment(const Rational& rho, const Rational& lambda, long k, Precision guard) {
  auto sum_at = [&](Precision prec, BigReal* abs_sum) {
    WorkingPrecision wp(prec);
    const BigReal eps = truncation_threshold(prec);
    const BigReal lam = to_real(lambda, prec);
    const Rational base = (rho + k + 1) / 4;
    // g[j] = Γ(base + j/2): two interleaved sequences advanced by Γ(x+1) = xΓ(x).
    BigReal g_even = gamma(to_real(base, prec), prec);
    BigReal g_odd = gamma(to_real(base + Rational(1, 2), prec), prec);
    BigReal coef(1);  // λ^j / j!
    BigReal sum(0), abs_total(0);
    const double lam_d = std::abs(lambda.get_d());
    for (long j = 0;; ++j) {
      const BigReal& g = (j % 2 == 0) ? g_even : g_odd;
      BigReal term = coef * g / 2;
      sum += term;
      abs_total += abs(term);
      if (j > 2 * lam_d * lam_d + 2 && abs(term) <= abs_total * eps) break;
      if (j % 2 == 0)
        g_even *= to_real(base + Rational(j, 2), prec);
      else
        g_odd *= to_real(base + Rational(j, 2), prec);
      coef *= lam;
      coef /= j + 1;
    }
    if (abs_sum) *abs_sum = abs_total;
    return sum;
  };
  BigReal abs_total;
  BigReal sum = sum_at(guard, &abs_total);
  if (lambda < 0) {
    // Alternating series: recompute with the digits lost to cancellation.
    BigReal ratio = abs_total / abs(sum);
    long lost = static_cast<long>(log10(ratio).to_double()) + 2;
    if (lost > 2) sum = sum_at(Precision(guard.digits() + static_cast<unsigned>(lost)), nullptr);
  }
  return BigReal(sum, guard);
}

/// Σ_{j≥0} j^k w_j for k < count, with w_j = a^j/(j!)^power.
inline std::vector<BigReal> charlier_moments(const Rational& a, int power, std::size_t count, Precision guard) {
  WorkingPrecision wp(guard);
  const BigReal eps = truncation_threshold(guard);
  const BigReal ar = to_real(a, guard);
  std::vector<BigReal> sums(count, BigReal(0));
  BigReal w(1);
  const long top = static_cast<long>(count) - 1;
  for (long j = 0;; ++j) {
    if (j == 0) {
      sums[0] += w;  // 0^0 = 1, higher powers vanish
    } else {
      BigReal term = w;
      for (std::size_t k = 0; k < count; ++k) {
        sums[k] += term;
        term *= j;
      }
    }
    // next weight
    BigReal next = w * ar;
    for (int i = 0; i < power; ++i) next /= j + 1;
    if (j > 0) {
      // ratio of consecutive top-moment terms: ((j+1)/j)^top · w_{j+1}/w_j
      BigReal top_term = w * pow(BigReal(j), top);
      BigReal ratio = pow(BigReal(j + 1) / j, top) * (next / w);
      if (ratio < BigReal(0.5) && top_term <= sums[count - 1] * eps && w <= sums[0] * eps) break;
    }
    w = std::move(next);
  }
  return sums;
}

/// q-lattice moments μ_k = (1−q) Σ_j q^j [f(q^j) + f(−q^j)], f = x^k w(x), for k < count.
/// `c` selects the weight: 0 → q-Hermite, otherwise (x²q²;q²)_∞(cx²q²;q²)_∞;
/// `quartic` selects (q⁴x⁴;q⁴)_∞.
inline std::vector<BigReal> lattice_moments(const Rational& q, const Rational& c, bool quartic, std::size_t count,
                                            Precision guard) {
  WorkingPrecision wp(guard);
  const BigReal eps = truncation_threshold(guard);
  const BigReal qr = to_real(q, guard);
  const BigReal cr = to_real(c, guard);
  const BigReal q2 = qr * qr;
  const BigReal q4 = q2 * q2;

  // w at x = 1
  BigReal w;
  if (quartic) {
    w = q_pochhammer_inf(q4, q4, guard);
  } else {
    w = q_pochhammer_inf(q2, q2, guard);
    if (c != 0) w *= q_pochhammer_inf(cr * q2, q2, guard);
  }

  std::vector<BigReal> sums(count, BigReal(0));
  BigReal qj(1);                    // q^j
  BigReal q2j2 = q2;                // q^{2j+2}
  const BigReal one_minus_q = 1 - qr;
  for (long j = 0;; ++j) {
    BigReal term = qj * w;  // q^{j(k+1)} w(q^j) at k = 0
    const BigReal qj2 = qj * qj;
    for (std::size_t k = 0; k < count; k += 2) {
      sums[k] += term;
      term *= qj2;
    }
    if (qj * w < sums[0] * eps * one_minus_q) break;
    // Pearson step w(q^{j+1}) from w(q^j)
    if (quartic) {
      w /= 1 - q2j2 * q2j2;
    } else {
      BigReal f = 1 - q2j2;
      if (c != 0) f *= 1 - cr * q2j2;
      w /= f;
    }
    qj *= qr;
    q2j2 *= q2;
  }
  for (std::size_t k = 0; k < count; k += 2) sums[k] *= one_minus_q * 2;
  return sums;
}

}  // namespace detail

/// Moments μ_0, ..., μ_{count−1} of the family's orthogonality measure.  For the
/// circle these are the trigonometric moments c_k = I_k(λ).
inline std::vector<BigReal> moments(const WeightFamily& family, std::size_t count, Precision p) {
  validate(family);
  const Precision guard = p.guarded();
  std::vector<BigReal> out;
  auto real_line = [&](auto&& even_moment) {
    WorkingPrecision wp(p);
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
      out.push_back(k % 2 ? BigReal(0) : BigReal(even_moment(static_cast<long>(k)), p));
  };
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, GeneralizedHermite>) {
          real_line([&](long k) { return detail::freud_moment(f.rho, k, 2, guard); });
        } else if constexpr (std::is_same_v<F, FreudSextic>) {
          real_line([&](long k) { return detail::freud_moment(f.rho, k, 6, guard); });
        } else if constexpr (std::is_same_v<F, FreudQuartic>) {
          if (f.lambda == 0)
            real_line([&](long k) { return detail::freud_moment(f.rho, k, 4, guard); });
          else
            real_line([&](long k) { return detail::freud_lambda_moment(f.rho, f.lambda, k, guard); });
        } else if constexpr (std::is_same_v<F, ExpCosCircle>) {
          const BigReal lam = to_real(f.lambda, guard);
          for (std::size_t k = 0; k < count; ++k) out.push_back(bessel_i(static_cast<long>(k), lam, p));
        } else if constexpr (std::is_same_v<F, Charlier> || std::is_same_v<F, GeneralizedCharlier>) {
          const int power = std::is_same_v<F, Charlier> ? 1 : 2;
          for (auto& m : detail::charlier_moments(f.a, power, count, guard)) out.emplace_back(m, p);
        } else {
          Rational c = 0;
          bool quartic = std::is_same_v<F, QFreud>;
          if constexpr (std::is_same_v<F, QFreudGeneral>) c = f.c;
          for (auto& m : detail::lattice_moments(f.q, c, quartic, count, guard)) out.emplace_back(m, p);
        }
      },
      family);
  return out;
}

/// The k-th moment; for the circle k may be negative (c_{−k} = c_k).
inline BigReal moment(const WeightFamily& family, long k, Precision p) {
  if (k < 0) {
    if (!is_circle(family)) throw DomainError("moment index must be nonnegative");
    k = -k;
  }
  if (is_symmetric(family) && k % 2 == 1) {
    validate(family);
    WorkingPrecision wp(p);
    return BigReal(0);
  }
  return moments(family, static_cast<std::size_t>(k) + 1, p).back();
}

/// Starting values of a family's Painlevé recurrence.  values[i] is the iterate
/// at index base_index + i.
struct InitialData {
  long base_index = 0;
  std::vector<BigReal> values;
};

/// Exact starting data at precision p (computed with guard digits, then rounded).
inline InitialData initial_data(const WeightFamily& family, Precision p) {
  validate(family);
  const Precision guard = p.guarded();
  WorkingPrecision wp(guard);
  auto round = [&](std::vector<BigReal> v) {
    for (auto& x : v) x = BigReal(x, p);
    return v;
  };
  return std::visit(
      [&](const auto& f) -> InitialData {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FreudQuartic>) {
          // x_n = 2 a_n², x_0 = 0
          BigReal x1;
          if (f.lambda == 0) {
            x1 = gamma(to_real((f.rho + 3) / 4, guard), guard) / gamma(to_real((f.rho + 1) / 4, guard), guard) * 2;
          } else {
            auto mu = moments(family, 3, guard);
            x1 = mu[2] / mu[0] * 2;
          }
          return {0, round({BigReal(0), x1})};
        } else if constexpr (std::is_same_v<F, FreudSextic>) {
          // u_n = a_n² from index −1: u_{−1} = u_0 = 0, u_1 = μ_2/μ_0, u_2 = μ_4/μ_2 − μ_2/μ_0.
          auto mu = moments(family, 5, guard);
          BigReal u1 = mu[2] / mu[0];
          BigReal u2 = mu[4] / mu[2] - u1;
          return {-1, round({BigReal(0), BigReal(0), u1, u2})};
        } else if constexpr (std::is_same_v<F, ExpCosCircle>) {
          const BigReal lam = to_real(f.lambda, guard);
          return {-1, round({BigReal(-1), bessel_i(1, lam, guard) / bessel_i(0, lam, guard)})};
        } else if constexpr (std::is_same_v<F, GeneralizedCharlier>) {
          const BigReal z = sqrt(to_real(f.a, guard)) * 2;
          return {0, round({BigReal(1), bessel_i(1, z, guard) / bessel_i(0, z, guard)})};
        } else if constexpr (std::is_same_v<F, QFreud>) {
          const BigReal q = to_real(f.q, guard);
          const BigReal q4 = pow(q, 4);
          BigReal y1 = q_pochhammer_inf(q, q4, guard) / q_pochhammer_inf(pow(q, 3), q4, guard);
          return {0, round({BigReal(0), y1})};
        } else if constexpr (std::is_same_v<F, QFreudGeneral>) {
          auto mu = moments(family, 3, guard);
          return {0, round({BigReal(0), mu[2] / mu[0]})};
        } else {
          throw UnsupportedError("family '" + family_name(family) + "' has no Painlevé recurrence");
        }
      },
      family);
}

/// Closed-form (a_n, b_n).
struct CoeffPair {
  BigReal a;
  BigReal b;
};

/// (a_n, b_n) for the families with explicit formulas, n ≥ 1.
inline CoeffPair closed_form(const WeightFamily& family, long n, Precision p) {
  validate(family);
  if (n < 1) throw DomainError("closed_form: n must be positive");
  const Precision guard = p.guarded();
  WorkingPrecision wp(guard);
  auto finish = [&](const BigReal& a2, const BigReal& b) {
    WorkingPrecision out(p);
    return CoeffPair{BigReal(sqrt(a2), p), BigReal(b, p)};
  };
  if (auto* h = std::get_if<GeneralizedHermite>(&family))
    return finish(to_real((h->rho * parity_delta(n) + n) / 2, guard), BigReal(0));
  if (auto* c = std::get_if<Charlier>(&family))
    return finish(to_real(c->a * n, guard), to_real(c->a + n, guard));
  if (auto* qh = std::get_if<QHermite>(&family)) {
    const BigReal q = to_real(qh->q, guard);
    return finish(pow(q, n - 1) * (1 - pow(q, n)), BigReal(0));
  }
  throw UnsupportedError("family '" + family_name(family) + "' has no closed-form recurrence coefficients");
}

/// Closed-form coefficients a_1..a_N, b_0..b_{N−1}.
inline RecurrenceCoeffs closed_form_coeffs(const WeightFamily& family, std::size_t N, Precision p) {
  RecurrenceCoeffs out;
  WorkingPrecision wp(p);
  out.a2.emplace_back(0);
  for (std::size_t n = 1; n <= N; ++n) {
    CoeffPair c = closed_form(family, static_cast<long>(n), p);
    out.a2.push_back(BigReal(c.a * c.a, p));
  }
  if (auto* ch = std::get_if<Charlier>(&family)) {
    for (std::size_t n = 0; n < N; ++n) out.b.push_back(to_real(ch->a + static_cast<long>(n), p));
  } else {
    out.b.assign(N, BigReal(0));
  }
  return out;
}

/// Freud's limit constant (Γ(m+1)/(Γ(m/2)Γ(m/2+1)))^{−1/m}: lim a_n/n^{1/m} for weight e^{−|x|^m}.
inline BigReal freud_constant(const Rational& m, Precision p) {
  if (!(m > 0)) throw DomainError("m must be positive");
  const Precision guard = p.guarded();
  WorkingPrecision wp(guard);
  const BigReal mr = to_real(m, guard);
  BigReal ratio = gamma(mr + 1, guard) / (gamma(mr / 2, guard) * gamma(mr / 2 + 1, guard));
  return BigReal(pow(ratio, -1 / mr), p);
}

}  // namespace freudlab
