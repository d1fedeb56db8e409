#pragma once

// Recurrence-free ground truth: recurrence coefficients from moments
// (Chebyshev algorithm, plus a Hankel-determinant slow path), Verblunsky
// coefficients from Toeplitz moments (Levinson/Szegő recursion), orthonormal
// polynomial evaluation, structure-relation checks, and the Freud equations
// evaluated on oracle output.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freudlab/bigreal.hpp"
#include "freudlab/dpainleve.hpp"
#include "freudlab/errors.hpp"
#include "freudlab/mpnum.hpp"
#include "freudlab/weights.hpp"

namespace freudlab {

/// a_1..a_N and b_0..b_{N−1} from μ_0..μ_{2N} by the Chebyshev algorithm on
/// the mixed moments σ_{k,l} = ⟨π_k, x^l⟩.  Moments are divided by μ_0 first;
/// a_n and b_n are invariant under that scaling.
inline RecurrenceCoeffs coeffs_from_moments(std::span<const BigReal> mu, Precision p) {
  if (mu.size() < 3 || mu.size() % 2 == 0) throw DomainError("coeffs_from_moments: need μ_0..μ_{2N}, N ≥ 1");
  if (!(mu[0] > 0)) throw DomainError("coeffs_from_moments: μ_0 must be positive");
  const std::size_t M = mu.size();
  const std::size_t N = (M - 1) / 2;
  WorkingPrecision wp(p);
  const BigReal tiny = BigReal::pow10(-static_cast<long>(p.digits()) + 10);

  std::vector<BigReal> prev(M, BigReal(0));  // σ_{k−2, ·}
  std::vector<BigReal> cur(M);               // σ_{k−1, ·}
  const BigReal mu0(mu[0], p);
  for (std::size_t l = 0; l < M; ++l) cur[l] = BigReal(mu[l], p) / mu0;

  RecurrenceCoeffs out;
  out.a2.emplace_back(0);
  BigReal alpha = cur[1] / cur[0];
  BigReal beta = cur[0];
  out.b.push_back(alpha);

  for (std::size_t k = 1; k <= N; ++k) {
    std::vector<BigReal> next(M, BigReal(0));
    for (std::size_t l = k; l + k < M; ++l) {
      next[l] = cur[l + 1] - alpha * cur[l] - beta * prev[l];
      if (l == k) {
        BigReal scale = abs(cur[l + 1]) + abs(alpha * cur[l]) + abs(beta * prev[l]);
        if (!(next[l] > 0) || next[l] < scale * tiny)
          throw PrecisionExhausted("coeffs_from_moments: Hankel pivot lost at n = " + std::to_string(k));
      }
    }
    beta = next[k] / cur[k - 1];
    out.a2.push_back(beta);
    if (k < N) {
      alpha = next[k + 1] / next[k] - cur[k] / cur[k - 1];
      out.b.push_back(alpha);
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return out;
}

namespace detail {

inline BigReal determinant(std::vector<std::vector<BigReal>> m) {
  const std::size_t n = m.size();
  BigReal det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
    if (m[piv][c].is_zero()) return BigReal(0);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      BigReal f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

/// D_n = det[μ_{i+j}], or with the last column shifted by one when `shifted`.
inline BigReal hankel(std::span<const BigReal> mu, std::size_t n, bool shifted) {
  if (n == 0) return BigReal(shifted ? 0 : 1);
  std::vector<std::vector<BigReal>> m(n, std::vector<BigReal>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = mu[i + j + (shifted && j + 1 == n ? 1 : 0)];
  return determinant(std::move(m));
}

}  // namespace detail

/// Slow path: a_n² = D_{n+1}D_{n−1}/D_n², b_n = D'_{n+1}/D_{n+1} − D'_n/D_n, n ≤ 12.
inline RecurrenceCoeffs hankel_coeffs(std::span<const BigReal> mu, std::size_t N, Precision p) {
  if (N > 12) throw DomainError("hankel_coeffs: limited to n <= 12");
  if (mu.size() < 2 * N + 1) throw DomainError("hankel_coeffs: need μ_0..μ_{2N}");
  WorkingPrecision wp(p);
  std::vector<BigReal> D, Dp;
  for (std::size_t n = 0; n <= N + 1; ++n) {
    D.push_back(detail::hankel(mu, n, false));
    Dp.push_back(n >= 1 && n <= N ? detail::hankel(mu, n, true) : BigReal(0));
  }
  RecurrenceCoeffs out;
  out.a2.emplace_back(0);
  for (std::size_t n = 1; n <= N; ++n) {
    if (!(D[n] > 0)) throw PrecisionExhausted("hankel_coeffs: nonpositive Hankel determinant");
    out.a2.push_back(D[n + 1] * D[n - 1] / (D[n] * D[n]));
  }
  for (std::size_t n = 0; n < N; ++n) out.b.push_back(Dp[n + 1] / D[n + 1] - (n == 0 ? BigReal(0) : Dp[n] / D[n]));
  return out;
}

inline bool agrees_to(const VerblunskyCoeffs& x, const VerblunskyCoeffs& y, unsigned digits) {
  return agrees_to(x.alpha, y.alpha, digits) && agrees_to(x.kappa_ratio, y.kappa_ratio, digits);
}

/// α_0..α_{N−1} from real symmetric trigonometric moments c_0..c_N via the
/// Szegő recursion Φ_{n+1} = zΦ_n − α_n Φ_n*.  The κ-ratios E_{n+1}/E_n use
/// E_n = ⟨Φ_n, Φ_n⟩ recomputed from the moments, independently of α_n.
inline VerblunskyCoeffs verblunsky_from_toeplitz(std::span<const BigReal> c, Precision p) {
  if (c.size() < 2) throw DomainError("verblunsky_from_toeplitz: need c_0..c_N, N ≥ 1");
  if (!(c[0] > 0)) throw DomainError("verblunsky_from_toeplitz: c_0 must be positive");
  const std::size_t N = c.size() - 1;
  WorkingPrecision wp(p);
  std::vector<BigReal> mom;
  for (const auto& v : c) mom.emplace_back(v / c[0], p);

  std::vector<BigReal> phi = {BigReal(1)};  // coefficients of Φ_n, ascending
  auto norm = [&](const std::vector<BigReal>& f) {
    const std::size_t n = f.size() - 1;
    BigReal e(0);
    for (std::size_t j = 0; j <= n; ++j) e += f[j] * mom[n - j];
    return e;
  };
  BigReal e = norm(phi);
  VerblunskyCoeffs out;
  for (std::size_t n = 0; n < N; ++n) {
    BigReal s(0);
    for (std::size_t j = 0; j <= n; ++j) s += phi[j] * mom[j + 1];
    BigReal a = s / e;
    if (!(abs(a) < 1)) throw PrecisionExhausted("verblunsky_from_toeplitz: |alpha_n| >= 1 at n = " + std::to_string(n));
    std::vector<BigReal> nxt(n + 2, BigReal(0));
    for (std::size_t j = 0; j <= n + 1; ++j) {
      if (j >= 1) nxt[j] += phi[j - 1];
      if (j <= n) nxt[j] -= a * phi[n - j];
    }
    BigReal e_next = norm(nxt);
    if (!(e_next > 0)) throw PrecisionExhausted("verblunsky_from_toeplitz: Toeplitz form not positive");
    out.alpha.push_back(a);
    out.kappa_ratio.push_back(e_next / e);
    phi = std::move(nxt);
    e = std::move(e_next);
  }
  return out;
}

/// Conservative guess of the digits the moment oracles lose up to index N.
inline unsigned oracle_digit_loss(const WeightFamily& family, std::size_t N) {
  const double n = static_cast<double>(N);
  if (is_circle(family)) return static_cast<unsigned>(2 * std::lgamma(n + 1) / std::log(10.0)) + 10;
  if (std::holds_alternative<GeneralizedHermite>(family) || std::holds_alternative<FreudQuartic>(family) ||
      std::holds_alternative<FreudSextic>(family))
    return static_cast<unsigned>(0.7 * n) + 10;
  return static_cast<unsigned>(3 * n) + 10;
}

/// Oracle coefficients a_1..a_N, b_0..b_{N−1} accurate to `target_digits`.
inline RecurrenceCoeffs oracle_coeffs(const WeightFamily& family, std::size_t N, unsigned target_digits) {
  if (is_circle(family)) throw UnsupportedError("the circle oracle returns Verblunsky coefficients");
  if (N < 1) throw DomainError("oracle_coeffs: N must be positive");
  AdaptiveOptions opts;
  opts.start_digits = target_digits + 20 + oracle_digit_loss(family, N);
  return adaptive_eval(
      [&](Precision p) {
        auto mu = moments(family, 2 * N + 1, p);
        return coeffs_from_moments(mu, p);
      },
      target_digits, opts);
}

/// Oracle Verblunsky coefficients α_0..α_{N−1} accurate to `target_digits`.
inline VerblunskyCoeffs oracle_verblunsky(const WeightFamily& family, std::size_t N, unsigned target_digits) {
  if (!is_circle(family)) throw UnsupportedError("Verblunsky coefficients exist only for the circle weight");
  AdaptiveOptions opts;
  opts.start_digits = target_digits + 20 + oracle_digit_loss(family, N);
  return adaptive_eval(
      [&](Precision p) {
        auto c = moments(family, N + 1, p);
        return verblunsky_from_toeplitz(c, p);
      },
      target_digits, opts);
}

/// p_0(x)..p_n(x) for the orthonormal polynomials with p_0 = μ_0^{−1/2}.
inline std::vector<BigReal> eval_polys(const RecurrenceCoeffs& rc, std::size_t n, const BigReal& x, const BigReal& mu0,
                                       Precision p) {
  if (n > 0 && (rc.max_index() < n || rc.b.size() < n)) throw DomainError("eval_poly: coefficients too short");
  WorkingPrecision wp(p);
  std::vector<BigReal> out;
  out.push_back(1 / sqrt(BigReal(mu0, p)));
  BigReal xr(x, p);
  for (std::size_t k = 0; k < n; ++k) {
    BigReal v = (xr - rc.b[k]) * out[k];
    if (k >= 1) v -= sqrt(rc.a2[k]) * out[k - 1];
    out.push_back(v / sqrt(rc.a2[k + 1]));
  }
  return out;
}

inline BigReal eval_poly(const RecurrenceCoeffs& rc, std::size_t n, const BigReal& x, const BigReal& mu0, Precision p) {
  return eval_polys(rc, n, x, mu0, p).back();
}

/// max over the sample points of |LHS − RHS| of the family's structure relation for p_n.
inline BigReal check_structure(const WeightFamily& family, const RecurrenceCoeffs& rc, std::size_t n,
                               std::span<const BigReal> points, Precision p) {
  validate(family);
  const bool lattice = std::holds_alternative<QHermite>(family) || std::holds_alternative<QFreud>(family) ||
                       std::holds_alternative<QFreudGeneral>(family);
  const bool shift = std::holds_alternative<Charlier>(family) || std::holds_alternative<GeneralizedCharlier>(family);
  if (!lattice && !shift)
    throw UnsupportedError("no structure relation implemented for family '" + family_name(family) + "'");
  if (n < 1) throw DomainError("check_structure: n must be positive");
  const std::size_t need = std::holds_alternative<QHermite>(family) || shift ? n : n + 1;
  if (rc.max_index() < need || rc.b.size() < n) throw DomainError("check_structure: coefficients too short");

  WorkingPrecision wp(p);
  const BigReal mu0 = moments(family, 1, p)[0];
  auto a = [&](long k) { return k < 1 ? BigReal(0) : sqrt(rc.a2[static_cast<std::size_t>(k)]); };
  auto poly = [&](const std::vector<BigReal>& v, long k) { return k < 0 ? BigReal(0) : v[static_cast<std::size_t>(k)]; };
  const long nn = static_cast<long>(n);

  BigReal worst(0);
  for (const auto& x0 : points) {
    BigReal x(x0, p);
    BigReal diff;
    if (shift) {
      auto at_x = eval_polys(rc, n, x, mu0, p);
      auto at_x1 = eval_polys(rc, n, x + 1, mu0, p);
      BigReal lhs = at_x1[n] - at_x[n];
      BigReal rhs;
      if (auto* c = std::get_if<Charlier>(&family)) {
        rhs = a(nn) / to_real(c->a, p) * poly(at_x, nn - 1);
      } else {
        const BigReal ar = to_real(std::get<GeneralizedCharlier>(family).a, p);
        rhs = BigReal(nn) / a(nn) * poly(at_x, nn - 1) + a(nn) * a(nn - 1) / ar * poly(at_x, nn - 2);
      }
      diff = lhs - rhs;
    } else {
      if (x.is_zero()) throw DomainError("check_structure: D_q needs x != 0");
      const BigReal q = to_real(std::visit([](const auto& f) -> Rational {
                                  if constexpr (requires { f.q; }) return f.q;
                                  else return Rational(0);
                                }, family),
                                p);
      auto at_x = eval_polys(rc, n, x, mu0, p);
      auto at_qx = eval_polys(rc, n, q * x, mu0, p);
      BigReal dq = (at_qx[n] - at_x[n]) / (x * (q - 1));
      const BigReal one_minus_q = 1 - q;
      BigReal rhs;
      if (std::holds_alternative<QHermite>(family)) {
        rhs = a(nn) / (pow(q, nn - 1) * one_minus_q) * poly(at_x, nn - 1);
      } else {
        BigReal big_a = a(nn) * a(nn - 1) * a(nn - 2) / pow(q, nn - 3);
        BigReal s1(0), s2(0);
        for (long j = 1; j <= nn + 1; ++j) s1 += rc.a2[static_cast<std::size_t>(j)];
        for (long j = 1; j <= nn - 2; ++j) s2 += rc.a2[static_cast<std::size_t>(j)];
        BigReal bracket = s1 - q * q * s2;
        if (auto* g = std::get_if<QFreudGeneral>(&family)) {
          const BigReal c = to_real(g->c, p);
          big_a = -(c * big_a);
          bracket -= (1 + c) / c;
          bracket *= -c;
        }
        BigReal big_b = a(nn) / pow(q, nn - 1) * bracket;
        rhs = big_b / one_minus_q * poly(at_x, nn - 1) + big_a / one_minus_q * poly(at_x, nn - 3);
      }
      diff = dq - rhs;
    }
    worst = max(worst, abs(diff));
  }
  return worst;
}

/// First n with |trace a_n² − reference a_n²| / reference a_n² > rel_threshold.
/// For the circle the κ-ratio 1 − α_n² plays the role of a_n².
inline std::optional<long> first_divergence(const WeightFamily& family, const Trace& trace,
                                            std::span<const BigReal> reference_a2, const BigReal& rel_threshold) {
  if (!(rel_threshold > 0 && rel_threshold <= 1)) throw DomainError("rel_threshold must lie in (0, 1]");
  const long start = is_circle(family) ? 0 : 1;
  const long last = std::min(trace.last_index(), static_cast<long>(reference_a2.size()) - 1);
  WorkingPrecision wp(trace.precision);
  for (long n = start; n <= last; ++n) {
    const BigReal& ref = reference_a2[static_cast<std::size_t>(n)];
    BigReal dev = abs(trace_a2(family, trace, n) - ref) / abs(ref);
    if (!(dev <= rel_threshold)) return n;
  }
  return std::nullopt;
}

inline std::optional<long> first_divergence(const WeightFamily& family, const Trace& trace,
                                            const RecurrenceCoeffs& reference, const BigReal& rel_threshold) {
  return first_divergence(family, trace, std::span<const BigReal>(reference.a2), rel_threshold);
}

inline std::optional<long> first_divergence(const WeightFamily& family, const Trace& trace,
                                            const VerblunskyCoeffs& reference, const BigReal& rel_threshold) {
  return first_divergence(family, trace, std::span<const BigReal>(reference.kappa_ratio), rel_threshold);
}

/// One evaluated Freud equation: the signed terms of LHS − RHS.
struct FreudEquation {
  std::string name;
  std::vector<BigReal> terms;

  BigReal residual() const { return detail::sum(terms); }
  BigReal scaled() const {
    BigReal scale(0);
    for (const auto& t : terms) scale += abs(t);
    return scale.is_zero() ? scale : abs(residual()) / scale;
  }
};

/// The family's Freud equations at index n evaluated on real-line or lattice coefficients.
inline std::vector<FreudEquation> freud_equations(const WeightFamily& family, const RecurrenceCoeffs& rc, long n,
                                                  Precision p) {
  validate(family);
  if (n < 1) throw DomainError("freud_equations: n must be positive");
  WorkingPrecision wp(p);
  auto u = [&](long k) -> BigReal {
    if (k < 1) return BigReal(0);
    if (static_cast<std::size_t>(k) > rc.max_index()) throw DomainError("freud_equations: coefficients too short");
    return rc.a2[static_cast<std::size_t>(k)];
  };
  auto bhat = [&](long k) -> BigReal {
    if (static_cast<std::size_t>(k) >= rc.b.size()) throw DomainError("freud_equations: coefficients too short");
    return rc.b[static_cast<std::size_t>(k)] - k;
  };
  const long dn = parity_delta(n);

  if (auto* f = std::get_if<FreudQuartic>(&family)) {
    BigReal un = u(n);
    BigReal rhs = to_real(f->rho * dn + n, p);
    return {{"d-P_I (quartic Freud)",
             {un * u(n + 1) * 4, un * un * 4, un * u(n - 1) * 4, -(un * to_real(f->lambda, p) * 2), -rhs}}};
  }
  if (auto* f = std::get_if<FreudSextic>(&family)) {
    Dp1SexticFreud<BigReal> m{to_real(f->rho, p)};
    return {{"sextic Freud", residual_terms(m, n, u(n - 2), u(n - 1), u(n), u(n + 1), u(n + 2))}};
  }
  if (auto* g = std::get_if<GeneralizedCharlier>(&family)) {
    const BigReal a = to_real(g->a, p);
    BigReal na = a * n;
    FreudEquation first{"first Freud equation", {-(na * bhat(n)), na * bhat(n - 1), -(u(n) * u(n + 1)), u(n) * u(n - 1)}};
    FreudEquation second{"second Freud equation", {u(n) * bhat(n), u(n) * bhat(n - 1), u(n) * n, -na}};
    return {first, second};
  }
  if (auto* c = std::get_if<Charlier>(&family)) {
    // The same two relations, as a negative control for the Poisson weight.
    const BigReal a = to_real(c->a, p);
    BigReal na = a * n;
    FreudEquation first{"first Freud equation", {-(na * bhat(n)), na * bhat(n - 1), -(u(n) * u(n + 1)), u(n) * u(n - 1)}};
    FreudEquation second{"second Freud equation", {u(n) * bhat(n), u(n) * bhat(n - 1), u(n) * n, -na}};
    return {first, second};
  }
  auto q_terms = [&](const Rational& qr, std::optional<Rational> cr) {
    const BigReal q = to_real(qr, p);
    BigReal lhs = pow(q, n - 1) * (1 - pow(q, n));
    BigReal un = u(n);
    BigReal prod = pow(q, -2 * n + 3) * u(n + 1) * un * u(n - 1);
    std::vector<BigReal> t = {lhs};
    if (!cr) {
      t.insert(t.end(), {-(un * u(n + 1)), -(pow(q, -n + 1) * un * un), -(q * q * un * u(n - 1)), -(un * prod)});
    } else {
      const BigReal c = to_real(*cr, p);
      BigReal cu = c * un;
      t.insert(t.end(), {cu * u(n + 1), cu * pow(q, -n + 1) * un, cu * q * q * u(n - 1), -(un * (1 + c)),
                         -(cu * c * prod)});
    }
    return t;
  };
  if (auto* q = std::get_if<QFreud>(&family)) return {{"q-Freud", q_terms(q->q, std::nullopt)}};
  if (auto* q = std::get_if<QFreudGeneral>(&family)) return {{"generalized q-Freud", q_terms(q->q, q->c)}};
  if (auto* h = std::get_if<QHermite>(&family)) return {{"q-Freud (negative control)", q_terms(h->q, std::nullopt)}};
  throw UnsupportedError("no Freud equation implemented for family '" + family_name(family) + "'");
}

/// The circle d-P_II −(λ/2)(1 − α_n²)(α_{n+1} + α_{n−1}) = (n+1)α_n with α_{−1} = −1.
inline FreudEquation circle_equation(const ExpCosCircle& family, const VerblunskyCoeffs& v, long n, Precision p) {
  if (n < 0 || static_cast<std::size_t>(n + 1) >= v.alpha.size()) throw DomainError("circle_equation: index out of range");
  WorkingPrecision wp(p);
  const BigReal half_lambda = to_real(family.lambda / 2, p);
  const BigReal& an = v.alpha[static_cast<std::size_t>(n)];
  BigReal am = n == 0 ? BigReal(-1) : v.alpha[static_cast<std::size_t>(n - 1)];
  const BigReal& ap = v.alpha[static_cast<std::size_t>(n + 1)];
  BigReal f = -(half_lambda * (1 - an * an));
  return {"circle d-P_II", {f * ap, f * am, -(an * (n + 1))}};
}

}  // namespace freudlab
