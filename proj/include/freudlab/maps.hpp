#pragma once

// Step and residual formulas of the discrete Painlevé maps, generic over the
// scalar type S of the iterates and the parameter type P.  S = BigReal with
// P = BigReal drives numerical iteration; S = SymbolicLaurent with P = Rational
// drives the exact confinement engine.

#include <type_traits>
#include <vector>

#include "freudlab/bigreal.hpp"
#include "freudlab/errors.hpp"

namespace freudlab {

/// x_{n+1} + x_n + x_{n−1} = (z_n + γ(−1)^n)/x_n + δ,  z_n = αn + β
template <class P>
struct Dp1 {
  P alpha, beta, gamma, delta;
};

/// Fourth-order map in u_n = a_n² for the weight |x|^ρ e^{−x⁶}:
/// 6u_n(u_{n−2}u_{n−1} + u_{n−1}² + 2u_{n−1}u_n + u_{n−1}u_{n+1} + u_n² + 2u_nu_{n+1} + u_{n+1}² + u_{n+1}u_{n+2}) = n + ρΔ_n
template <class P>
struct Dp1SexticFreud {
  P rho;
};

/// x_{n+1} + x_{n−1} = (x_n z_n + γ)/(1 − x_n²),  z_n = αn + β
template <class P>
struct Dp2 {
  P alpha, beta, gamma;
};

/// q^n (y_{n+1}y_n + 1)(y_{n−1}y_n + 1) = 1 − y_n²
template <class P>
struct Qp1 {
  P q;
};

/// (1 − y_n)(1 − c y_n) = q^n (c y_{n+1}y_n − 1)(c y_{n−1}y_n − 1)
template <class P>
struct Qp1General {
  P q, c;
};

/// True when a numerical pivot is exactly zero.  Symbolic scalars report
/// their own failures from division.
inline bool is_exact_zero(const BigReal& x) { return x.is_zero(); }

namespace detail {

template <class S>
void require_pivot(const S& pivot, long n, const char* what) {
  if (is_exact_zero(pivot)) throw SingularityError(n, what);
}

template <class P>
P ipow(const P& x, long e) {
  if constexpr (std::is_same_v<P, BigReal>) {
    return pow(x, e);
  } else {
    P base = e < 0 ? P(1 / x) : x;
    P out = 1;
    for (long k = 0; k < (e < 0 ? -e : e); ++k) out *= base;
    return out;
  }
}

template <class P>
P linear_z(const P& alpha, const P& beta, long n) {
  return P(alpha * n) + beta;
}

template <class P>
P alternating(const P& gamma, long n) {
  return n % 2 == 0 ? P(gamma) : P(-gamma);
}

template <class S>
S sum(std::vector<S> terms) {
  S out = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) out += terms[i];
  return out;
}

}  // namespace detail

// ---- next iterate --------------------------------------------------------

template <class S, class P>
S next(const Dp1<P>& m, long n, const S& prev, const S& cur) {
  detail::require_pivot(cur, n, "d-P_I pivot x_n = 0");
  P num = detail::linear_z(m.alpha, m.beta, n) + detail::alternating(m.gamma, n);
  return num / cur + m.delta - cur - prev;
}

template <class S, class P>
S next(const Dp2<P>& m, long n, const S& prev, const S& cur) {
  S denom = 1 - cur * cur;
  detail::require_pivot(denom, n, "d-P_II pivot x_n = ±1");
  return (cur * detail::linear_z(m.alpha, m.beta, n) + m.gamma) / denom - prev;
}

template <class S, class P>
S next(const Qp1<P>& m, long n, const S& prev, const S& cur) {
  detail::require_pivot(cur, n, "q-P_I pivot y_n = 0");
  S pair = prev * cur + 1;
  detail::require_pivot(pair, n, "q-P_I pivot y_{n-1} y_n = -1");
  S inner = (1 - cur * cur) / (pair * detail::ipow(m.q, n)) - 1;
  return inner / cur;
}

template <class S, class P>
S next(const Qp1General<P>& m, long n, const S& prev, const S& cur) {
  S cy = cur * m.c;
  detail::require_pivot(cy, n, "q-P_I pivot y_n = 0");
  S pair = prev * cy - 1;
  detail::require_pivot(pair, n, "q-P_I pivot c y_{n-1} y_n = 1");
  S inner = (1 - cur) * (1 - cy) / (pair * detail::ipow(m.q, n)) + 1;
  return inner / cy;
}

namespace detail {
template <class S>
S sextic_bracket(const S& um2, const S& um1, const S& u, const S& up1) {
  return um2 * um1 + um1 * um1 + um1 * u * 2 + um1 * up1 + u * u + u * up1 * 2 + up1 * up1;
}
}  // namespace detail

/// u_{n+2} from (u_{n−2}, u_{n−1}, u_n, u_{n+1}).
template <class S, class P>
S next(const Dp1SexticFreud<P>& m, long n, const S& um2, const S& um1, const S& u, const S& up1) {
  detail::require_pivot(u, n, "sextic pivot u_n = 0");
  detail::require_pivot(up1, n, "sextic pivot u_{n+1} = 0");
  P rhs = P(m.rho * (n % 2 == 0 ? 0L : 1L)) + n;
  return (rhs / (u * 6) - detail::sextic_bracket(um2, um1, u, up1)) / up1;
}

// ---- residual terms (multiplied-out form, summing to LHS − RHS) -------------

template <class S, class P>
std::vector<S> residual_terms(const Dp1<P>& m, long n, const S& xm, const S& x, const S& xp) {
  P rhs = detail::linear_z(m.alpha, m.beta, n) + detail::alternating(m.gamma, n);
  return {x * xp, x * x, x * xm, -(x * m.delta), S(-rhs)};
}

template <class S, class P>
std::vector<S> residual_terms(const Dp2<P>& m, long n, const S& xm, const S& x, const S& xp) {
  S x2 = x * x;
  return {xp, xm, -(x2 * xp), -(x2 * xm), -(x * detail::linear_z(m.alpha, m.beta, n)), S(-m.gamma)};
}

template <class S, class P>
std::vector<S> residual_terms(const Qp1<P>& m, long n, const S& ym, const S& y, const S& yp) {
  P qn = detail::ipow(m.q, n);
  return {yp * y * y * ym * qn, yp * y * qn, ym * y * qn, S(qn), S(-1), y * y};
}

template <class S, class P>
std::vector<S> residual_terms(const Qp1General<P>& m, long n, const S& ym, const S& y, const S& yp) {
  P qn = detail::ipow(m.q, n);
  P c2qn = m.c * m.c * qn;
  P cqn = m.c * qn;
  return {S(1),           -(y * P(m.c + 1)), y * y * m.c, -(yp * y * y * ym * c2qn),
          yp * y * cqn,   ym * y * cqn,      S(-qn)};
}

template <class S, class P>
std::vector<S> residual_terms(const Dp1SexticFreud<P>& m, long n, const S& um2, const S& um1, const S& u,
                              const S& up1, const S& up2) {
  S u6 = u * 6;
  P rhs = P(m.rho * (n % 2 == 0 ? 0L : 1L)) + n;
  return {u6 * um2 * um1, u6 * um1 * um1, u6 * um1 * u * 2, u6 * um1 * up1, u6 * u * u,
          u6 * u * up1 * 2, u6 * up1 * up1, u6 * up1 * up2, S(-rhs)};
}

}  // namespace freudlab
