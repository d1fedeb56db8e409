#pragma once

// The catalog of discrete and q-discrete Painlevé equations.  Single-variable
// entries carry an explicit next-iterate solver (each equation is affine or
// Möbius in x_{n+1}); the coupled/asymmetric and alternative forms are kept as
// documentation records only.

#include <map>
#include <string>
#include <vector>

#include "freudlab/bigreal.hpp"
#include "freudlab/errors.hpp"
#include "freudlab/maps.hpp"
#include "freudlab/rational.hpp"

namespace freudlab {

struct CatalogEntry {
  std::string id;
  std::string section;
  std::string display;
  std::vector<std::string> parameter_names;
  bool iterable = false;
  std::map<std::string, Rational> parameters;

  /// Copy with some parameters replaced; unknown names are rejected.
  CatalogEntry with(const std::map<std::string, Rational>& values) const {
    CatalogEntry out = *this;
    for (const auto& [name, v] : values) {
      if (!out.parameters.contains(name))
        throw DomainError("catalog entry " + id + " has no parameter '" + name + "'");
      out.parameters[name] = v;
    }
    return out;
  }
};

namespace detail {

inline CatalogEntry entry(std::string id, std::string section, std::string display,
                          std::vector<std::string> names, bool iterable) {
  CatalogEntry e{std::move(id), std::move(section), std::move(display), std::move(names), iterable, {}};
  for (const auto& n : e.parameter_names) e.parameters[n] = 0;
  if (e.parameters.contains("q")) e.parameters["q"] = Rational(1, 2);
  if (e.parameters.contains("lambda0")) e.parameters["lambda0"] = 1;
  return e;
}

}  // namespace detail

inline std::vector<CatalogEntry> catalog() {
  using detail::entry;
  const std::vector<std::string> z = {"alpha", "beta"};
  auto with_z = [&](std::vector<std::string> extra) {
    std::vector<std::string> out = z;
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
  };
  const std::vector<std::string> qabcd = {"q", "lambda0", "alpha", "beta", "gamma", "delta"};
  return {
      entry("d-P_I", "A.1", "x_{n+1} + x_n + x_{n-1} = (z_n + gamma (-1)^n)/x_n + delta", with_z({"gamma", "delta"}),
            true),
      entry("d-P_II", "A.1", "x_{n+1} + x_{n-1} = (x_n z_n + gamma)/(1 - x_n^2)", with_z({"gamma"}), true),
      entry("d-P_IV", "A.1",
            "(x_{n+1} + x_n)(x_n + x_{n-1}) = (x_n^2 - kappa^2)(x_n^2 - mu^2)/((x_n + z_n)^2 - gamma^2)",
            with_z({"gamma", "kappa", "mu"}), true),
      entry("d-P_V", "A.1",
            "(x_{n+1} + x_n - z_{n+1} - z_n)(x_n + x_{n-1} - z_n - z_{n-1})/((x_{n+1} + x_n)(x_n + x_{n-1})) = "
            "[(x_n - z_n)^2 - a^2][(x_n - z_n)^2 - b^2]/((x_n - gamma^2)(x_n - delta^2))",
            with_z({"a", "b", "gamma", "delta"}), true),
      entry("q-P_II", "A.2",
            "(x_{n+1} x_n - 1)(x_n x_{n-1} - 1) = lambda_n lambda_{n-1} x_n/(alpha^2 (x_n - alpha lambda_n))",
            {"q", "lambda0", "alpha"}, true),
      entry("q-P_II'", "A.2", "x_{n+1} x_{n-1} = alpha lambda_n (lambda_n + x_n)/(x_n (x_n - 1))",
            {"q", "lambda0", "alpha"}, true),
      entry("q-P_III", "A.2",
            "x_{n+1} x_{n-1} = (x_n + alpha)(x_n + beta)/((gamma lambda_n x_n + 1)(delta lambda_n x_n + 1))", qabcd,
            true),
      entry("q-P_IV", "A.2",
            "(x_{n+1} x_n - 1)(x_n x_{n-1} - 1) = gamma delta (x_n + alpha)(x_n + 1/alpha)(x_n + beta)(x_n + "
            "1/beta)/((gamma lambda_n x_n + 1)(delta lambda_n x_n + 1))",
            qabcd, true),
      entry("q-P_V", "A.2",
            "(x_{n+1} x_n - 1)(x_n x_{n-1} - 1) = gamma delta lambda_n^2 (x_n - alpha)(x_n - 1/alpha)(x_n - "
            "beta)(x_n - 1/beta)/((x_n - gamma lambda_n)(x_n - delta lambda_n))",
            qabcd, true),
      entry("q-P_VI", "A.2",
            "(x_n x_{n+1} - lambda_n lambda_{n+1})(x_n x_{n-1} - lambda_n lambda_{n-1})/((x_n x_{n+1} - 1)(x_n "
            "x_{n-1} - 1)) = (x_n - alpha lambda_n)(x_n - lambda_n/alpha)(x_n - beta lambda_n)(x_n - "
            "lambda_n/beta)/((x_n - gamma)(x_n - 1/gamma)(x_n - delta)(x_n - 1/delta))",
            qabcd, true),
      entry("alpha-d-P_I", "A.3",
            "x_{n+1} + x_n + y_n = delta + (z_n - gamma)/y_n; y_n + y_{n-1} + x_n = delta + (z_{n+1/2} + gamma)/x_n",
            with_z({"gamma", "delta"}), false),
      entry("alpha-d-P_II", "A.3",
            "x_{n+1} + x_n = 2(y_n z_n + gamma)/(1 - y_n^2); y_n + y_{n-1} = 2(x_n z_{n+1/2} - delta)/(1 - x_n^2)",
            with_z({"gamma", "delta"}), false),
      entry("alpha-d-P_III", "A.3",
            "x_{n+1} x_n = (y_n - q^n a)(y_n - q^n b)/((y_n - c)(y_n - d)); y_n y_{n-1} = (x_n - q^n alpha)(x_n - "
            "q^n beta)/((x_n - gamma)(x_n - delta))",
            {"q", "a", "b", "c", "d", "alpha", "beta", "gamma", "delta"}, false),
      entry("alpha-d-P_IV", "A.3",
            "(y_n + x_n)(x_{n+1} + y_n) = (y_n - a)(y_n - b)(y_n - c)(y_n - d)/((y_n + gamma - z_n)(y_n - gamma - "
            "z_n)); (y_n + x_n)(x_n + y_{n-1}) = (x_n + a)(x_n + b)(x_n + c)(x_n + d)/((x_n + delta - "
            "z_{n+1/2})(x_n - delta - z_{n+1/2}))",
            with_z({"a", "b", "c", "d", "gamma", "delta"}), false),
      entry("alpha-d-P_V", "A.3", "coupled asymmetric d-P_V in (x_n, y_n) with constants a, b, c, d, p, q, r, s",
            with_z({"a", "b", "c", "d", "p", "q", "r", "s"}), false),
      entry("alpha-q-P_V", "A.3",
            "(x_n y_n - 1)(x_{n-1} y_n - 1) = q^{2n}(y_n - a)(y_n - b)(y_n - c)(y_n - d)/((q^n - kappa y_n)(q^n - "
            "y_n/kappa)); (x_n y_n - 1)(x_n y_{n+1} - 1) = q^{2n+1}(x_n - 1/a)(x_n - 1/b)(x_n - 1/c)(x_n - "
            "1/d)/((q^{n+1/2} - mu y_n)(q^{n+1/2} - y_n/mu))",
            {"q", "a", "b", "c", "d", "kappa", "mu"}, false),
      entry("alpha-d-P_VI", "A.3",
            "x_n x_{n+1} = beta3 beta4 (y_n - q^n alpha1)(y_n - q^n alpha2)/((y_n - alpha3)(y_n - alpha4)); y_n "
            "y_{n-1} = alpha3 alpha4 (x_n - q^n beta1)(x_n - q^n beta2)/((x_n - beta3)(x_n - beta4))",
            {"q", "alpha1", "alpha2", "alpha3", "alpha4", "beta1", "beta2", "beta3", "beta4"}, false),
      entry("a-d-P_I", "A.4",
            "x_{n+1} + x_n + x_{n-1} = (z_n + gamma (-1)^n)/x_n + mu, and four further alternative forms",
            with_z({"gamma", "mu"}), false),
      entry("a-d-P_II", "A.4",
            "z_n/(x_{n+1} x_n + 1) + z_{n-1}/(x_n x_{n-1} + 1) = -x_n + 1/x_n + z_n + gamma", with_z({"gamma"}),
            false),
      entry("a-d-P_V", "A.4",
            "(x_{n+1} + x_n - 2z_{n+1})(x_n + x_{n-1} - 2z_n)/((x_{n+1} + x_n)(x_n + x_{n-1})) = ((x_n - "
            "z_{n+1/2})^2 - kappa^2)/(x_n - gamma)^2, and a second alternative form",
            with_z({"gamma", "kappa", "mu"}), false),
      entry("d-P_I (coupled)", "A.5",
            "x_{n+1} + x_n = (y_n z_n + gamma)/y_n^2; y_n + y_{n-1} = (x_n z_{n+1/2} + delta)/x_n^2",
            with_z({"gamma", "delta"}), false),
      entry("d-P_II (coupled)", "A.5",
            "x_{n+1} + x_n = (y_n z_n + gamma)/(y_n^2 - mu^2); y_n + y_{n-1} = (x_n z_{n+1/2} + delta)/(x_n^2 - "
            "mu^2)",
            with_z({"gamma", "delta", "mu"}), false),
      entry("d-P_IV (coupled)", "A.5", "two coupled forms in (x_n, y_n) with constants a, b, c, d, gamma",
            with_z({"a", "b", "c", "d", "gamma"}), false),
      entry("d-P_V (coupled)", "A.5", "two coupled forms in (x_n, y_n) with constants mu, t, kappa, gamma, delta",
            with_z({"mu", "t", "kappa", "gamma", "delta"}), false),
  };
}

/// Catalog entry by id.
inline CatalogEntry catalog_entry(const std::string& id) {
  for (auto& e : catalog())
    if (e.id == id) return e;
  throw DomainError("unknown catalog entry '" + id + "'");
}

namespace detail {

struct CatalogParams {
  const CatalogEntry& e;
  Precision p;
  BigReal operator()(const std::string& name) const { return to_real(e.parameters.at(name), p); }
  BigReal lambda(long n) const { return (*this)("lambda0") * pow((*this)("q"), n); }
  BigReal z(long n) const { return (*this)("alpha") * n + (*this)("beta"); }
};

inline void require_iterable(const CatalogEntry& e) {
  if (!e.iterable) throw UnsupportedError("catalog entry " + e.id + " is data-only and cannot be iterated");
}

/// Numerator and denominator of the right-hand side of the A.2 forms
/// (x_{n+1}x_n − 1)(x_n x_{n−1} − 1) = N/D.
inline std::pair<BigReal, BigReal> q_rhs(const CatalogEntry& e, const CatalogParams& k, long n, const BigReal& x) {
  const BigReal lam = k.lambda(n);
  const BigReal a = k("alpha");
  if (e.id == "q-P_II") return {lam * k.lambda(n - 1) * x, a * a * (x - a * lam)};
  const BigReal b = k("beta"), g = k("gamma"), d = k("delta");
  if (e.id == "q-P_IV")
    return {g * d * (x + a) * (x + 1 / a) * (x + b) * (x + 1 / b), (g * lam * x + 1) * (d * lam * x + 1)};
  // q-P_V
  return {g * d * lam * lam * (x - a) * (x - 1 / a) * (x - b) * (x - 1 / b), (x - g * lam) * (x - d * lam)};
}

inline std::pair<BigReal, BigReal> q6_rhs(const CatalogParams& k, long n, const BigReal& x) {
  const BigReal lam = k.lambda(n);
  const BigReal a = k("alpha"), b = k("beta"), g = k("gamma"), d = k("delta");
  return {(x - a * lam) * (x - lam / a) * (x - b * lam) * (x - lam / b),
          (x - g) * (x - 1 / g) * (x - d) * (x - 1 / d)};
}

inline void pivot(const BigReal& v, long n, const CatalogEntry& e) {
  if (v.is_zero() || !v.is_finite()) throw SingularityError(n, e.id + " pivot vanishes");
}

}  // namespace detail

/// x_{n+1} for an iterable catalog entry.
inline BigReal catalog_next(const CatalogEntry& e, long n, const BigReal& xm, const BigReal& x) {
  detail::require_iterable(e);
  const Precision p = x.precision();
  WorkingPrecision wp(p);
  detail::CatalogParams k{e, p};
  using detail::pivot;

  if (e.id == "d-P_I") return next(Dp1<BigReal>{k("alpha"), k("beta"), k("gamma"), k("delta")}, n, xm, x);
  if (e.id == "d-P_II") return next(Dp2<BigReal>{k("alpha"), k("beta"), k("gamma")}, n, xm, x);
  if (e.id == "d-P_IV") {
    const BigReal zn = k.z(n), g = k("gamma"), ka = k("kappa"), mu = k("mu");
    BigReal den = (x + zn) * (x + zn) - g * g;
    BigReal s = x + xm;
    pivot(den, n, e);
    pivot(s, n, e);
    BigReal rhs = (x * x - ka * ka) * (x * x - mu * mu) / den;
    return rhs / s - x;
  }
  if (e.id == "d-P_V") {
    const BigReal zn = k.z(n), a = k("a"), b = k("b"), g = k("gamma"), d = k("delta");
    BigReal w = (x - zn) * (x - zn);
    BigReal rden = (x - g * g) * (x - d * d);
    pivot(rden, n, e);
    BigReal r = (w - a * a) * (w - b * b) / rden;
    BigReal big_p = x + xm - zn - k.z(n - 1);
    BigReal big_q = x + xm;
    BigReal den = big_p - r * big_q;
    pivot(den, n, e);
    BigReal u = (k.z(n + 1) + zn) * big_p / den;  // u = x_{n+1} + x_n
    return u - x;
  }
  if (e.id == "q-P_II'") {
    BigReal den = x * (x - 1) * xm;
    pivot(den, n, e);
    const BigReal lam = k.lambda(n);
    return k("alpha") * lam * (lam + x) / den;
  }
  if (e.id == "q-P_III") {
    const BigReal lam = k.lambda(n);
    BigReal den = (k("gamma") * lam * x + 1) * (k("delta") * lam * x + 1) * xm;
    pivot(den, n, e);
    return (x + k("alpha")) * (x + k("beta")) / den;
  }
  if (e.id == "q-P_II" || e.id == "q-P_IV" || e.id == "q-P_V") {
    auto [num, den] = detail::q_rhs(e, k, n, x);
    BigReal pair = x * xm - 1;
    pivot(den, n, e);
    pivot(pair, n, e);
    pivot(x, n, e);
    return (num / den / pair + 1) / x;
  }
  if (e.id == "q-P_VI") {
    auto [num, den] = detail::q6_rhs(k, n, x);
    pivot(den, n, e);
    BigReal r = num / den;
    const BigReal lam = k.lambda(n);
    BigReal a = x * xm - lam * k.lambda(n - 1);
    BigReal b = x * xm - 1;
    BigReal d = a - r * b;
    pivot(d, n, e);
    pivot(x, n, e);
    BigReal v = (lam * k.lambda(n + 1) * a - r * b) / d;  // v = x_n x_{n+1}
    return v / x;
  }
  throw UnsupportedError("catalog entry " + e.id + " has no solver");
}

/// Multiplied-out residual terms of an iterable catalog equation.
inline std::vector<BigReal> catalog_residual_terms(const CatalogEntry& e, long n, const BigReal& xm,
                                                   const BigReal& x, const BigReal& xp) {
  detail::require_iterable(e);
  const Precision p = x.precision();
  WorkingPrecision wp(p);
  detail::CatalogParams k{e, p};

  if (e.id == "d-P_I")
    return residual_terms(Dp1<BigReal>{k("alpha"), k("beta"), k("gamma"), k("delta")}, n, xm, x, xp);
  if (e.id == "d-P_II") return residual_terms(Dp2<BigReal>{k("alpha"), k("beta"), k("gamma")}, n, xm, x, xp);
  if (e.id == "d-P_IV") {
    const BigReal zn = k.z(n), g = k("gamma"), ka = k("kappa"), mu = k("mu");
    return {(xp + x) * (x + xm) * ((x + zn) * (x + zn) - g * g), -((x * x - ka * ka) * (x * x - mu * mu))};
  }
  if (e.id == "d-P_V") {
    const BigReal zn = k.z(n), a = k("a"), b = k("b"), g = k("gamma"), d = k("delta");
    BigReal w = (x - zn) * (x - zn);
    BigReal lhs = (xp + x - k.z(n + 1) - zn) * (x + xm - zn - k.z(n - 1)) * (x - g * g) * (x - d * d);
    BigReal rhs = (w - a * a) * (w - b * b) * (xp + x) * (x + xm);
    return {lhs, -rhs};
  }
  if (e.id == "q-P_II'") {
    const BigReal lam = k.lambda(n);
    return {xp * xm * x * (x - 1), -(k("alpha") * lam * (lam + x))};
  }
  if (e.id == "q-P_III") {
    const BigReal lam = k.lambda(n);
    return {xp * xm * (k("gamma") * lam * x + 1) * (k("delta") * lam * x + 1), -((x + k("alpha")) * (x + k("beta")))};
  }
  if (e.id == "q-P_II" || e.id == "q-P_IV" || e.id == "q-P_V") {
    auto [num, den] = detail::q_rhs(e, k, n, x);
    return {(xp * x - 1) * (x * xm - 1) * den, -num};
  }
  if (e.id == "q-P_VI") {
    auto [num, den] = detail::q6_rhs(k, n, x);
    const BigReal lam = k.lambda(n);
    BigReal lhs = (x * xp - lam * k.lambda(n + 1)) * (x * xm - lam * k.lambda(n - 1)) * den;
    BigReal rhs = num * (x * xp - 1) * (x * xm - 1);
    return {lhs, -rhs};
  }
  throw UnsupportedError("catalog entry " + e.id + " has no residual");
}

}  // namespace freudlab
