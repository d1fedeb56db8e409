#pragma once

// Singularity confinement checked exactly: the maps are iterated on truncated
// Laurent series in ε around a critical seed, with the free predecessor
// x_{n0−1} carried as the symbol r.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "freudlab/dpainleve.hpp"
#include "freudlab/laurent.hpp"
#include "freudlab/maps.hpp"
#include "freudlab/rational.hpp"
#include "freudlab/weights.hpp"

namespace freudlab {

using SymbolicMap = std::variant<Dp1<Rational>, Dp2<Rational>, Qp1<Rational>, Qp1General<Rational>>;

enum class Seed { zero, plus_one, minus_one };

inline std::string seed_name(Seed s) {
  switch (s) {
    case Seed::zero: return "eps";
    case Seed::plus_one: return "1+eps";
    case Seed::minus_one: return "-1+eps";
  }
  return "";
}

inline std::string symbolic_map_tag(const SymbolicMap& m) {
  static const char* tags[] = {"dp1", "dp2", "qp1", "qp1-general"};
  return tags[m.index()];
}

/// The map of a family with exact parameters.  For the generalized Charlier
/// weight a must be the square of a rational.
inline SymbolicMap symbolic_map_for(const WeightFamily& family) {
  validate(family);
  return std::visit(
      [&](const auto& f) -> SymbolicMap {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FreudQuartic>) {
          return Dp1<Rational>{1, f.rho / 2, -f.rho / 2, f.lambda};
        } else if constexpr (std::is_same_v<F, ExpCosCircle>) {
          Rational k = -2 / f.lambda;
          return Dp2<Rational>{k, k, 0};
        } else if constexpr (std::is_same_v<F, GeneralizedCharlier>) {
          Rational root;
          if (!rational_sqrt(f.a, root))
            throw UnsupportedError("exact confinement needs a to be the square of a rational");
          return Dp2<Rational>{1 / root, 0, 0};
        } else if constexpr (std::is_same_v<F, QFreud>) {
          return Qp1<Rational>{f.q};
        } else if constexpr (std::is_same_v<F, QFreudGeneral>) {
          return Qp1General<Rational>{f.q, f.c};
        } else {
          throw UnsupportedError("no symbolic confinement for family '" + family_name(family) + "'");
        }
      },
      family);
}

/// x_{n+1} from (x_{n−1}, x_n) as truncated Laurent series.
inline SymbolicLaurent laurent_step(const SymbolicMap& m, long n, const SymbolicLaurent& prev,
                                    const SymbolicLaurent& cur) {
  return std::visit([&](const auto& mm) { return next(mm, n, prev, cur); }, m);
}

struct ConfinementOptions {
  unsigned length = 3;         ///< ε-orders kept by series inversion
  unsigned max_retries = 4;    ///< retries with length + 2 on TruncationInsufficient
  long span_cap = 8;           ///< iterates after n0 allowed to stay singular
};

struct ConfinementReport {
  std::string map_tag;
  Seed seed = Seed::zero;
  long trigger_index = 0;
  /// Indices after n0 whose ε → 0 limit is a pole or a critical value.
  std::vector<long> singular_span;
  /// First index after the span, if reached within the cap.
  std::optional<long> regular_index;
  bool confined = false;
  /// The regular value at ε = 0 depends on r.
  bool memory_check = false;
  /// d-P_II only: the constant term at n0 + 2 is minus the seed's.
  std::optional<bool> alternation;
  /// Lowest ε-order of every iterate from n0 − 1 on.
  std::map<long, long> lowest_orders;
  /// Coefficients of ε^k, min(lowest order, −1) ≤ k ≤ 1, for indices n0 .. regular_index.
  std::map<std::pair<long, long>, RationalFunctionR> recovered_coefficients;
  std::map<long, SymbolicLaurent> series;
  unsigned truncation_length = 0;

  const RationalFunctionR& coefficient(long index, long power) const {
    auto it = recovered_coefficients.find({index, power});
    if (it == recovered_coefficients.end())
      throw DomainError("coefficient of eps^" + std::to_string(power) + " at n = " + std::to_string(index) +
                        " was not recovered");
    return it->second;
  }
};

namespace detail {

inline SymbolicLaurent seed_series(Seed s) {
  switch (s) {
    case Seed::zero: return SymbolicLaurent::epsilon();
    case Seed::plus_one: return SymbolicLaurent(1) + SymbolicLaurent::epsilon();
    case Seed::minus_one: return SymbolicLaurent(-1) + SymbolicLaurent::epsilon();
  }
  return {};
}

inline bool seed_allowed(const SymbolicMap& m, Seed s) {
  return std::holds_alternative<Dp2<Rational>>(m) ? s != Seed::zero : s == Seed::zero;
}

/// Pole, or a value at ε = 0 where the next step divides by zero.
inline bool singular_or_critical(const SymbolicMap& m, const SymbolicLaurent& x) {
  const long low = x.lowest_order();
  if (low < 0) return true;
  if (std::holds_alternative<Dp2<Rational>>(m)) {
    if (low > 0) return false;
    RationalFunctionR c0 = x.coefficient(0);
    return c0 == RationalFunctionR(1) || c0 == RationalFunctionR(-1);
  }
  return low > 0;
}

inline ConfinementReport run_confinement_once(const SymbolicMap& m, long n0, Seed seed, const ConfinementOptions& opts) {
  ConfinementReport rep;
  rep.map_tag = symbolic_map_tag(m);
  rep.seed = seed;
  rep.trigger_index = n0;
  rep.truncation_length = freudlab::laurent_length();
  std::map<long, SymbolicLaurent>& xs = rep.series;
  xs[n0 - 1] = SymbolicLaurent::symbol_r();
  xs[n0] = seed_series(seed);

  long k = n0;
  for (;; ++k) {
    SymbolicLaurent nxt = laurent_step(m, k, xs[k - 1], xs[k]);
    if (nxt.known_zero() && nxt.truncation_order() <= 0)
      throw TruncationInsufficient("iterate " + std::to_string(k + 1) + " unresolved");
    xs[k + 1] = nxt;
    if (!singular_or_critical(m, nxt)) {
      rep.regular_index = k + 1;
      break;
    }
    rep.singular_span.push_back(k + 1);
    if (static_cast<long>(rep.singular_span.size()) >= opts.span_cap) break;
  }

  for (const auto& [idx, s] : xs) rep.lowest_orders[idx] = s.is_exact() && s.known_zero() ? 0 : s.lowest_order();
  const long last = rep.regular_index.value_or(k + 1);
  for (long idx = n0; idx <= last; ++idx) {
    const SymbolicLaurent& s = xs[idx];
    const long top = idx == last && rep.regular_index ? 0 : 1;
    const long from = std::min(s.lowest_order(), -1L);
    for (long p = from; p <= top; ++p) {
      if (!s.knows(p)) throw TruncationInsufficient("coefficient of eps^" + std::to_string(p) + " unresolved");
      rep.recovered_coefficients.emplace(std::pair{idx, p}, s.coefficient(p));
    }
    if (idx == last && rep.regular_index && s.knows(1)) rep.recovered_coefficients.emplace(std::pair{idx, 1L}, s.coefficient(1));
  }

  if (rep.regular_index) rep.memory_check = xs[*rep.regular_index].coefficient(0).depends_on_r();
  rep.confined = rep.regular_index.has_value() && rep.memory_check;
  if (std::holds_alternative<Dp2<Rational>>(m) && xs.count(n0 + 2)) {
    const long s0 = seed == Seed::plus_one ? 1 : -1;
    const SymbolicLaurent& x2 = xs[n0 + 2];
    rep.alternation = x2.lowest_order() == 0 && x2.coefficient(0) == RationalFunctionR(-s0);
  }
  return rep;
}

}  // namespace detail

/// Iterates from x_{n0−1} = r, x_{n0} = seed until an iterate is neither a
/// pole nor critical, or the span cap is reached.
inline ConfinementReport run_confinement(const SymbolicMap& m, long n0, Seed seed, ConfinementOptions opts = {}) {
  if (n0 < 2) throw DomainError("n0 must be at least 2");
  if (!detail::seed_allowed(m, seed))
    throw DomainError("seed " + seed_name(seed) + " is not critical for " + symbolic_map_tag(m));
  if (opts.span_cap < 1) throw DomainError("span cap must be positive");
  unsigned length = opts.length;
  for (unsigned attempt = 0;; ++attempt, length += 2) {
    LaurentLength guard(length);
    try {
      return detail::run_confinement_once(m, n0, seed, opts);
    } catch (const TruncationInsufficient&) {
      if (attempt >= opts.max_retries) throw;
    }
  }
}

/// The numeric replay of a confinement scenario.
struct ShadowCheck {
  /// Largest relative deviation between ε^{−k} x_idx and the symbolic leading coefficient.
  BigReal max_deviation;
  std::map<long, BigReal> values;
};

/// Replays the scenario with x_{n0−1} = r_value and numeric ε, and compares
/// each iterate's leading behaviour with the symbolic report.
inline ShadowCheck numeric_shadow(const SymbolicMap& m, const ConfinementReport& rep, const Rational& r_value,
                                  const BigReal& eps, Precision p) {
  WorkingPrecision wp(p);
  const long n0 = rep.trigger_index;
  const BigReal e(eps, p);
  BigReal seed = rep.seed == Seed::zero ? e : (rep.seed == Seed::plus_one ? 1 + e : -1 + e);
  ShadowCheck out{BigReal(0), {}};
  out.values[n0 - 1] = to_real(r_value, p);
  out.values[n0] = seed;
  const long last = rep.regular_index.value_or(n0 + static_cast<long>(rep.singular_span.size()));
  for (long k = n0; k < last; ++k) {
    out.values[k + 1] = std::visit(
        [&](const auto& mm) -> BigReal {
          using M = std::decay_t<decltype(mm)>;
          if constexpr (std::is_same_v<M, Dp1<Rational>>)
            return next(Dp1<BigReal>{to_real(mm.alpha, p), to_real(mm.beta, p), to_real(mm.gamma, p),
                                     to_real(mm.delta, p)},
                        k, out.values[k - 1], out.values[k]);
          else if constexpr (std::is_same_v<M, Dp2<Rational>>)
            return next(Dp2<BigReal>{to_real(mm.alpha, p), to_real(mm.beta, p), to_real(mm.gamma, p)}, k,
                        out.values[k - 1], out.values[k]);
          else if constexpr (std::is_same_v<M, Qp1<Rational>>)
            return next(Qp1<BigReal>{to_real(mm.q, p)}, k, out.values[k - 1], out.values[k]);
          else
            return next(Qp1General<BigReal>{to_real(mm.q, p), to_real(mm.c, p)}, k, out.values[k - 1],
                        out.values[k]);
        },
        m);
  }
  const BigReal r = to_real(r_value, p);
  for (long idx = n0 + 1; idx <= last; ++idx) {
    const SymbolicLaurent& s = rep.series.at(idx);
    const long low = s.lowest_order();
    BigReal expected = s.coefficient(low)(r, p);
    BigReal scaled = out.values[idx] / pow(e, low);
    out.max_deviation = max(out.max_deviation, abs(scaled - expected) / abs(expected));
  }
  return out;
}

}  // namespace freudlab
