#pragma once

// Numerical discrete Painlevé maps: parameterisation from weight families,
// forward iteration with admissibility tracking, residuals, and the
// reconstruction of recurrence coefficients from iterates.

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "freudlab/bigreal.hpp"
#include "freudlab/catalog.hpp"
#include "freudlab/errors.hpp"
#include "freudlab/maps.hpp"
#include "freudlab/weights.hpp"

namespace freudlab {

using PainleveMap = std::variant<Dp1<BigReal>, Dp1SexticFreud<BigReal>, Dp2<BigReal>, Qp1<BigReal>,
                                 Qp1General<BigReal>, CatalogEntry>;

/// Where the iterates of the true solution live.
enum class Admissibility { any, positive, open_unit };

inline std::string map_tag(const PainleveMap& map) {
  struct {
    std::string operator()(const Dp1<BigReal>&) const { return "d-P_I"; }
    std::string operator()(const Dp1SexticFreud<BigReal>&) const { return "d-P_I-sextic"; }
    std::string operator()(const Dp2<BigReal>&) const { return "d-P_II"; }
    std::string operator()(const Qp1<BigReal>&) const { return "q-P_I"; }
    std::string operator()(const Qp1General<BigReal>&) const { return "q-P_I-general"; }
    std::string operator()(const CatalogEntry& e) const { return e.id; }
  } tag;
  return std::visit(tag, map);
}

/// Number of predecessors a step consumes.
inline int map_order(const PainleveMap& map) { return std::holds_alternative<Dp1SexticFreud<BigReal>>(map) ? 4 : 2; }

inline Admissibility admissibility(const PainleveMap& map) {
  if (std::holds_alternative<Dp2<BigReal>>(map)) return Admissibility::open_unit;
  if (std::holds_alternative<CatalogEntry>(map)) return Admissibility::any;
  return Admissibility::positive;
}

inline bool admissible(Admissibility a, const BigReal& x) {
  switch (a) {
    case Admissibility::positive: return x > 0;
    case Admissibility::open_unit: return x > -1 && x < 1;
    case Admissibility::any: return x.is_finite();
  }
  return true;
}

/// The map with every numerical parameter rounded to precision p.
inline PainleveMap with_precision(const PainleveMap& map, Precision p) {
  auto r = [&](const BigReal& x) { return BigReal(x, p); };
  return std::visit(
      [&](const auto& m) -> PainleveMap {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, Dp1<BigReal>>) return M{r(m.alpha), r(m.beta), r(m.gamma), r(m.delta)};
        else if constexpr (std::is_same_v<M, Dp1SexticFreud<BigReal>>) return M{r(m.rho)};
        else if constexpr (std::is_same_v<M, Dp2<BigReal>>) return M{r(m.alpha), r(m.beta), r(m.gamma)};
        else if constexpr (std::is_same_v<M, Qp1<BigReal>>) return M{r(m.q)};
        else if constexpr (std::is_same_v<M, Qp1General<BigReal>>) return M{r(m.q), r(m.c)};
        else return m;
      },
      map);
}

/// The Painlevé map governing a family's recurrence coefficients.
inline PainleveMap map_for(const WeightFamily& family, Precision p) {
  validate(family);
  const Precision guard = p.guarded();
  WorkingPrecision wp(guard);
  auto real = [&](const Rational& x) { return to_real(x, guard); };
  PainleveMap out = std::visit(
      [&](const auto& f) -> PainleveMap {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FreudQuartic>) {
          Rational half = f.rho / 2;
          return Dp1<BigReal>{BigReal(1), real(half), real(-half), real(f.lambda)};
        } else if constexpr (std::is_same_v<F, FreudSextic>) {
          return Dp1SexticFreud<BigReal>{real(f.rho)};
        } else if constexpr (std::is_same_v<F, ExpCosCircle>) {
          BigReal a = real(Rational(-2) / f.lambda);
          return Dp2<BigReal>{a, a, BigReal(0)};
        } else if constexpr (std::is_same_v<F, GeneralizedCharlier>) {
          return Dp2<BigReal>{1 / sqrt(real(f.a)), BigReal(0), BigReal(0)};
        } else if constexpr (std::is_same_v<F, QFreud>) {
          return Qp1<BigReal>{real(f.q)};
        } else if constexpr (std::is_same_v<F, QFreudGeneral>) {
          return Qp1General<BigReal>{real(f.q), real(f.c)};
        } else {
          throw UnsupportedError("family '" + family_name(family) + "' has no Painlevé recurrence");
        }
      },
      family);
  return with_precision(out, p);
}

/// Next iterate from the last map_order(map) values; `n` is the equation index
/// (for order 2, history = (x_{n−1}, x_n) and the result is x_{n+1}).
inline BigReal step(const PainleveMap& map, long n, std::span<const BigReal> history) {
  if (history.size() != static_cast<std::size_t>(map_order(map)))
    throw DomainError("step: expected " + std::to_string(map_order(map)) + " predecessors");
  return std::visit(
      [&](const auto& m) -> BigReal {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, CatalogEntry>) return catalog_next(m, n, history[0], history[1]);
        else if constexpr (std::is_same_v<M, Dp1SexticFreud<BigReal>>)
          return next(m, n, history[0], history[1], history[2], history[3]);
        else return next(m, n, history[0], history[1]);
      },
      map);
}

inline BigReal step(const PainleveMap& map, long n, const BigReal& prev, const BigReal& cur) {
  const BigReal h[] = {prev, cur};
  return step(map, n, std::span<const BigReal>(h));
}

/// Terms whose sum is LHS − RHS of the multiplied-out equation at index n;
/// `window` holds map_order(map) + 1 consecutive iterates centred on n.
inline std::vector<BigReal> residual_terms(const PainleveMap& map, long n, std::span<const BigReal> window) {
  if (window.size() != static_cast<std::size_t>(map_order(map) + 1))
    throw DomainError("residual: expected " + std::to_string(map_order(map) + 1) + " iterates");
  return std::visit(
      [&](const auto& m) -> std::vector<BigReal> {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, CatalogEntry>)
          return catalog_residual_terms(m, n, window[0], window[1], window[2]);
        else if constexpr (std::is_same_v<M, Dp1SexticFreud<BigReal>>)
          return residual_terms(m, n, window[0], window[1], window[2], window[3], window[4]);
        else return residual_terms(m, n, window[0], window[1], window[2]);
      },
      map);
}

/// LHS − RHS of the multiplied-out equation.
inline BigReal residual(const PainleveMap& map, long n, std::span<const BigReal> window) {
  return detail::sum(residual_terms(map, n, window));
}

/// Residual divided by the sum of the absolute values of its terms.
inline BigReal scaled_residual(const PainleveMap& map, long n, std::span<const BigReal> window) {
  auto terms = residual_terms(map, n, window);
  BigReal total = detail::sum(terms);
  BigReal scale = abs(terms.front());
  for (std::size_t i = 1; i < terms.size(); ++i) scale += abs(terms[i]);
  if (scale.is_zero()) return scale;
  return abs(total) / scale;
}

struct Trace {
  std::string map_tag;
  long base_index = 0;
  std::vector<BigReal> values;
  Precision precision{30};
  Admissibility admissible_set = Admissibility::any;
  /// First index that must lie in the admissible set.
  long first_checked = 0;
  /// First index violating admissibility.
  std::optional<long> divergence_index;
  /// Equation index whose pivot vanished; iteration stopped there.
  std::optional<long> singular_index;

  long last_index() const { return base_index + static_cast<long>(values.size()) - 1; }
  bool has(long n) const { return n >= base_index && n <= last_index(); }
  const BigReal& at(long n) const {
    if (!has(n)) throw DomainError("trace has no iterate at n = " + std::to_string(n));
    return values[static_cast<std::size_t>(n - base_index)];
  }
  std::span<const BigReal> window(long from, std::size_t count) const {
    return std::span<const BigReal>(values).subspan(static_cast<std::size_t>(from - base_index), count);
  }
};

/// Forward iteration at fixed precision p from `init` up to index N.
/// Iteration continues past the first admissibility violation; a vanishing
/// pivot ends it and is recorded in singular_index.
inline Trace iterate(const PainleveMap& map_in, const InitialData& init, long N, Precision p) {
  const int order = map_order(map_in);
  if (init.values.size() != static_cast<std::size_t>(order))
    throw DomainError("iterate: expected " + std::to_string(order) + " initial values");
  if (N < init.base_index + order - 1) throw DomainError("iterate: N is below the initial data");

  WorkingPrecision wp(p);
  const PainleveMap map = with_precision(map_in, p);
  Trace t;
  t.map_tag = map_tag(map);
  t.base_index = init.base_index;
  t.precision = p;
  t.admissible_set = admissibility(map);
  t.first_checked = init.base_index + order / 2;
  for (const auto& v : init.values) t.values.emplace_back(v, p);

  auto check = [&](long idx) {
    if (!t.divergence_index && idx >= t.first_checked && !admissible(t.admissible_set, t.at(idx)))
      t.divergence_index = idx;
  };
  for (long idx = t.base_index; idx <= t.last_index(); ++idx) check(idx);

  for (long next_index = t.last_index() + 1; next_index <= N; ++next_index) {
    const long n = next_index - order / 2;
    try {
      BigReal v = step(map, n, t.window(next_index - order, static_cast<std::size_t>(order)));
      if (!v.is_finite()) throw SingularityError(n, "non-finite iterate");
      t.values.push_back(std::move(v));
    } catch (const SingularityError& e) {
      t.singular_index = e.index();
      if (!t.divergence_index) t.divergence_index = next_index;
      break;
    }
    check(next_index);
  }
  return t;
}

/// Iterates a family's own recurrence from its exact initial data.
inline Trace iterate(const WeightFamily& family, long N, Precision p) {
  return iterate(map_for(family, p), initial_data(family, p), N, p);
}

/// Verblunsky coefficients α_0, α_1, ... with the ratios κ_n²/κ_{n+1}² = 1 − α_n².
struct VerblunskyCoeffs {
  std::vector<BigReal> alpha;
  std::vector<BigReal> kappa_ratio;
};

namespace detail {

inline long usable_last(const Trace& t, std::optional<long> upto, long need_ahead) {
  long last = t.last_index() - need_ahead;
  if (t.divergence_index) last = std::min(last, *t.divergence_index - 1 - need_ahead);
  if (upto) {
    if (t.divergence_index && *upto + need_ahead >= *t.divergence_index)
      throw ReconstructionError(*t.divergence_index, "iterate outside the admissible set");
    if (*upto > t.last_index() - need_ahead) throw DomainError("trace too short for the requested index");
    last = *upto;
  }
  return last;
}

}  // namespace detail

/// a_n² implied by the trace at index n, with no admissibility check.  For the
/// circle this is the κ-ratio 1 − α_n².
inline BigReal trace_a2(const WeightFamily& family, const Trace& t, long n) {
  WorkingPrecision wp(t.precision);
  const Precision p = t.precision;
  return std::visit(
      [&](const auto& f) -> BigReal {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, FreudQuartic>) return t.at(n) / 2;
        else if constexpr (std::is_same_v<F, FreudSextic>) return t.at(n);
        else if constexpr (std::is_same_v<F, ExpCosCircle>) return 1 - t.at(n) * t.at(n);
        else if constexpr (std::is_same_v<F, GeneralizedCharlier>) return to_real(f.a, p) * (1 - t.at(n) * t.at(n));
        else if constexpr (std::is_same_v<F, QFreud> || std::is_same_v<F, QFreudGeneral>)
          return pow(to_real(f.q, p), n - 1) * t.at(n);
        else throw UnsupportedError("family '" + family_name(family) + "' has no Painlevé recurrence");
      },
      family);
}

/// b_n implied by the trace (zero for symmetric families).
inline BigReal trace_b(const WeightFamily& family, const Trace& t, long n) {
  WorkingPrecision wp(t.precision);
  if (auto* g = std::get_if<GeneralizedCharlier>(&family))
    return sqrt(to_real(g->a, t.precision)) * t.at(n) * t.at(n + 1) + n;
  if (is_circle(family)) throw UnsupportedError("the circle has no b_n");
  return BigReal(0);
}

/// a_1..a_M and b_0..b_{M−1} from the trace, M = `upto` or the last index before divergence.
inline RecurrenceCoeffs reconstruct_coeffs(const WeightFamily& family, const Trace& t, Precision p,
                                           std::optional<long> upto = std::nullopt) {
  if (is_circle(family))
    throw UnsupportedError("circle traces hold Verblunsky coefficients; use reconstruct_verblunsky");
  const bool charlier = std::holds_alternative<GeneralizedCharlier>(family);
  const long last = detail::usable_last(t, upto, 0);
  WorkingPrecision wp(p);
  RecurrenceCoeffs out;
  out.a2.emplace_back(0);
  for (long n = 1; n <= last; ++n) {
    BigReal a2(trace_a2(family, t, n), p);
    if (!(a2 > 0)) throw ReconstructionError(n, "nonpositive a_n^2");
    out.a2.push_back(std::move(a2));
  }
  for (long n = 0; n < last; ++n) out.b.emplace_back(charlier ? trace_b(family, t, n) : BigReal(0), p);
  return out;
}

/// α_0..α_M and their κ-ratios from a circle trace.
inline VerblunskyCoeffs reconstruct_verblunsky(const Trace& t, Precision p, std::optional<long> upto = std::nullopt) {
  const long last = detail::usable_last(t, upto, 0);
  WorkingPrecision wp(p);
  VerblunskyCoeffs out;
  for (long n = 0; n <= last; ++n) {
    const BigReal& a = t.at(n);
    if (!(abs(a) < 1)) throw ReconstructionError(n, "|alpha_n| >= 1");
    out.alpha.emplace_back(a, p);
    out.kappa_ratio.emplace_back(1 - a * a, p);
  }
  return out;
}

/// Left side q^{n−1}(1 − q^n)/(1 − q⁴) of the q-Freud equation in the scaling
/// x_n = a_n²/√(1 − q⁴); tends to n/4 as q → 1.
inline BigReal q_freud_scaled_lhs(const BigReal& q, long n, Precision p) {
  WorkingPrecision wp(p.guarded());
  BigReal qg(q, p.guarded());
  return BigReal(pow(qg, n - 1) * (1 - pow(qg, n)) / (1 - pow(qg, 4)), p);
}

}  // namespace freudlab
