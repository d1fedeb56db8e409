#pragma once

// Scripted experiments: the three instability figures, the asymptotic limits
// on oracle sequences, and precision frontiers of forward iteration.

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "freudlab/dpainleve.hpp"
#include "freudlab/oracle.hpp"
#include "freudlab/weights.hpp"

namespace freudlab {

enum class RowFlag { ok, diverged, singular };

inline std::string flag_name(RowFlag f) {
  switch (f) {
    case RowFlag::ok: return "ok";
    case RowFlag::diverged: return "diverged";
    case RowFlag::singular: return "singular";
  }
  return "";
}

struct LabRow {
  long n = 0;
  BigReal value;
  std::optional<BigReal> derived_a2;
  std::optional<BigReal> derived_b;
  RowFlag flag = RowFlag::ok;
  std::vector<BigReal> extra;
};

/// Everything needed to rerun an experiment bit for bit.
struct LabMetadata {
  std::string experiment;
  std::string family;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string map;
  unsigned digits = 0;
  long N = 0;
  long base_index = 0;
  std::vector<std::string> seeds;
  /// Oracle coefficients used as the reference, and the digits they were certified to.
  long oracle_span = 0;
  unsigned oracle_digits = 0;
  /// Relative a_n² deviation from the oracle counted as divergence.
  std::string oracle_threshold;
};

struct LabTable {
  LabMetadata meta;
  std::vector<std::string> extra_columns;
  std::vector<LabRow> rows;
  /// First index outside the admissible set.
  std::optional<long> admissibility_index;
  /// First index deviating from the oracle by more than the threshold.
  std::optional<long> oracle_index;
  /// First index of the experiment's own divergence criterion; rows from here on are flagged.
  std::optional<long> divergence_index;
  std::optional<long> singular_index;
};

namespace detail {

inline LabMetadata metadata(const std::string& experiment, const WeightFamily& family, long N, Precision p) {
  LabMetadata m;
  m.experiment = experiment;
  m.family = family_name(family);
  for (const auto& [k, v] : family_parameters(family)) m.parameters.emplace_back(k, to_string(v));
  m.digits = p.digits();
  m.N = N;
  return m;
}

inline std::optional<long> earliest(std::optional<long> a, std::optional<long> b) {
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

}  // namespace detail

struct TraceOptions {
  /// Compare a_n² (κ-ratios for the circle) with the oracle for n ≤ oracle_span; 0 disables.
  long oracle_span = 0;
  unsigned oracle_digits = 20;
  BigReal oracle_threshold = BigReal::ratio(1, 10);
  /// Added to the last initial value.
  std::optional<BigReal> perturbation;
  /// Precomputed oracle output; computed on demand when absent.
  std::optional<RecurrenceCoeffs> reference;
  std::optional<VerblunskyCoeffs> reference_circle;
};

namespace detail {

inline void fill_reference(const WeightFamily& family, TraceOptions& opts, long N) {
  if (opts.oracle_span <= 0) return;
  const auto span = static_cast<std::size_t>(std::min(opts.oracle_span, N));
  if (is_circle(family)) {
    if (!opts.reference_circle) opts.reference_circle = oracle_verblunsky(family, span + 1, opts.oracle_digits);
  } else if (!opts.reference) {
    opts.reference = oracle_coeffs(family, span, opts.oracle_digits);
  }
}

}  // namespace detail

/// Forward iteration of a family's recurrence at precision p, one row per index,
/// with a_n² and b_n read off the trace.
inline LabTable trace_table(const WeightFamily& family, long N, Precision p, TraceOptions opts = {}) {
  validate(family);
  detail::fill_reference(family, opts, N);
  WorkingPrecision wp(p);
  InitialData init = initial_data(family, p);
  if (opts.perturbation) init.values.back() += *opts.perturbation;
  Trace t = iterate(map_for(family, p), init, N, p);

  LabTable out;
  out.meta = detail::metadata("trace", family, N, p);
  out.meta.map = t.map_tag;
  out.meta.base_index = t.base_index;
  for (const auto& v : init.values) out.meta.seeds.push_back(v.to_string(p.digits()));
  out.admissibility_index = t.divergence_index;
  out.singular_index = t.singular_index;

  if (opts.oracle_span > 0) {
    const long span = std::min(opts.oracle_span, N);
    out.meta.oracle_span = span;
    out.meta.oracle_digits = opts.oracle_digits;
    out.meta.oracle_threshold = opts.oracle_threshold.to_string(6);
    std::vector<BigReal> ref = is_circle(family) ? opts.reference_circle->kappa_ratio : opts.reference->a2;
    ref.resize(std::min(ref.size(), static_cast<std::size_t>(span) + 1));
    out.oracle_index = first_divergence(family, t, std::span<const BigReal>(ref), opts.oracle_threshold);
  }
  out.divergence_index = detail::earliest(out.admissibility_index, out.oracle_index);

  const bool circle = is_circle(family);
  const bool charlier = std::holds_alternative<GeneralizedCharlier>(family);
  for (long n = t.base_index; n <= t.last_index(); ++n) {
    LabRow row;
    row.n = n;
    row.value = t.at(n);
    if (n >= (circle ? 0 : 1)) row.derived_a2 = trace_a2(family, t, n);
    if (!circle && n >= 0 && (!charlier || t.has(n + 1))) row.derived_b = trace_b(family, t, n);
    if (t.singular_index && n == *t.singular_index) row.flag = RowFlag::singular;
    else if (out.divergence_index && n >= *out.divergence_index) row.flag = RowFlag::diverged;
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// Closed-form rows (a_n, a_n², b_n) for the families with explicit coefficients.
inline LabTable closed_form_table(const WeightFamily& family, long N, Precision p) {
  if (N < 1) throw DomainError("N must be positive");
  WorkingPrecision wp(p);
  LabTable out;
  out.meta = detail::metadata("closed-form", family, N, p);
  out.meta.base_index = 1;
  for (long n = 1; n <= N; ++n) {
    CoeffPair c = closed_form(family, n, p.guarded());
    LabRow row;
    row.n = n;
    row.value = BigReal(c.a, p);
    row.derived_a2 = BigReal(c.a * c.a, p);
    row.derived_b = std::holds_alternative<Charlier>(family) ? to_real(std::get<Charlier>(family).a + n, p) : BigReal(0);
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// Recurrence coefficients from moments, one row per n: value = a_n.
inline LabTable oracle_table(const WeightFamily& family, long N, unsigned target_digits) {
  if (N < 1) throw DomainError("N must be positive");
  const Precision p(target_digits);
  LabTable out;
  out.meta = detail::metadata("oracle", family, N, p);
  out.meta.oracle_span = N;
  out.meta.oracle_digits = target_digits;
  WorkingPrecision wp(p);
  if (is_circle(family)) {
    auto v = oracle_verblunsky(family, static_cast<std::size_t>(N) + 1, target_digits);
    out.meta.base_index = 0;
    for (long n = 0; n <= N; ++n) {
      LabRow row;
      row.n = n;
      row.value = BigReal(v.alpha[static_cast<std::size_t>(n)], p);
      row.derived_a2 = BigReal(v.kappa_ratio[static_cast<std::size_t>(n)], p);
      out.rows.push_back(std::move(row));
    }
    return out;
  }
  auto rc = oracle_coeffs(family, static_cast<std::size_t>(N), target_digits);
  out.meta.base_index = 1;
  for (long n = 1; n <= N; ++n) {
    LabRow row;
    row.n = n;
    row.value = BigReal(sqrt(rc.a2[static_cast<std::size_t>(n)]), p);
    row.derived_a2 = BigReal(rc.a2[static_cast<std::size_t>(n)], p);
    row.derived_b = BigReal(rc.b[static_cast<std::size_t>(n - 1)], p);
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// d-P_I for e^{−x⁴} at p digits next to the asymptote √(n/3).
inline LabTable figure1(Precision p = Precision(30), long N = 100) {
  const WeightFamily family = FreudQuartic{0};
  TraceOptions opts;
  opts.oracle_span = N;
  LabTable t = trace_table(family, N, p, opts);
  t.meta.experiment = "figure1";
  t.extra_columns = {"sqrt_n_over_3"};
  WorkingPrecision wp(p);
  for (auto& row : t.rows) row.extra.push_back(sqrt(BigReal(std::max(row.n, 0L)) / 3));
  return t;
}

/// d-P_II for the generalized Charlier weight a^k/(k!)² at p digits.  Besides
/// leaving (−1, 1), |c_n| > 1/2 for n ≥ 2 counts as divergence.
inline LabTable figure2(const Rational& a = 1, Precision p = Precision(30), long N = 80) {
  const WeightFamily family = GeneralizedCharlier{a};
  TraceOptions opts;
  opts.oracle_span = N;
  LabTable t = trace_table(family, N, p, opts);
  t.meta.experiment = "figure2";
  WorkingPrecision wp(p);
  std::optional<long> large;
  for (const auto& row : t.rows)
    if (row.n >= 2 && abs(row.value) > BigReal::ratio(1, 2)) {
      large = row.n;
      break;
    }
  t.divergence_index = detail::earliest(t.divergence_index, large);
  for (auto& row : t.rows)
    if (row.flag == RowFlag::ok && t.divergence_index && row.n >= *t.divergence_index) row.flag = RowFlag::diverged;
  return t;
}

/// q-P_I for the q-Freud weight at p digits, with log|y_n|.  The oracle
/// reference covers n ≤ oracle_span.
inline LabTable figure3(const Rational& q = Rational(9, 10), Precision p = Precision(50), long N = 200,
                        long oracle_span = 100) {
  const WeightFamily family = QFreud{q};
  TraceOptions opts;
  opts.oracle_span = oracle_span;
  LabTable t = trace_table(family, N, p, opts);
  t.meta.experiment = "figure3";
  t.extra_columns = {"log_abs_value"};
  WorkingPrecision wp(p);
  for (auto& row : t.rows) row.extra.push_back(row.value.is_zero() ? BigReal(0) : log(abs(row.value)));
  return t;
}

/// Scaled oracle coefficients next to their limit: a_n/n^{1/m} for the Freud
/// families (generalized Hermite is m = 2) and a_n²/q^{n−1} for q-Freud.
inline LabTable asymptotics(const WeightFamily& family, long N, Precision p) {
  validate(family);
  if (N < 1) throw DomainError("N must be positive");
  Rational m = 0;
  if (std::holds_alternative<GeneralizedHermite>(family)) m = 2;
  else if (auto* f = std::get_if<FreudQuartic>(&family); f && f->lambda == 0) m = 4;
  else if (std::holds_alternative<FreudSextic>(family)) m = 6;
  else if (!std::holds_alternative<QFreud>(family))
    throw UnsupportedError("no asymptotic limit implemented for family '" + family_name(family) + "'");

  auto rc = oracle_coeffs(family, static_cast<std::size_t>(N), p.digits());
  WorkingPrecision wp(p);
  LabTable out;
  out.meta = detail::metadata("asymptotics", family, N, p);
  out.meta.base_index = 1;
  out.meta.oracle_span = N;
  out.meta.oracle_digits = p.digits();
  out.extra_columns = {"limit", "deviation"};
  const BigReal limit = m != 0 ? freud_constant(m, p) : BigReal(1);
  for (long n = 1; n <= N; ++n) {
    LabRow row;
    row.n = n;
    const BigReal& a2 = rc.a2[static_cast<std::size_t>(n)];
    if (m != 0) {
      row.value = sqrt(a2) / pow(BigReal(n), 1 / to_real(m, p));
    } else {
      row.value = a2 / pow(to_real(std::get<QFreud>(family).q, p), n - 1);
    }
    row.derived_a2 = BigReal(a2, p);
    row.derived_b = BigReal(rc.b[static_cast<std::size_t>(n - 1)], p);
    row.extra = {limit, abs(row.value - limit)};
    out.rows.push_back(std::move(row));
  }
  return out;
}

struct FrontierRow {
  unsigned digits = 0;
  std::optional<long> divergence_index;
};

struct Frontier {
  LabMetadata meta;
  std::vector<FrontierRow> rows;
};

/// Divergence index (admissibility or oracle deviation) of forward iteration at each precision.
inline Frontier precision_frontier(const WeightFamily& family, const std::vector<unsigned>& digits, long N,
                                   const TraceOptions& base = {}) {
  if (digits.empty()) throw DomainError("no precisions given");
  Frontier out;
  out.meta = detail::metadata("precision-frontier", family, N, Precision(digits.front()));
  TraceOptions opts = base;
  if (opts.oracle_span == 0) opts.oracle_span = N;
  detail::fill_reference(family, opts, N);
  out.meta.oracle_span = opts.oracle_span;
  out.meta.oracle_digits = opts.oracle_digits;
  out.meta.oracle_threshold = opts.oracle_threshold.to_string(6);
  if (opts.perturbation) out.meta.seeds.push_back("perturbation " + opts.perturbation->to_string(6));
  for (unsigned d : digits) {
    LabTable t = trace_table(family, N, Precision(d), opts);
    out.rows.push_back({d, t.divergence_index});
  }
  return out;
}

}  // namespace freudlab
