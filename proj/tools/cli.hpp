#pragma once

// Command-line front end.  run_cli() is the whole program; main() only
// forwards to it so tests can drive the CLI in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "freudlab.hpp"

namespace freudlab::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode { ok = 0, usage = 1, domain = 2, precision = 3, singular = 4 };

struct Common {
  unsigned digits = 30;
  std::string family;
  std::optional<std::string> rho, lambda, a, q, c;
  long n = 20;
  bool json = false;
  bool csv = false;
  std::string output;
};

inline Rational param(const std::optional<std::string>& text, const Rational& fallback) {
  return text ? parse_rational(*text) : fallback;
}

/// Family from --family and its parameter flags; unset parameters take documented defaults.
inline WeightFamily make_family(const Common& o) {
  const std::string& f = o.family;
  if (f.empty()) throw DomainError("--family is required");
  WeightFamily out;
  if (f == "hermite") out = GeneralizedHermite{param(o.rho, 0)};
  else if (f == "freud4") out = FreudQuartic{param(o.rho, 0), param(o.lambda, 0)};
  else if (f == "freud6") out = FreudSextic{param(o.rho, 0)};
  else if (f == "circle") out = ExpCosCircle{param(o.lambda, 2)};
  else if (f == "charlier") out = Charlier{param(o.a, 1)};
  else if (f == "gencharlier") out = GeneralizedCharlier{param(o.a, 1)};
  else if (f == "qhermite") out = QHermite{param(o.q, Rational(1, 2))};
  else if (f == "qfreud") out = QFreud{param(o.q, Rational(9, 10))};
  else if (f == "qfreud-general") out = QFreudGeneral{param(o.q, Rational(9, 10)), param(o.c, Rational(-1, 2))};
  else throw UnsupportedError("unsupported family '" + f + "'");
  validate(out);
  return out;
}

using json = nlohmann::ordered_json;

inline std::string num(const BigReal& v, unsigned digits) { return v.to_string(digits); }
inline std::string opt_num(const std::optional<BigReal>& v, unsigned digits) { return v ? num(*v, digits) : ""; }
inline json opt_index(const std::optional<long>& v) { return v ? json(*v) : json(nullptr); }

inline json metadata_json(const LabMetadata& m, const std::string& command) {
  json params = json::object();
  for (const auto& [k, v] : m.parameters) params[k] = v;
  json out = {{"tool", "freudlab"},       {"version", kVersion},  {"command", command},
              {"experiment", m.experiment}, {"family", m.family}, {"parameters", params},
              {"digits", m.digits},         {"N", m.N},           {"base_index", m.base_index}};
  if (!m.map.empty()) out["map"] = m.map;
  if (!m.seeds.empty()) out["seeds"] = m.seeds;
  if (m.oracle_span > 0) {
    out["oracle_span"] = m.oracle_span;
    out["oracle_digits"] = m.oracle_digits;
    if (!m.oracle_threshold.empty()) out["oracle_threshold"] = m.oracle_threshold;
  }
  return out;
}

/// CSV: n,value,derived_a2,derived_b,flag followed by the table's extra columns.
inline std::string render_table(const LabTable& t, const std::string& command, unsigned digits, bool as_json) {
  std::ostringstream os;
  if (as_json) {
    json rows = json::array();
    for (const auto& r : t.rows) {
      json row = {{"n", r.n},
                  {"value", num(r.value, digits)},
                  {"derived_a2", r.derived_a2 ? json(num(*r.derived_a2, digits)) : json(nullptr)},
                  {"derived_b", r.derived_b ? json(num(*r.derived_b, digits)) : json(nullptr)},
                  {"flag", flag_name(r.flag)}};
      for (std::size_t i = 0; i < t.extra_columns.size(); ++i) row[t.extra_columns[i]] = num(r.extra[i], digits);
      rows.push_back(row);
    }
    json doc = {{"metadata", metadata_json(t.meta, command)},
                {"divergence_index", opt_index(t.divergence_index)},
                {"admissibility_index", opt_index(t.admissibility_index)},
                {"oracle_index", opt_index(t.oracle_index)},
                {"singular_index", opt_index(t.singular_index)},
                {"rows", rows}};
    os << doc.dump(2) << "\n";
    return os.str();
  }
  os << "n,value,derived_a2,derived_b,flag";
  for (const auto& c : t.extra_columns) os << "," << c;
  os << "\n";
  for (const auto& r : t.rows) {
    os << r.n << "," << num(r.value, digits) << "," << opt_num(r.derived_a2, digits) << ","
       << opt_num(r.derived_b, digits) << "," << flag_name(r.flag);
    for (const auto& v : r.extra) os << "," << num(v, digits);
    os << "\n";
  }
  return os.str();
}

inline SymbolicMap make_symbolic_map(const std::string& name, const std::map<std::string, std::string>& kv,
                                     const Common& o) {
  auto get = [&](const std::string& k, const Rational& fallback) {
    auto it = kv.find(k);
    return it == kv.end() ? fallback : parse_rational(it->second);
  };
  if (name == "dp1") return Dp1<Rational>{get("alpha", 1), get("beta", 0), get("gamma", 0), get("delta", 0)};
  if (name == "dp2") return Dp2<Rational>{get("alpha", 1), get("beta", 0), get("gamma", 0)};
  if (name == "qp1") {
    Rational q = get("q", param(o.q, Rational(1, 2)));
    if (!(q > 0 && q < 1)) throw DomainError("q must lie in (0, 1)");
    return Qp1<Rational>{q};
  }
  if (name == "qp1-general") {
    Rational q = get("q", param(o.q, Rational(1, 2))), c = get("c", param(o.c, Rational(-1, 2)));
    if (!(q > 0 && q < 1)) throw DomainError("q must lie in (0, 1)");
    if (c == 0) throw DomainError("c must satisfy c <= 1 and c != 0");
    return Qp1General<Rational>{q, c};
  }
  throw UnsupportedError("unsupported map '" + name + "'");
}

inline Seed parse_seed(const std::string& s, const SymbolicMap& m) {
  if (s.empty()) return std::holds_alternative<Dp2<Rational>>(m) ? Seed::plus_one : Seed::zero;
  if (s == "eps" || s == "0") return Seed::zero;
  if (s == "1+eps" || s == "+1") return Seed::plus_one;
  if (s == "-1+eps" || s == "-1") return Seed::minus_one;
  throw DomainError("unknown seed '" + s + "'");
}

inline std::string render_confinement(const ConfinementReport& rep, const SymbolicMap& m, bool as_json) {
  std::ostringstream os;
  auto flag_of = [&](long idx) -> std::string {
    if (idx == rep.trigger_index) return "seed";
    if (rep.regular_index && idx == *rep.regular_index) return "regular";
    return "singular";
  };
  if (as_json) {
    json params = json::object();
    std::visit(
        [&](const auto& mm) {
          using M = std::decay_t<decltype(mm)>;
          if constexpr (std::is_same_v<M, Dp1<Rational>>)
            params = {{"alpha", to_string(mm.alpha)}, {"beta", to_string(mm.beta)}, {"gamma", to_string(mm.gamma)},
                      {"delta", to_string(mm.delta)}};
          else if constexpr (std::is_same_v<M, Dp2<Rational>>)
            params = {{"alpha", to_string(mm.alpha)}, {"beta", to_string(mm.beta)}, {"gamma", to_string(mm.gamma)}};
          else if constexpr (std::is_same_v<M, Qp1<Rational>>)
            params = {{"q", to_string(mm.q)}};
          else
            params = {{"q", to_string(mm.q)}, {"c", to_string(mm.c)}};
        },
        m);
    json coeffs = json::array();
    for (const auto& [key, v] : rep.recovered_coefficients)
      coeffs.push_back({{"n", key.first}, {"power", key.second}, {"coefficient", v.to_string()}});
    json series = json::object();
    for (const auto& [idx, s] : rep.series) series[std::to_string(idx)] = s.to_string();
    json doc = {{"metadata",
                 {{"tool", "freudlab"},
                  {"version", kVersion},
                  {"command", "confine"},
                  {"map", rep.map_tag},
                  {"parameters", params},
                  {"seed", seed_name(rep.seed)},
                  {"symbol", "r = x_{n0-1}"},
                  {"truncation_length", rep.truncation_length}}},
                {"trigger_index", rep.trigger_index},
                {"singular_span", rep.singular_span},
                {"regular_index", opt_index(rep.regular_index)},
                {"confined", rep.confined},
                {"memory_check", rep.memory_check},
                {"alternation", rep.alternation ? json(*rep.alternation) : json(nullptr)},
                {"coefficients", coeffs},
                {"series", series}};
    os << doc.dump(2) << "\n";
    return os.str();
  }
  os << "n,power,coefficient,flag\n";
  for (const auto& [key, v] : rep.recovered_coefficients)
    os << key.first << "," << key.second << "," << v.to_string() << "," << flag_of(key.first) << "\n";
  return os.str();
}

inline std::string render_catalog(const std::vector<CatalogEntry>& entries, bool as_json) {
  std::ostringstream os;
  if (as_json) {
    json arr = json::array();
    for (const auto& e : entries) {
      json params = json::object();
      for (const auto& name : e.parameter_names) params[name] = to_string(e.parameters.at(name));
      arr.push_back({{"id", e.id}, {"section", e.section}, {"display", e.display}, {"iterable", e.iterable},
                     {"parameters", params}});
    }
    os << json({{"metadata", {{"tool", "freudlab"}, {"version", kVersion}, {"command", "catalog"}}}, {"entries", arr}})
              .dump(2)
       << "\n";
    return os.str();
  }
  os << "id,section,iterable,parameters,display\n";
  for (const auto& e : entries) {
    std::string names;
    for (const auto& n : e.parameter_names) names += (names.empty() ? "" : " ") + n;
    os << '"' << e.id << "\"," << e.section << "," << (e.iterable ? "iterable" : "data-only") << "," << names << ",\""
       << e.display << "\"\n";
  }
  return os.str();
}

inline std::map<std::string, std::string> parse_assignments(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& s : items) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("expected key=value, got '" + s + "'");
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

/// The table is still written when a pivot vanished; the exit code reports it.
inline int singular_exit(const LabTable& t, std::ostream& err) {
  if (!t.singular_index) return ok;
  err << "error: vanishing pivot at n = " << *t.singular_index << "; iteration stopped\n";
  return singular;
}

/// Runs the CLI; output goes to `out` unless --output names a file.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"freudlab: recurrence coefficients of semi-classical orthogonal polynomials via discrete Painleve equations"};
  app.set_version_flag("--version", kVersion);
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key = value file mirroring the global flags");
  app.allow_config_extras(false);

  Common o;
  if (const char* env = std::getenv("FREUDLAB_DIGITS")) {
    try {
      o.digits = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      err << "error: FREUDLAB_DIGITS must be a positive integer\n";
      return usage;
    }
  }
  auto* digits_opt = app.add_option("--digits", o.digits, "significant decimal digits (env FREUDLAB_DIGITS)");
  app.add_option("--family", o.family,
                 "hermite | freud4 | freud6 | circle | charlier | gencharlier | qhermite | qfreud | qfreud-general");
  app.add_option("--rho", o.rho, "exponent of |x|^rho (hermite, freud4, freud6)");
  app.add_option("--lambda", o.lambda, "freud4 deformation e^{lambda x^2} or circle e^{lambda cos theta}");
  app.add_option("--a", o.a, "charlier / gencharlier parameter");
  app.add_option("--q", o.q, "lattice parameter in (0, 1)");
  app.add_option("--c", o.c, "qfreud-general parameter");
  app.add_option("--n", o.n, "last index")->check(CLI::NonNegativeNumber);
  auto* json_flag = app.add_flag("--json", o.json, "JSON output");
  app.add_flag("--csv", o.csv, "CSV output (default)")->excludes(json_flag);
  app.add_option("--output,-o", o.output, "write to this file instead of stdout");

  auto* compute = app.add_subcommand("compute", "iterate the family's Painleve recurrence (closed form if none)");
  long compare_span = 0;
  std::string perturb;
  compute->add_option("--oracle-span", compare_span, "flag divergence against oracle coefficients up to this index");
  compute->add_option("--perturb", perturb, "add this amount to the last initial value");

  auto* oracle = app.add_subcommand("oracle", "recurrence coefficients from moments (Verblunsky for the circle)");

  auto* compare = app.add_subcommand("compare", "first divergence of forward iteration from the oracle");
  std::string threshold = "1e-20";
  unsigned oracle_digits = 0;
  compare->add_option("--threshold", threshold, "relative a_n^2 deviation counted as divergence");
  compare->add_option("--oracle-digits", oracle_digits, "digits certified for the oracle (default: --digits)");

  auto* confine = app.add_subcommand("confine", "exact singularity confinement report");
  std::string map_name = "dp1", seed_text;
  long n0 = 5, span_cap = 8;
  unsigned length = 3;
  std::vector<std::string> map_params;
  confine->add_option("--map", map_name, "dp1 | dp2 | qp1 | qp1-general (ignored with --family)");
  confine->add_option("--n0", n0, "index of the critical seed");
  confine->add_option("--seed", seed_text, "eps | 1+eps | -1+eps");
  confine->add_option("--set", map_params, "map parameter, e.g. alpha=1 or q=1/2");
  confine->add_option("--length", length, "epsilon orders kept by series inversion");
  confine->add_option("--span-cap", span_cap, "iterates allowed to stay singular");

  auto* figures = app.add_subcommand("figures", "instability figure data");
  int which = 1;
  figures->add_option("--which", which, "1 | 2 | 3")->required()->check(CLI::Range(1, 3));

  auto* asym = app.add_subcommand("asymptotics", "scaled oracle coefficients against their limits");

  auto* frontier = app.add_subcommand("frontier", "divergence index of forward iteration per precision");
  std::vector<unsigned> precisions = {20, 30, 40, 60};
  frontier->add_option("--precisions", precisions, "digit counts")->delimiter(',');

  auto* cat = app.add_subcommand("catalog", "list (or iterate) the appendix equations");
  std::string cat_id, x0_text, x1_text;
  std::vector<std::string> cat_params;
  cat->add_option("--id", cat_id, "entry to iterate");
  cat->add_option("--set", cat_params, "parameter, e.g. alpha=1");
  cat->add_option("--x0", x0_text, "x_0");
  cat->add_option("--x1", x1_text, "x_1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }

  auto emit = [&](const std::string& text) {
    if (o.output.empty()) {
      out << text;
      return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + o.output + "'");
    f << text;
  };

  try {
    const bool digits_given = digits_opt->count() > 0 || std::getenv("FREUDLAB_DIGITS") != nullptr;
    const Precision p(o.digits);
    WorkingPrecision wp(p);

    if (compute->parsed()) {
      WeightFamily fam = make_family(o);
      const bool has_map = !(std::holds_alternative<GeneralizedHermite>(fam) || std::holds_alternative<Charlier>(fam) ||
                             std::holds_alternative<QHermite>(fam));
      if (!has_map) {
        emit(render_table(closed_form_table(fam, o.n, p), "compute", o.digits, o.json));
        return ok;
      }
      TraceOptions opts;
      opts.oracle_span = compare_span;
      if (!perturb.empty()) opts.perturbation = to_real(parse_rational(perturb), p);
      LabTable t = trace_table(fam, o.n, p, opts);
      t.meta.experiment = "compute";
      emit(render_table(t, "compute", o.digits, o.json));
      return singular_exit(t, err);
    }
    if (oracle->parsed()) {
      WeightFamily fam = make_family(o);
      emit(render_table(oracle_table(fam, o.n, o.digits), "oracle", o.digits, o.json));
      return ok;
    }
    if (compare->parsed()) {
      WeightFamily fam = make_family(o);
      TraceOptions opts;
      opts.oracle_span = o.n;
      opts.oracle_digits = oracle_digits ? oracle_digits : o.digits;
      opts.oracle_threshold = to_real(parse_rational(threshold), p);
      if (!(opts.oracle_threshold > 0 && opts.oracle_threshold <= 1)) throw DomainError("threshold must lie in (0, 1]");
      if (is_circle(fam))
        opts.reference_circle = oracle_verblunsky(fam, static_cast<std::size_t>(o.n) + 1, opts.oracle_digits);
      else
        opts.reference = oracle_coeffs(fam, static_cast<std::size_t>(o.n), opts.oracle_digits);
      const std::vector<BigReal> a2 = is_circle(fam) ? opts.reference_circle->kappa_ratio : opts.reference->a2;
      LabTable t = trace_table(fam, o.n, p, opts);
      t.meta.experiment = "compare";
      t.extra_columns = {"oracle_a2", "relative_deviation"};
      std::vector<LabRow> kept;
      for (auto& row : t.rows) {
        if (!row.derived_a2 || row.n >= static_cast<long>(a2.size())) continue;
        const BigReal& r = a2[static_cast<std::size_t>(row.n)];
        row.extra = {r, abs(*row.derived_a2 - r) / abs(r)};
        kept.push_back(row);
      }
      t.rows = std::move(kept);
      t.divergence_index = t.oracle_index;
      for (auto& row : t.rows)
        if (row.flag != RowFlag::singular)
          row.flag = t.oracle_index && row.n >= *t.oracle_index ? RowFlag::diverged : RowFlag::ok;
      emit(render_table(t, "compare", o.digits, o.json));
      if (!o.json) err << "first divergence: " << (t.oracle_index ? std::to_string(*t.oracle_index) : "none") << "\n";
      return ok;
    }
    if (confine->parsed()) {
      SymbolicMap m = o.family.empty() ? make_symbolic_map(map_name, parse_assignments(map_params), o)
                                       : symbolic_map_for(make_family(o));
      ConfinementOptions copts;
      copts.length = length;
      copts.span_cap = span_cap;
      ConfinementReport rep = run_confinement(m, n0, parse_seed(seed_text, m), copts);
      emit(render_confinement(rep, m, o.json));
      return ok;
    }
    if (figures->parsed()) {
      LabTable t;
      const bool n_given = app.get_option("--n")->count() > 0;
      if (which == 1) t = figure1(digits_given ? p : Precision(30), n_given ? o.n : 100);
      else if (which == 2)
        t = figure2(param(o.a, 1), digits_given ? p : Precision(30), n_given ? o.n : 80);
      else
        t = figure3(param(o.q, Rational(9, 10)), digits_given ? p : Precision(50), n_given ? o.n : 200);
      emit(render_table(t, "figures", t.meta.digits, o.json));
      return ok;
    }
    if (asym->parsed()) {
      WeightFamily fam = make_family(o);
      emit(render_table(asymptotics(fam, o.n, p), "asymptotics", o.digits, o.json));
      return ok;
    }
    if (frontier->parsed()) {
      WeightFamily fam = make_family(o);
      Frontier f = precision_frontier(fam, precisions, o.n);
      std::ostringstream os;
      if (o.json) {
        json rows = json::array();
        for (const auto& r : f.rows) rows.push_back({{"digits", r.digits}, {"divergence_index", opt_index(r.divergence_index)}});
        os << json({{"metadata", metadata_json(f.meta, "frontier")}, {"rows", rows}}).dump(2) << "\n";
      } else {
        os << "digits,divergence_index\n";
        for (const auto& r : f.rows)
          os << r.digits << "," << (r.divergence_index ? std::to_string(*r.divergence_index) : "") << "\n";
      }
      emit(os.str());
      return ok;
    }
    if (cat->parsed()) {
      if (cat_id.empty()) {
        emit(render_catalog(catalog(), o.json));
        return ok;
      }
      std::map<std::string, Rational> values;
      for (const auto& [k, v] : parse_assignments(cat_params)) values[k] = parse_rational(v);
      CatalogEntry e = catalog_entry(cat_id).with(values);
      if (!e.iterable) throw UnsupportedError("catalog entry " + e.id + " is data-only");
      if (x0_text.empty() || x1_text.empty()) throw DomainError("--x0 and --x1 are required to iterate");
      InitialData init{0, {to_real(parse_rational(x0_text), p), to_real(parse_rational(x1_text), p)}};
      Trace tr = iterate(PainleveMap(e), init, o.n, p);
      LabTable t;
      t.meta.experiment = "catalog";
      t.meta.family = e.id;
      for (const auto& name : e.parameter_names) t.meta.parameters.emplace_back(name, to_string(e.parameters.at(name)));
      t.meta.map = tr.map_tag;
      t.meta.digits = o.digits;
      t.meta.N = o.n;
      t.meta.seeds = {x0_text, x1_text};
      t.singular_index = tr.singular_index;
      for (long k = tr.base_index; k <= tr.last_index(); ++k) {
        LabRow row;
        row.n = k;
        row.value = tr.at(k);
        if (tr.singular_index && k == *tr.singular_index) row.flag = RowFlag::singular;
        t.rows.push_back(std::move(row));
      }
      emit(render_table(t, "catalog", o.digits, o.json));
      return singular_exit(t, err);
    }
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << "\n";
    return singular;
  } catch (const PrecisionExhausted& e) {
    err << "error: " << e.what() << "\n";
    return precision;
  } catch (const TruncationInsufficient& e) {
    err << "error: " << e.what() << "\n";
    return precision;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return domain;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return domain;
  } catch (const ReconstructionError& e) {
    err << "error: " << e.what() << "\n";
    return domain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

}  // namespace freudlab::cli
