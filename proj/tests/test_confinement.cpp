#include "support.hpp"

#include "freudlab/confinement.hpp"

using namespace freudlab;
using freudlab::test::lit;

namespace {

using RF = RationalFunctionR;
const RF r = RF::r();

RF lin(const Rational& c0, const Rational& c1) { return RF(c0) + RF(c1) * r; }

Rational frac(long p, long q) {
  Rational out(p, q);
  out.canonicalize();
  return out;
}

}  // namespace

TEST_CASE("rational functions in r", "[confinement]") {
  RF a = (r * r - 1) / (r - 1);
  CHECK(a == r + 1);
  CHECK(a.denominator() == Polynomial(1));
  RF b = RF(3) / (r * 2 + 4);
  CHECK(b.denominator() == Polynomial(std::vector<Rational>{2, 1}));
  CHECK(b(Rational(1)) == Rational(1, 2));
  CHECK((b - b).is_zero());
  CHECK(lin(Rational(5, 6), Rational(-2, 3)).to_string() == "5/6 - 2/3*r");
  CHECK(b.to_string() == "3/2/(2 + r)");
  CHECK_FALSE(RF(Rational(7, 3)).depends_on_r());
  CHECK(a.depends_on_r());
  CHECK_THROWS_AS(RF(1) / RF(0), DomainError);
  CHECK(gcd(Polynomial(std::vector<Rational>{-1, 0, 1}), Polynomial(std::vector<Rational>{2, 2})) ==
        Polynomial(std::vector<Rational>{1, 1}));
}

TEST_CASE("truncated Laurent arithmetic", "[confinement]") {
  LaurentLength len(4);
  const SymbolicLaurent eps = SymbolicLaurent::epsilon();
  SymbolicLaurent one_plus = SymbolicLaurent(1) + eps;
  SymbolicLaurent inv = one_plus.inverse();
  CHECK(inv.lowest_order() == 0);
  CHECK(inv.truncation_order() == 4);
  for (long k = 0; k < 4; ++k) CHECK(inv.coefficient(k) == RF(k % 2 == 0 ? 1 : -1));
  CHECK_THROWS_AS(inv.coefficient(4), TruncationInsufficient);

  SymbolicLaurent prod = inv * one_plus;
  CHECK(prod.coefficient(0) == RF(1));
  for (long k = 1; k < 4; ++k) CHECK(prod.coefficient(k).is_zero());
  CHECK(prod.truncation_order() == 4);

  SymbolicLaurent pole = SymbolicLaurent(5) / eps;
  CHECK(pole.is_exact());
  CHECK(pole.lowest_order() == -1);
  SymbolicLaurent cancel = (pole + SymbolicLaurent::symbol_r()) - pole;
  CHECK(cancel.lowest_order() == 0);
  CHECK(cancel.coefficient(0) == r);

  SymbolicLaurent lost = inv - inv;
  CHECK(lost.known_zero());
  CHECK_THROWS_AS(lost.inverse(), TruncationInsufficient);
  CHECK(SymbolicLaurent(0).known_zero());
  CHECK(SymbolicLaurent(0).is_exact());
}

TEST_CASE("d-P_I single steps", "[confinement]") {
  const SymbolicMap m = Dp1<Rational>{1, 0, 0, 0};
  SymbolicLaurent x1 = laurent_step(m, 5, SymbolicLaurent::symbol_r(), SymbolicLaurent::epsilon());
  CHECK(x1.is_exact());
  CHECK(x1.coefficient(-1) == RF(5));
  CHECK(x1.coefficient(0) == -r);
  CHECK(x1.coefficient(1) == RF(-1));
  SymbolicLaurent x2 = laurent_step(m, 6, SymbolicLaurent::epsilon(), x1);
  SymbolicLaurent x3 = laurent_step(m, 7, x1, x2);
  CHECK(x3.lowest_order() == 1);
  CHECK(x3.coefficient(1) == RF(Rational(-8, 5)));
  SymbolicLaurent x4 = laurent_step(m, 8, x2, x3);
  CHECK(x4.coefficient(0) == RF(Rational(5, 8)) * r);
}

TEST_CASE("d-P_I confinement table", "[confinement]") {
  const SymbolicMap m = Dp1<Rational>{1, 0, 0, 0};
  for (long n : {4L, 5L, 7L}) {
    INFO("n = " << n);
    auto rep = run_confinement(m, n, Seed::zero);
    CHECK(rep.confined);
    CHECK(rep.memory_check);
    CHECK(rep.singular_span == std::vector<long>{n + 1, n + 2, n + 3});
    REQUIRE(rep.regular_index == n + 4);
    CHECK(rep.coefficient(n + 1, -1) == RF(n));
    CHECK(rep.coefficient(n + 1, 0) == -r);
    CHECK(rep.coefficient(n + 1, 1) == RF(-1));
    CHECK(rep.coefficient(n + 2, -1) == RF(-n));
    CHECK(rep.coefficient(n + 2, 0) == r);
    CHECK(rep.coefficient(n + 2, 1) == RF(frac(n + 1, n)));
    CHECK(rep.coefficient(n + 3, -1).is_zero());
    CHECK(rep.coefficient(n + 3, 0).is_zero());
    CHECK(rep.coefficient(n + 3, 1) == RF(-frac(n + 3, n)));
    CHECK(rep.coefficient(n + 4, -1).is_zero());
    CHECK(rep.coefficient(n + 4, 0) == RF(frac(n, n + 3)) * r);
    CHECK_FALSE(rep.alternation.has_value());
  }
}

TEST_CASE("d-P_II confinement tables near both critical values", "[confinement]") {
  for (Rational a : {Rational(1), Rational(4), Rational(9, 4)}) {
    Rational sa;
    REQUIRE(rational_sqrt(a, sa));
    const SymbolicMap m = symbolic_map_for(GeneralizedCharlier{a});
    for (long n : {4L, 5L, 7L}) {
      for (Seed seed : {Seed::plus_one, Seed::minus_one}) {
        const long s = seed == Seed::plus_one ? 1 : -1;
        INFO("a = " << to_string(a) << " n = " << n << " seed " << seed_name(seed));
        auto rep = run_confinement(m, n, seed);
        CHECK(rep.confined);
        CHECK(rep.singular_span == std::vector<long>{n + 1, n + 2});
        REQUIRE(rep.regular_index == n + 3);
        CHECK(rep.coefficient(n + 1, -1) == RF(-Rational(n) / (2 * sa)));
        CHECK(rep.coefficient(n + 1, 0) == lin(-s * Rational(n) / (4 * sa), -1));
        CHECK(rep.coefficient(n + 2, -1).is_zero());
        CHECK(rep.coefficient(n + 2, 0) == RF(-s));
        CHECK(rep.coefficient(n + 2, 1) == RF(frac(n + 2, n)));
        CHECK(rep.coefficient(n + 3, 0) == lin(s * Rational(n + 1) / (sa * (n + 2)), -frac(n, n + 2)));
        REQUIRE(rep.alternation.has_value());
        CHECK(*rep.alternation);
      }
    }
  }
  auto rep = run_confinement(Dp2<Rational>{1, 0, 0}, 4, Seed::plus_one);
  CHECK(rep.coefficient(7, 0) == lin(Rational(5, 6), Rational(-2, 3)));
}

TEST_CASE("q-P_I confinement table", "[confinement]") {
  for (Rational q : {Rational(1, 2), Rational(9, 10), Rational(1, 3)}) {
    const SymbolicMap m = Qp1<Rational>{q};
    for (long n : {4L, 5L, 7L}) {
      INFO("q = " << to_string(q) << " n = " << n);
      Rational qn = 1;
      for (long k = 0; k < n; ++k) qn *= q;
      const Rational q3 = q * q * q;
      auto rep = run_confinement(m, n, Seed::zero);
      CHECK(rep.confined);
      CHECK(rep.singular_span == std::vector<long>{n + 1, n + 2, n + 3});
      REQUIRE(rep.regular_index == n + 4);
      CHECK(rep.coefficient(n + 1, -1) == RF(Rational((1 - qn) / qn)));
      CHECK(rep.coefficient(n + 1, 0) == RF(Rational(-1 / qn)) * r);
      CHECK(rep.coefficient(n + 2, -1) == RF(Rational(-(1 - qn) / (qn * q))));
      CHECK(rep.coefficient(n + 2, 0) == RF(Rational(1 / q)) * r);
      CHECK(rep.coefficient(n + 3, 0).is_zero());
      CHECK(rep.coefficient(n + 3, 1) == RF(Rational(-(1 - qn * q3) / (q * q * (1 - qn)))));
      CHECK(rep.coefficient(n + 4, 0) == RF(Rational(q * q * (1 - qn) / (1 - qn * q3))) * r);
    }
  }
  auto rep = run_confinement(Qp1<Rational>{Rational(1, 2)}, 5, Seed::zero);
  CHECK(rep.coefficient(9, 0) == RF(Rational(62, 255)) * r);
}

TEST_CASE("generalized q-P_I and family maps", "[confinement]") {
  auto rep = run_confinement(symbolic_map_for(QFreudGeneral{Rational(1, 2), Rational(-1, 2)}), 4, Seed::zero);
  CHECK(rep.confined);
  auto same = run_confinement(symbolic_map_for(QFreudGeneral{Rational(1, 2), -1}), 4, Seed::zero);
  auto plain = run_confinement(symbolic_map_for(QFreud{Rational(1, 2)}), 4, Seed::zero);
  CHECK(same.coefficient(8, 0) == plain.coefficient(8, 0));

  auto quartic = run_confinement(symbolic_map_for(FreudQuartic{Rational(1, 2), 1}), 4, Seed::zero);
  CHECK(quartic.confined);
  auto circle = run_confinement(symbolic_map_for(ExpCosCircle{2}), 3, Seed::plus_one);
  CHECK(circle.confined);
  CHECK_THROWS_AS(symbolic_map_for(GeneralizedCharlier{2}), UnsupportedError);
  CHECK_THROWS_AS(symbolic_map_for(FreudSextic{0}), UnsupportedError);
  CHECK_THROWS_AS(run_confinement(Dp1<Rational>{1, 0, 0, 0}, 5, Seed::plus_one), DomainError);
  CHECK_THROWS_AS(run_confinement(Dp2<Rational>{1, 0, 0}, 5, Seed::zero), DomainError);
  CHECK_THROWS_AS(run_confinement(Dp1<Rational>{1, 0, 0, 0}, 1, Seed::zero), DomainError);
}

TEST_CASE("a span cap below the singular span", "[confinement]") {
  ConfinementOptions opts;
  opts.span_cap = 2;
  auto rep = run_confinement(Dp1<Rational>{1, 0, 0, 0}, 5, Seed::zero, opts);
  CHECK_FALSE(rep.confined);
  CHECK_FALSE(rep.regular_index.has_value());
  CHECK(rep.singular_span.size() == 2);
}

TEST_CASE("truncation retries and determinism", "[confinement]") {
  ConfinementOptions opts;
  opts.length = 1;
  auto rep = run_confinement(Dp1<Rational>{1, 0, 0, 0}, 5, Seed::zero, opts);
  CHECK(rep.truncation_length > 1);
  CHECK(rep.coefficient(9, 0) == RF(Rational(5, 8)) * r);
  opts.max_retries = 0;
  CHECK_THROWS_AS(run_confinement(Dp1<Rational>{1, 0, 0, 0}, 5, Seed::zero, opts), TruncationInsufficient);

  auto a = run_confinement(Qp1<Rational>{Rational(9, 10)}, 7, Seed::zero);
  auto b = run_confinement(Qp1<Rational>{Rational(9, 10)}, 7, Seed::zero);
  CHECK(a.recovered_coefficients == b.recovered_coefficients);
}

TEST_CASE("numeric shadow of the symbolic expansions", "[confinement]") {
  const Precision p(60);
  WorkingPrecision wp(p);
  const BigReal eps = lit("1e-8");
  struct Case {
    SymbolicMap map;
    Seed seed;
  };
  for (const Case& c : {Case{Dp1<Rational>{1, 0, 0, 0}, Seed::zero}, Case{Dp2<Rational>{1, 0, 0}, Seed::plus_one},
                        Case{Dp2<Rational>{Rational(1, 2), 0, 0}, Seed::minus_one},
                        Case{Qp1<Rational>{Rational(1, 2)}, Seed::zero},
                        Case{Qp1General<Rational>{Rational(2, 3), Rational(1, 2)}, Seed::zero}}) {
    for (long n : {4L, 5L, 7L}) {
      auto rep = run_confinement(c.map, n, c.seed);
      auto shadow = numeric_shadow(c.map, rep, Rational(3, 7), eps, p);
      INFO(rep.map_tag << " n = " << n << " deviation " << shadow.max_deviation.to_string(5));
      CHECK(shadow.max_deviation < lit("1e-6"));
    }
  }
}
