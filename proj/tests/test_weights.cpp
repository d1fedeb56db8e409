#include "support.hpp"

#include <vector>

#include "freudlab/weights.hpp"

using namespace freudlab;
using freudlab::test::lit;

namespace {

// Determinant by Gaussian elimination with partial pivoting.
BigReal determinant(std::vector<std::vector<BigReal>> m) {
  const std::size_t n = m.size();
  BigReal det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
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

std::vector<WeightFamily> all_families() {
  return {GeneralizedHermite{Rational(1, 2)}, FreudQuartic{0, 0},     FreudQuartic{Rational(1, 2), 1},
          FreudSextic{0},                     Charlier{5},            GeneralizedCharlier{4},
          QHermite{Rational(1, 2)},           QFreud{Rational(9, 10)}, QFreudGeneral{Rational(9, 10), Rational(-1, 2)}};
}

}  // namespace

TEST_CASE("parameter validation", "[weights]") {
  auto rejects = [](WeightFamily f, const std::string& fragment) {
    try {
      validate(f);
    } catch (const DomainError& e) {
      return std::string(e.what()).find(fragment) != std::string::npos;
    }
    return false;
  };
  CHECK(rejects(FreudQuartic{-2, 0}, "rho must exceed -1"));
  CHECK(rejects(GeneralizedHermite{-1}, "rho must exceed -1"));
  CHECK(rejects(ExpCosCircle{0}, "lambda must be positive"));
  CHECK(rejects(Charlier{0}, "a must be positive"));
  CHECK(rejects(GeneralizedCharlier{-1}, "a must be positive"));
  CHECK(rejects(QHermite{1}, "q must lie in (0, 1)"));
  CHECK(rejects(QFreud{0}, "q must lie in (0, 1)"));
  CHECK(rejects(QFreudGeneral{Rational(1, 2), 0}, "c must satisfy"));
  CHECK(rejects(QFreudGeneral{Rational(1, 2), Rational(3, 2)}, "c must satisfy"));
  CHECK_NOTHROW(validate(QFreudGeneral{Rational(1, 2), 1}));
  CHECK_NOTHROW(validate(FreudQuartic{0, -3}));
  CHECK_THROWS_AS(moments(FreudQuartic{-2, 0}, 3, Precision(30)), DomainError);
}

TEST_CASE("moments: closed forms and independent references", "[weights]") {
  const Precision p(40);
  WorkingPrecision wp(p);

  SECTION("Charlier: e^a, a e^a, (a + a²) e^a") {
    auto mu = moments(Charlier{1}, 3, p);
    BigReal e = exp(BigReal(1));
    CHECK_CLOSE(mu[0], e, 38);
    CHECK_CLOSE(mu[1], e, 38);
    CHECK_CLOSE(mu[2], e * 2, 38);
    auto mu5 = moments(Charlier{5}, 3, p);
    CHECK_CLOSE(mu5[2], exp(BigReal(5)) * 30, 38);
  }

  SECTION("generalized Charlier: μ_0 = I_0(2√a), μ_1 = √a I_1(2√a)") {
    auto mu = moments(GeneralizedCharlier{4}, 4, p);
    CHECK_CLOSE(mu[0], bessel_i(0, BigReal(4), p), 38);
    CHECK_CLOSE(mu[1], bessel_i(1, BigReal(4), p) * 2, 38);
    CHECK_CLOSE(mu[3], lit("123.2834090381809212612266212713698571901"), 37);
  }

  SECTION("circle moments are Bessel values") {
    CHECK_CLOSE(moment(ExpCosCircle{2}, 1, p), bessel_i(1, BigReal(2), p), 38);
    CHECK(moment(ExpCosCircle{2}, -3, p) == moment(ExpCosCircle{2}, 3, p));
  }

  SECTION("Freud moments") {
    // ∫ e^{−x²} = √π, ∫ x² e^{−x²} = √π/2
    auto mu = moments(GeneralizedHermite{0}, 3, p);
    CHECK_CLOSE(mu[0], sqrt(BigReal::pi()), 38);
    CHECK(mu[1] == 0);
    CHECK_CLOSE(mu[2], sqrt(BigReal::pi()) / 2, 38);
    CHECK(moment(FreudQuartic{0, 0}, 1, p) == 0);
    // λ-deformed weight, references from adaptive quadrature at 40 digits
    auto ml = moments(FreudQuartic{Rational(1, 2), 1}, 3, p);
    CHECK_CLOSE(ml[0], lit("2.067321060802623007396634906146107429026"), 36);
    CHECK_CLOSE(ml[2], lit("1.383702510532962096227130985167588578886"), 36);
    CHECK_CLOSE(moment(FreudQuartic{0, -2}, 0, p), lit("1.119557889728450200442220897108673004418"), 36);
  }

  SECTION("q-lattice moments") {
    auto mu = moments(QHermite{Rational(1, 2)}, 3, p);
    CHECK_CLOSE(mu[0], lit("1.641632560655153866293842770225429434226"), 37);
    CHECK(mu[1] == 0);
    CHECK_CLOSE(mu[2] / mu[0], BigReal::ratio(1, 2), 37);
    // (x²q²;q²)(−x²q²;q²) = (x⁴q⁴;q⁴): the general family at c = −1 is q-Freud
    auto a = moments(QFreud{Rational(9, 10)}, 7, p);
    auto b = moments(QFreudGeneral{Rational(9, 10), -1}, 7, p);
    for (std::size_t k = 0; k < 7; ++k) CHECK_CLOSE(a[k], b[k], 36);
  }
}

TEST_CASE("moment symmetry, positivity and Hankel positivity", "[weights]") {
  const Precision p(50);
  WorkingPrecision wp(p);
  for (const auto& family : all_families()) {
    INFO(family_name(family));
    auto mu = moments(family, 41, p);
    for (std::size_t k = 0; k <= 40; ++k) {
      if (is_symmetric(family) && k % 2 == 1)
        CHECK(mu[k] == 0);
      else
        CHECK(mu[k] > 0);
    }
    for (std::size_t n = 1; n <= 8; ++n) {
      std::vector<std::vector<BigReal>> h(n, std::vector<BigReal>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h[i][j] = mu[i + j];
      CHECK(determinant(h) > 0);
    }
  }
}

TEST_CASE("initial data", "[weights]") {
  const Precision p(50);
  WorkingPrecision wp(p);

  SECTION("Freud quartic x_1 = 2Γ(3/4)/Γ(1/4) = 2μ_2/μ_0") {
    InitialData d = initial_data(FreudQuartic{0, 0}, p);
    CHECK(d.base_index == 0);
    CHECK(d.values[0] == 0);
    CHECK_CLOSE(d.values[1], lit("0.675978240067284728995447684670805748287283454915405951976863"), 49);
    for (const auto& f : {FreudQuartic{Rational(1, 2), 0}, FreudQuartic{0, 1}, FreudQuartic{Rational(1, 2), 1}}) {
      auto mu = moments(f, 3, p);
      CHECK_CLOSE(initial_data(f, p).values[1], mu[2] / mu[0] * 2, 47);
    }
  }

  SECTION("circle and generalized Charlier share the Bessel ratio") {
    InitialData c = initial_data(ExpCosCircle{2}, p);
    CHECK(c.base_index == -1);
    CHECK(c.values[0] == -1);
    CHECK_CLOSE(c.values[1], lit("0.69777465796400798200679059255175259948665826299802"), 49);
    InitialData g = initial_data(GeneralizedCharlier{1}, p);
    CHECK(g.base_index == 0);
    CHECK(g.values[0] == 1);
    CHECK_CLOSE(g.values[1], c.values[1], 49);
  }

  SECTION("q-Freud y_1 from the q-binomial theorem agrees with the moment ratio") {
    InitialData d = initial_data(QFreud{Rational(9, 10)}, p);
    CHECK(d.values[0] == 0);
    CHECK_CLOSE(d.values[1], lit("0.21936693893619683275976451544928947209253049363570"), 48);
    auto mu = moments(QFreud{Rational(9, 10)}, 3, p);
    CHECK_CLOSE(d.values[1], mu[2] / mu[0], 46);
  }

  SECTION("sextic starts from the moment ratios") {
    InitialData d = initial_data(FreudSextic{0}, p);
    CHECK(d.base_index == -1);
    REQUIRE(d.values.size() == 4);
    // a_1² = Γ(1/2)/Γ(1/6), a_2² = Γ(5/6)/Γ(1/2) − a_1²
    BigReal a1 = gamma(BigReal::ratio(1, 2), p) / gamma(BigReal::ratio(1, 6), p);
    CHECK_CLOSE(d.values[2], a1, 48);
    CHECK_CLOSE(d.values[3], gamma(BigReal::ratio(5, 6), p) / gamma(BigReal::ratio(1, 2), p) - a1, 47);
  }

  SECTION("closed-form families have no recurrence") {
    CHECK_THROWS_AS(initial_data(Charlier{1}, p), UnsupportedError);
    CHECK_THROWS_AS(initial_data(GeneralizedHermite{0}, p), UnsupportedError);
    CHECK_THROWS_AS(initial_data(QHermite{Rational(1, 2)}, p), UnsupportedError);
  }
}

TEST_CASE("closed forms", "[weights]") {
  const Precision p(40);
  WorkingPrecision wp(p);
  CoeffPair h = closed_form(GeneralizedHermite{0}, 4, p);
  CHECK_CLOSE(h.a, sqrt(BigReal(2)), 39);
  CHECK(h.b == 0);
  // ρΔ_n only affects odd n
  CHECK_CLOSE(closed_form(GeneralizedHermite{Rational(1, 2)}, 3, p).a, sqrt(BigReal::ratio(7, 4)), 39);
  CHECK_CLOSE(closed_form(GeneralizedHermite{Rational(1, 2)}, 2, p).a, BigReal(1), 39);

  CoeffPair c = closed_form(Charlier{1}, 1, p);
  CHECK(c.a == 1);
  CHECK(c.b == 2);

  CoeffPair q = closed_form(QHermite{Rational(1, 2)}, 2, p);
  CHECK_CLOSE(q.a * q.a, BigReal(0.375), 39);
  CHECK(q.b == 0);

  CHECK_THROWS_AS(closed_form(FreudQuartic{0, 0}, 1, p), UnsupportedError);
  CHECK_THROWS_AS(closed_form(Charlier{1}, 0, p), DomainError);

  RecurrenceCoeffs rc = closed_form_coeffs(Charlier{Rational(1, 2)}, 5, p);
  CHECK(rc.a2[0] == 0);
  CHECK_CLOSE(rc.a2[4], BigReal(2), 39);
  CHECK_CLOSE(rc.b[0], BigReal(0.5), 39);
  CHECK_CLOSE(rc.b[4], BigReal(4.5), 39);
}

TEST_CASE("Freud constant", "[weights]") {
  const Precision p(40);
  WorkingPrecision wp(p);
  CHECK_CLOSE(freud_constant(2, p), 1 / sqrt(BigReal(2)), 39);
  CHECK_CLOSE(freud_constant(4, p), pow(BigReal(12), BigReal::ratio(-1, 4)), 39);
  CHECK_CLOSE(freud_constant(6, p), pow(BigReal(60), BigReal::ratio(-1, 6)), 39);
  CHECK_THROWS_AS(freud_constant(0, p), DomainError);
  CHECK_THROWS_AS(freud_constant(-1, p), DomainError);
}
