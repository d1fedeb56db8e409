#include "support.hpp"

#include <atomic>
#include <thread>

#include "freudlab/mpnum.hpp"
#include "freudlab/rational.hpp"

using namespace freudlab;
using freudlab::test::lit;

namespace {

// Γ(1/4)² = (2π)^{3/2} / AGM(1, √2)
BigReal gamma_quarter_by_agm(Precision p) {
  WorkingPrecision wp(p.guarded(20));
  BigReal two_pi = BigReal::pi() * 2;
  BigReal g2 = pow(two_pi, BigReal::ratio(3, 2)) / agm(BigReal(1), sqrt(BigReal(2)));
  return BigReal(sqrt(g2), p);
}

// I_1(z)/I_0(z) = 1/(2/z + 1/(4/z + 1/(6/z + ...))), evaluated bottom-up.
BigReal bessel_ratio_by_fraction(const BigReal& z, int depth) {
  BigReal tail(0);
  for (int k = depth; k >= 1; --k) tail = 1 / (BigReal(2 * k) / z + tail);
  return tail;
}

// (x; q)_∞ = Σ_k (−1)^k q^{k(k−1)/2} x^k / (q; q)_k
BigReal pochhammer_by_euler(const BigReal& x, const BigReal& q, int terms) {
  BigReal sum(0), term(1);
  for (int k = 0; k < terms; ++k) {
    sum += term;
    term *= -(pow(q, k) * x) / (1 - pow(q, k + 1));
  }
  return sum;
}

}  // namespace

TEST_CASE("precision bookkeeping", "[mpnum]") {
  CHECK(Precision(30).bits() == 101);
  CHECK(Precision(50).bits() == 168);
  CHECK(digits_for_bits(Precision(30).bits()) == 30);
  CHECK_THROWS_AS(Precision(9), DomainError);
  CHECK(Precision(30).guarded().digits() == 40);

  WorkingPrecision outer(Precision(40));
  CHECK(WorkingPrecision::current().digits() == 40);
  {
    WorkingPrecision inner(Precision(80));
    CHECK(BigReal(1).bits() == Precision(80).bits());
  }
  CHECK(BigReal(1).bits() == Precision(40).bits());
}

TEST_CASE("working precision is per thread", "[mpnum]") {
  WorkingPrecision here(Precision(100));
  std::atomic<unsigned> seen{0};
  std::thread t([&] { seen = BigReal(1).bits(); });
  t.join();
  CHECK(seen == Precision(30).bits());
  CHECK(BigReal(1).bits() == Precision(100).bits());
}

TEST_CASE("BigReal arithmetic and formatting", "[mpnum]") {
  WorkingPrecision wp(Precision(30));
  BigReal third = BigReal(1) / 3;
  CHECK(third.to_string(5) == "3.3333e-01");
  CHECK(abs(third * 3 - 1) < BigReal::pow10(-29));
  CHECK((2 - BigReal(5)) == -3);
  CHECK((1 / BigReal(4)) == BigReal(0.25));
  CHECK_THROWS_AS(BigReal(std::string_view("1.2.3")), DomainError);
  CHECK_THROWS_AS(BigReal(std::string_view("")), DomainError);

  BigReal lo(BigReal(1) / 7, Precision(15));
  BigReal hi = BigReal(1) / 7;
  CHECK((lo + hi).bits() == hi.bits());
}

TEST_CASE("rational parsing", "[mpnum]") {
  CHECK(parse_rational("0.9") == Rational(9, 10));
  CHECK(parse_rational("-1/2") == Rational(-1, 2));
  CHECK(parse_rational("1e-6") == Rational(1, 1000000));
  CHECK(parse_rational("-2.5E3") == Rational(-2500));
  CHECK(parse_rational("+3") == Rational(3));
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("1e"), DomainError);
  CHECK_THROWS_AS(parse_rational("."), DomainError);
  Rational root;
  CHECK(rational_sqrt(Rational(9, 4), root));
  CHECK(root == Rational(3, 2));
  CHECK_FALSE(rational_sqrt(Rational(2), root));
}

TEST_CASE("gamma", "[mpnum]") {
  const Precision p(50);
  WorkingPrecision wp(p);
  CHECK(gamma(BigReal(1), p) == 1);
  CHECK_CLOSE(gamma(BigReal(5), p) / (gamma(BigReal(2), p) * gamma(BigReal(3), p)), BigReal(12), 48);

  SECTION("Γ(1/4) against the AGM identity") {
    BigReal g = gamma(BigReal::ratio(1, 4), p);
    CHECK_CLOSE(g, gamma_quarter_by_agm(p), 49);
    CHECK_CLOSE(g, lit("3.625609908221908311930685155867672002995167682880065467"), 49);
  }

  SECTION("functional equation Γ(x+1) = xΓ(x)") {
    for (long num : {1L, 2L, 3L, 6L}) {
      BigReal x = BigReal::ratio(num, 4);
      CHECK_CLOSE(gamma(x + 1, p), x * gamma(x, p), 48);
    }
  }

  CHECK_THROWS_AS(gamma(BigReal(0), p), DomainError);
  CHECK_THROWS_AS(gamma(BigReal(-2), p), DomainError);
}

TEST_CASE("bessel_i", "[mpnum]") {
  const Precision p(50);
  WorkingPrecision wp(p);
  CHECK(bessel_i(0, BigReal(0), p) == 1);
  CHECK(bessel_i(1, BigReal(0), p) == 0);

  BigReal ratio = bessel_i(1, BigReal(2), p) / bessel_i(0, BigReal(2), p);
  {
    WorkingPrecision deep(Precision(80));
    CHECK_CLOSE(ratio, bessel_ratio_by_fraction(BigReal(2), 80), 48);
  }
  CHECK_CLOSE(ratio, lit("0.69777465796400798200679059255175259948665826299802"), 48);

  SECTION("contiguous relation I_{ν−1} − I_{ν+1} = (2ν/z) I_ν") {
    for (long z : {1L, 2L, 4L}) {
      for (long nu = 1; nu <= 6; ++nu) {
        BigReal zr(z);
        BigReal lhs = bessel_i(nu - 1, zr, p) - bessel_i(nu + 1, zr, p);
        BigReal rhs = BigReal(2 * nu) / zr * bessel_i(nu, zr, p);
        CHECK_CLOSE(lhs, rhs, 47);
      }
    }
  }

  CHECK_THROWS_AS(bessel_i(0, BigReal(-1), p), DomainError);
  CHECK_THROWS_AS(bessel_i(-1, BigReal(1), p), DomainError);
}

TEST_CASE("q_pochhammer_inf", "[mpnum]") {
  const Precision p(50);
  WorkingPrecision wp(p);
  const BigReal half = BigReal::ratio(1, 2);
  CHECK(q_pochhammer_inf(BigReal(0), half, p) == 1);
  CHECK(q_pochhammer_inf(BigReal(1), half, p) == 0);

  const BigReal q = to_real(Rational(9, 10), p);
  const BigReal q4 = pow(q, 4);
  BigReal y1 = q_pochhammer_inf(q, q4, p) / q_pochhammer_inf(pow(q, 3), q4, p);
  CHECK_CLOSE(y1, lit("0.21936693893619683275976451544928947209253049363570"), 48);

  {
    WorkingPrecision deep(Precision(80));
    const BigReal qd = to_real(Rational(9, 10), Precision(80));
    const BigReal qd4 = pow(qd, 4);
    BigReal euler = pochhammer_by_euler(qd, qd4, 400) / pochhammer_by_euler(pow(qd, 3), qd4, 400);
    CHECK_CLOSE(y1, euler, 48);
  }

  SECTION("functional equation (x; q)_∞ = (1 − x)(xq; q)_∞") {
    for (const char* xs : {"0.3", "-0.7", "0.9", "2.5"}) {
      for (const char* qs : {"0.1", "0.5", "0.9"}) {
        BigReal x = to_real(parse_rational(xs), p), qq = to_real(parse_rational(qs), p);
        CHECK_CLOSE(q_pochhammer_inf(x, qq, p), (1 - x) * q_pochhammer_inf(x * qq, qq, p), 47);
      }
    }
  }

  CHECK_THROWS_AS(q_pochhammer_inf(half, BigReal(1), p), DomainError);
  CHECK_THROWS_AS(q_pochhammer_inf(half, BigReal(0), p), DomainError);
}

TEST_CASE("monotone refinement under doubled precision", "[mpnum]") {
  const Precision p(30), p2(60);
  WorkingPrecision wp(p2);
  auto tol = BigReal::pow10(-28);
  auto rel = [](const BigReal& a, const BigReal& b) { return abs(a - b) / abs(b); };
  CHECK(rel(gamma(BigReal::ratio(1, 3), p), gamma(BigReal::ratio(1, 3), p2)) < tol);
  CHECK(rel(bessel_i(3, BigReal(4), p), bessel_i(3, BigReal(4), p2)) < tol);
  BigReal q = to_real(Rational(9, 10), p2);
  CHECK(rel(q_pochhammer_inf(q, pow(q, 4), p), q_pochhammer_inf(q, pow(q, 4), p2)) < tol);
}

TEST_CASE("adaptive_eval", "[mpnum]") {
  SECTION("constant evaluator stabilises after one doubling") {
    int calls = 0;
    BigReal one = adaptive_eval(
        [&](Precision) {
          ++calls;
          return BigReal(1);
        },
        20);
    CHECK(one == 1);
    CHECK(calls == 2);
  }

  SECTION("Γ(1/4) at target 30 agrees with a 60-digit evaluation") {
    BigReal g = adaptive_eval([](Precision p) { return gamma(BigReal::ratio(1, 4), p); }, 30);
    WorkingPrecision wp(Precision(60));
    CHECK_CLOSE(g, gamma(BigReal::ratio(1, 4), Precision(60)), 30);
  }

  SECTION("q-Pochhammer stabilises") {
    auto eval = [](Precision p) {
      WorkingPrecision wp(p);
      BigReal q = to_real(Rational(6561, 10000), p);
      return q_pochhammer_inf(to_real(Rational(9, 10), p), q, p);
    };
    BigReal v = adaptive_eval(eval, 40);
    WorkingPrecision wp(Precision(60));
    CHECK_CLOSE(v, lit("0.0112147953419479817612145827411536537031259824625376746573613"), 40);
  }

  SECTION("precision exhaustion at low precision is retried") {
    BigReal v = adaptive_eval(
        [](Precision p) {
          if (p.digits() < 80) throw PrecisionExhausted("too few digits");
          return BigReal(2);
        },
        20);
    CHECK(v == 2);
  }

  SECTION("a non-converging evaluator raises ConvergenceError") {
    auto drifting = [](Precision p) { return BigReal(p.digits()); };
    CHECK_THROWS_AS(adaptive_eval(drifting, 10), ConvergenceError);
    AdaptiveOptions opts;
    opts.max_doublings = 1;
    CHECK_THROWS_AS(adaptive_eval(drifting, 10, opts), ConvergenceError);
  }
}
