#include <cmath>
#include <random>

#include "doctest.h"
#include "mixnorm/exponents.hpp"

using namespace mixnorm;

TEST_SUITE("exponents") {
  TEST_CASE("rational arithmetic stays exact") {
    Num a = Num::rational(1, 3), b = Num::rational(1, 6);
    Num s = a + b;
    CHECK(s.exact());
    CHECK(s.num() == 1);
    CHECK(s.den() == 2);
    CHECK(Num::compare(a, b) > 0);
    CHECK((a * b).den() == 18);
    CHECK_FALSE((a + Num::real(std::sqrt(2.0))).exact());
  }

  TEST_CASE("parse and print") {
    CHECK(Exponent::parse("inf").is_inf());
    CHECK(Exponent::parse("3/2").value() == doctest::Approx(1.5));
    CHECK(Exponent::parse("3/2").to_string() == "3/2");
    CHECK(Exponent::parse("1.5") == Exponent::rational(3, 2));
    CHECK(Exponent::parse("2").reciprocal().den() == 2);
    auto p = ExponentPair::parse("inf,2/3");
    CHECK(p.p1().is_inf());
    CHECK(p.p2().value() == doctest::Approx(2.0 / 3.0));
    CHECK(ExponentPair::parse(p.to_string()) == p);
  }

  TEST_CASE("bad exponents are spec errors") {
    for (const char* s : {"0", "-1", "abc", "1/0", ""}) {
      CAPTURE(s);
      CHECK_THROWS_AS(Exponent::parse(s), Error);
    }
    try {
      ExponentPair::parse("2");
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SpecParse);
    }
  }

  TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * M_PI / 3.0));
  }

  TEST_CASE("holder combination adds reciprocals") {
    auto r = holder_combine(ExponentPair::parse("2,2"), ExponentPair::parse("2,2"));
    CHECK(r == ExponentPair::parse("1,1"));
    r = holder_combine(ExponentPair::parse("inf,3"), ExponentPair::parse("2,6"));
    CHECK(r == ExponentPair::parse("2,2"));
  }

  TEST_CASE("mixed weak admissibility is p1 q2 = p2 q1") {
    CHECK(mixed_weak_holder_admissible(ExponentPair::parse("2,4"), ExponentPair::parse("1,2")));
    CHECK(mixed_weak_holder_admissible(ExponentPair::parse("3,3"), ExponentPair::parse("2,2")));
    CHECK_FALSE(mixed_weak_holder_admissible(ExponentPair::parse("2,4"), ExponentPair::parse("4,2")));
  }

  TEST_CASE("one-variable constants") {
    // p^{1/p} q^{1/q} / r^{1/r} with p = q = 2, r = 1
    CHECK(weak_holder_constant_1d(Exponent::rational(2), Exponent::rational(2)) == doctest::Approx(2.0));
    // (r/(r-p) + r/(q-r))^{1/r} with p = 1, q = 4, r = 2
    CHECK(weak_interpolation_constant_1d(Exponent::rational(1), Exponent::rational(4), Exponent::rational(2)) ==
          doctest::Approx(std::sqrt(3.0)));
  }

  TEST_CASE("interpolated exponents") {
    auto r = interpolate_exponent(ExponentPair::parse("1,1"), ExponentPair::parse("inf,inf"), InterpolationSpec(0.5));
    CHECK(r == ExponentPair::parse("2,2"));
    r = interpolate_exponent(ExponentPair::parse("1,2"), ExponentPair::parse("2,1"), InterpolationSpec(0.5));
    CHECK(r.p1().value() == doctest::Approx(4.0 / 3.0));
    CHECK(r.p2().value() == doctest::Approx(4.0 / 3.0));
  }

  TEST_CASE("homogeneity gamma") {
    CHECK(homogeneity_gamma(ExponentPair::parse("2,2"), ExponentPair::parse("1,1"), 1) == doctest::Approx(1.0));
    CHECK(homogeneity_gamma(ExponentPair::parse("inf,inf"), ExponentPair::parse("2,2"), 3) == doctest::Approx(3.0));
    try {
      homogeneity_gamma(ExponentPair::parse("1,1"), ExponentPair::parse("2,2"), 1);
      FAIL("expected NegativeGamma");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NegativeGamma);
    }
  }

  TEST_CASE("property: holder_combine is symmetric and recip-additive") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> d(1, 9);
    for (int k = 0; k < 200; ++k) {
      ExponentPair p(Exponent::rational(d(rng), d(rng)), Exponent::rational(d(rng), d(rng)));
      ExponentPair q(Exponent::rational(d(rng), d(rng)), Exponent::rational(d(rng), d(rng)));
      auto r = holder_combine(p, q);
      CHECK(r == holder_combine(q, p));
      CHECK(r.p1().recip_value() == doctest::Approx(p.p1().recip_value() + q.p1().recip_value()));
      CHECK(r.p2().recip_value() == doctest::Approx(p.p2().recip_value() + q.p2().recip_value()));
    }
  }
}
