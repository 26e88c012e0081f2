#include <cmath>

#include "doctest.h"
#include "mixnorm/families.hpp"
#include "mixnorm/verify.hpp"

using namespace mixnorm;

namespace {
NormResult v(double x) { return {x, Method::closed_form, 0.0, std::nullopt}; }
}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("growth fit recovers a log power") {
    std::vector<double> Ns{1e2, 1e4, 1e6, 1e8}, vals;
    for (double N : Ns) vals.push_back(3.0 * std::pow(std::log(N), 0.5));
    auto f = fit_growth("synthetic", Ns, vals, GrowthModel::log_power);
    CHECK(f.exponent == doctest::Approx(0.5));
    CHECK(f.log_coeff == doctest::Approx(std::log(3.0)));
    CHECK(f.residual < 1e-9);
    CHECK(growth_matches(f, 0.5));
    CHECK(growth_matches(f, 0.56));
    CHECK_FALSE(growth_matches(f, 0.6));
  }

  TEST_CASE("growth fit on power data and constants") {
    std::vector<double> Ns{10, 100, 1000, 1e4}, vals;
    for (double N : Ns) vals.push_back(2.0 * std::pow(N, -0.25));
    CHECK(fit_growth("p", Ns, vals, GrowthModel::power).exponent == doctest::Approx(-0.25));
    auto c = fit_growth("c", Ns, {4, 4, 4, 4}, GrowthModel::log_power);
    CHECK(c.degenerate);
    CHECK(c.exponent == 0.0);
    CHECK(c.residual == 0.0);
  }

  TEST_CASE("check semantics") {
    CHECK(make_check("a", CheckKind::upper_bound, v(1.0), v(1.0), 1.0, 1e-9).outcome == Outcome::pass);
    CHECK(make_check("a", CheckKind::upper_bound, v(1.1), v(1.0), 1.0, 1e-9).outcome == Outcome::fail);
    CHECK(make_check("a", CheckKind::upper_bound, v(1.1), v(1.0), 1.2, 1e-9).outcome == Outcome::pass);
    CHECK(make_check("a", CheckKind::upper_bound, v(5.0), v(kInfinity), 1.0, 0).outcome == Outcome::pass);
    CHECK(make_check("a", CheckKind::upper_bound, v(kInfinity), v(kInfinity), 1.0, 0).outcome ==
          Outcome::indeterminate);
    CHECK(make_check("a", CheckKind::lower_bound, v(2.0), v(1.0), 1.0, 0).outcome == Outcome::pass);
    CHECK(make_check("a", CheckKind::equality, v(1.0 + 1e-7), v(1.0), 1.0, 1e-6).outcome == Outcome::pass);
    CHECK(make_check("a", CheckKind::equality, v(1.0 + 1e-5), v(1.0), 1.0, 1e-6).outcome == Outcome::fail);
    CHECK(make_check("a", CheckKind::divergence, v(kInfinity), v(3.0), 1.0, 0).outcome == Outcome::pass);
    CHECK(make_check("a", CheckKind::divergence, v(7.0), v(3.0), 1.0, 0).outcome == Outcome::fail);
    CHECK(make_check("a", CheckKind::finite, v(7.0), v(7.0), 1.0, 0).outcome == Outcome::pass);
    CHECK(make_check("a", CheckKind::finite, v(kInfinity), v(7.0), 1.0, 0).outcome == Outcome::fail);
  }

  TEST_CASE("unknown names") {
    try {
      run_suite("nope", SuiteConfig{});
      FAIL("expected UnknownSuite");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownSuite);
    }
    try {
      run_counterexample("nope", std::nullopt, std::nullopt, {1e2});
      FAIL("expected UnknownFamily");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnknownFamily);
    }
    CHECK_THROWS_AS(run_counterexample("kernel-strong", std::nullopt, ExponentPair::parse("1,1"), {}), Error);
  }

  TEST_CASE("kernel-strong family grows like (ln N)^{1/q2}") {
    for (const char* q : {"1,1", "2,2"}) {
      CAPTURE(q);
      auto e = ExponentPair::parse(q);
      auto run = run_counterexample("kernel-strong", std::nullopt, e, {1e2, 1e4, 1e6, 1e8});
      REQUIRE(run.fit.has_value());
      CHECK(run.predicted == doctest::Approx(e.p2().recip_value()));
      CHECK(run.fit->exponent == doctest::Approx(e.p2().recip_value()).epsilon(0.15));
    }
  }

  TEST_CASE("families whose left side is infinite outright") {
    auto run = run_counterexample("holder-outer-power", ExponentPair::parse("2,4"), ExponentPair::parse("4,2"), {});
    CHECK(run.declared_infinite);
    REQUIRE_FALSE(run.points.empty());
    CHECK(run.points[0].value.is_inf());
    CHECK(std::isfinite(run.points[0].bound.value));
  }

  TEST_CASE("config json round trip") {
    SuiteConfig c;
    c.seed = 99;
    c.hls_pairs = 12;
    c.Ns = {1e3, 1e5, 1e7, 1e9};
    auto d = config_from_json(config_to_json(c));
    CHECK(d.seed == 99);
    CHECK(d.hls_pairs == 12);
    CHECK(d.Ns == c.Ns);
    CHECK(config_from_json("{}").functions == SuiteConfig{}.functions);
    CHECK_THROWS_AS(config_from_json("{bad"), Error);
  }

  TEST_CASE("small suite runs are deterministic") {
    SuiteConfig c;
    c.hls_pairs = 10;
    auto a = report_to_json(run_suite("hls", c));
    auto b = report_to_json(run_suite("hls", c));
    CHECK(a == b);
    CHECK(a.find("\"report_version\": 1") != std::string::npos);
    c.seed = 8;
    CHECK(report_to_json(run_suite("hls", c)) != a);
  }
}
