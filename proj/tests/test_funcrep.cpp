#include <cmath>

#include "doctest.h"
#include "mixnorm/funcrep_json.hpp"
#include "mixnorm/normcore.hpp"

using namespace mixnorm;

namespace {
FuncRep unit_box() { return FuncRep::catalog(CatalogFunc::power_product(1, 0, 0, RegionSpec::box(1, 1))); }
}  // namespace

TEST_SUITE("funcrep") {
  TEST_CASE("region membership") {
    RegionSpec b = RegionSpec::box(1, 2);
    CHECK(b.contains(0.5, 1.5));
    CHECK_FALSE(b.contains(1.5, 0.5));
    CHECK_FALSE(b.contains(0.5, 2.5));
    RegionSpec d = b.dilated(3);
    CHECK(d.contains(2.9, 5.9));
  }

  TEST_CASE("superlevel measure of the unit box") {
    auto f = unit_box();
    CHECK(superlevel_measure(f, 0.5, 0.5) == doctest::Approx(2.0));
    CHECK(superlevel_measure(f, 0.5, 1.0) == doctest::Approx(0.0));
    CHECK(superlevel_measure(f, 1.5, 0.5) == doctest::Approx(0.0));
  }

  TEST_CASE("negative scale factors are rejected") {
    CHECK_THROWS_AS(FuncRep::scale(unit_box(), -1.0), Error);
    CHECK_NOTHROW(FuncRep::scale(unit_box(), 0.0));
  }

  TEST_CASE("grid construction validates shapes") {
    CHECK_THROWS_AS(GridFunc({0, 1}, {0, 1}, {1.0, 2.0}), Error);
    GridFunc g({0, 1, 2}, {0, 1}, {3.0, 1.0});
    CHECK(g.xcells() == 2);
    CHECK(g.ycells() == 1);
    CHECK(g.at(1, 0) == 1.0);
  }

  TEST_CASE("json shortcut and round trip") {
    auto a = func_from_json("constant-indicator");
    CHECK(mixed_norm(a, ExponentPair::parse("1,1")).value == doctest::Approx(4.0));
    const char* spec = R"({"kind":"exp_g","a":2.718281828459045,"p1":1})";
    auto g = func_from_json(spec);
    auto g2 = func_from_json(func_to_json(g));
    CHECK(mixed_weak_norm(g2, ExponentPair::parse("1,1")).value ==
          doctest::Approx(mixed_weak_norm(g, ExponentPair::parse("1,1")).value));
    auto t = func_from_json(R"({"kind":"tensor","f":{"kind":"indicator","hi":1},"g":{"kind":"indicator","hi":2}})");
    CHECK(mixed_norm(t, ExponentPair::parse("1,1")).value == doctest::Approx(8.0));
  }

  TEST_CASE("malformed specs raise SpecParse") {
    for (const char* s : {"{bad", "[]", R"({"kind":"nope"})", R"({"kind":"sum_power"})"}) {
      CAPTURE(s);
      try {
        func_from_json(s);
        FAIL("expected a throw");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SpecParse);
      }
    }
  }

  TEST_CASE("dilation scales supports") {
    auto f = unit_box().dilated(2);
    CHECK(mixed_norm(f, ExponentPair::parse("1,1")).value == doctest::Approx(16.0));
  }
}
