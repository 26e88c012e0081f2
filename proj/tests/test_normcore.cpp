#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "mixnorm/normcore.hpp"

using namespace mixnorm;

namespace {

ExponentPair P(const char* s) { return ExponentPair::parse(s); }

// random radial grid built here so the tests do not share the suites' generators
GridFunc random_grid(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> cells(1, 6);
  std::uniform_real_distribution<double> ratio(1.2, 3.0), val(0.0, 5.0);
  auto nodes = [&](int k) {
    std::vector<double> n{0.0, std::uniform_real_distribution<double>(0.1, 1.5)(rng)};
    for (int i = 1; i < k; ++i) n.push_back(n.back() * ratio(rng));
    return n;
  };
  int nx = cells(rng), ny = cells(rng);
  auto xn = nodes(nx), yn = nodes(ny);
  std::vector<double> s(nx * ny);
  for (auto& v : s) v = rng() % 4 == 0 ? 0.0 : val(rng);
  s[0] = 1.0;
  return GridFunc(xn, yn, s);
}

ExponentPair random_pair(std::mt19937_64& rng) {
  static const char* es[] = {"1/2", "1", "3/2", "2", "3", "4", "inf"};
  auto e = [&] { return Exponent::parse(es[rng() % 7]); };
  return {e(), e()};
}

}  // namespace

TEST_SUITE("normcore") {
  TEST_CASE("one-variable norms") {
    // indicator of |x| <= 1 has measure 2
    CHECK(strong_norm_1d(Func1D::indicator(0, 1), Exponent::rational(2)).value == doctest::Approx(std::sqrt(2.0)));
    CHECK(weak_norm_1d(Func1D::indicator(0, 1), Exponent::rational(2)).value == doctest::Approx(std::sqrt(2.0)));
    // |{|x|^{-1/2} > l}| = 2 l^{-2}: weak L^2 norm sqrt 2, strong norm infinite
    auto f = Func1D::power(1, -0.5);
    CHECK(weak_norm_1d(f, Exponent::rational(2)).value == doctest::Approx(std::sqrt(2.0)));
    CHECK(strong_norm_1d(f, Exponent::rational(2)).is_inf());
  }

  TEST_CASE("weighted weak norm by hand") {
    // levels 3 (weight 1) and 1 (weight 4): max(3 * 1, 1 * 5) at p = 1
    CHECK(weighted_weak_norm({3, 1}, {1, 4}, Exponent::rational(1)) == doctest::Approx(5.0));
    // p = 2: max(3 * 1, 1 * sqrt 5)
    CHECK(weighted_weak_norm({3, 1}, {1, 4}, Exponent::rational(2)) == doctest::Approx(3.0));
    CHECK(weighted_weak_norm({3, 1}, {1, 4}, Exponent::inf()) == doctest::Approx(3.0));
    CHECK(weighted_strong_norm({3, 1}, {1, 4}, Exponent::rational(1)) == doctest::Approx(7.0));
  }

  TEST_CASE("single cell grid") {
    GridFunc g({0, 1}, {0, 1}, {2.5});
    // box of area 4
    CHECK(grid_mixed_weak(g, P("1,1")).value == doctest::Approx(10.0));
    CHECK(grid_iterated_weak(g, P("1,1")).value == doctest::Approx(10.0));
    CHECK(grid_mixed_norm(g, P("2,2")).value == doctest::Approx(5.0));
  }

  TEST_CASE("catalog oracle G") {
    auto G = FuncRep::catalog(CatalogFunc::exp_g(std::exp(1.0), 1));
    CHECK(mixed_weak_norm(G, P("1,1")).value == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(iterated_weak_norm(G, P("1,1")).is_inf());
  }

  TEST_CASE("max kernel closed forms") {
    // (2 max(|x|,|y|))^{-gamma} with gamma = 1/q1 + 1/q2 has mixed weak and iterated weak norm 1
    for (const char* q : {"1,1", "2,2", "2,1"}) {
      CAPTURE(q);
      auto e = P(q);
      double gamma = e.p1().recip_value() + e.p2().recip_value();
      auto K = FuncRep::catalog(CatalogFunc::max_power(gamma));
      CHECK(mixed_weak_norm(K, e).value == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(iterated_weak_norm(K, e).value == doctest::Approx(1.0).epsilon(1e-6));
    }
    auto K = FuncRep::catalog(CatalogFunc::max_power(1.0));
    CHECK(half_mixed_norm(K, P("2,2"), HalfVariant::outer_weak_inner_strong).value ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  }

  TEST_CASE("tensor of a tail keeps its norm") {
    // |x|^{-1} on |x| >= k times chi_{|y| <= 1}, p = (1,1): 2 * 2 = 4 for every k
    for (double k : {1.0, 10.0, 1000.0}) {
      auto f = FuncRep::tensor(Func1D::power(1, -1, k, kInfinity), Func1D::indicator(0, 1));
      CHECK(mixed_weak_norm(f, P("1,1")).value == doctest::Approx(4.0));
      CHECK(iterated_weak_norm(f, P("1,1")).value == doctest::Approx(4.0));
    }
  }

  TEST_CASE("distribution curve") {
    auto f = FuncRep::catalog(CatalogFunc::sum_power(1.0));
    std::vector<double> lam{0.1, 0.5, 1, 2, 10};
    auto c = distribution_curve(f, P("2,2"), lam);
    REQUIRE(c.phi.size() == lam.size());
    for (size_t i = 1; i < lam.size(); ++i) CHECK(c.phi[i] <= c.phi[i - 1] * (1 + 1e-9));
    // homogeneity of degree -1 at p = (2,2): lambda Phi(lambda) is constant
    CHECK(lam[0] * c.phi[0] == doctest::Approx(lam[4] * c.phi[4]).epsilon(1e-3));
  }

  TEST_CASE("truncated distance to zero of the unit box") {
    GridFunc g({0, 1}, {0, 1}, {1.0});
    auto f = FuncRep::grid(g);
    CHECK(truncated_distance(f, FuncRep::scale(f, 0), 0.5, P("1,1")) == doctest::Approx(4.0));
    CHECK(truncated_distance(f, FuncRep::scale(f, 0), 1.0, P("1,1")) == doctest::Approx(0.0));
  }

  TEST_CASE("property: weak <= strong on random grids") {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 300; ++k) {
      GridFunc g = random_grid(rng);
      auto p = random_pair(rng);
      CAPTURE(p.to_string());
      double s = grid_mixed_norm(g, p).value;
      CHECK(grid_mixed_weak(g, p).value <= s * (1 + 1e-9));
      CHECK(grid_iterated_weak(g, p).value <= s * (1 + 1e-9));
      CHECK(grid_mixed_weak(g, p).value <= grid_half_mixed(g, p, HalfVariant::outer_strong_inner_weak).value * (1 + 1e-9));
    }
  }

  TEST_CASE("property: grid values agree with the generic path") {
    std::mt19937_64 rng(9);
    for (int k = 0; k < 50; ++k) {
      GridFunc g = random_grid(rng);
      auto p = random_pair(rng);
      auto f = FuncRep::grid(g);
      CHECK(mixed_weak_norm(f, p).value == doctest::Approx(grid_mixed_weak(g, p).value));
      CHECK(iterated_weak_norm(f, p).value == doctest::Approx(grid_iterated_weak(g, p).value));
    }
  }

  TEST_CASE("property: scaling a function scales its norms") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 50; ++k) {
      GridFunc g = random_grid(rng);
      auto p = random_pair(rng);
      auto f = FuncRep::grid(g);
      CHECK(mixed_weak_norm(FuncRep::scale(f, 3.0), p).value == doctest::Approx(3.0 * mixed_weak_norm(f, p).value));
    }
  }
}
