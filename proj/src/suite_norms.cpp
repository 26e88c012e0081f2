#include <cmath>

#include "verify_internal.hpp"

namespace mixnorm {

using namespace detail;

namespace {

ExponentPair P(const char* s) { return ExponentPair::parse(s); }

// grid nodes without the origin cell, so that a power singularity is cut off
// rather than averaged into a single cell
std::vector<double> cut_nodes(size_t cells, double lo, double hi) {
  auto n = geometric_nodes(cells, lo, hi);
  n.erase(n.begin());
  return n;
}

std::vector<CheckRecord> catalog_F(const SuiteConfig& c) {
  auto F = FuncRep::catalog(CatalogFunc::power_product(1, -0.5, -0.5));
  auto p = P("2,2");
  auto closed = iterated_weak_norm(F, p);
  auto n = cut_nodes(512, 1e-3, 1e3);
  auto grid = grid_iterated_weak(sample_to_grid(F, n, n), p);
  auto mw = mixed_weak_norm(F, p);
  return {
      make_check("F/iterated-weak/closed", CheckKind::equality, closed, exact_value(2), 1, 1e-6),
      make_check("F/iterated-weak/grid", CheckKind::equality, grid, exact_value(2), 1, c.tol_quad,
                 "512x512 geometric cells on [1e-3, 1e3]"),
      make_check("F/mixed-weak", CheckKind::divergence, mw, closed, 1, 0),
  };
}

GridFunc g_grid(const FuncRep& G, bool transpose) {
  // the order check integrates the exponential direction first and needs
  // finer cells to reach the same accuracy
  auto xn = transpose ? geometric_nodes(2048, 1e-4, 1.0) : geometric_nodes(512, 1e-6, 1.0);
  auto yn = uniform_nodes(transpose ? 2048 : 512, 8.0);
  auto g = sample_to_grid(G, xn, yn);
  if (!transpose) return g;
  std::vector<double> s(g.samples.size());
  for (size_t j = 0; j < g.ycells(); ++j)
    for (size_t i = 0; i < g.xcells(); ++i) s[i * g.ycells() + j] = g.at(i, j);
  return GridFunc(yn, xn, s);
}

std::vector<CheckRecord> catalog_G(const SuiteConfig& c) {
  auto G = FuncRep::catalog(CatalogFunc::exp_g(std::exp(1.0), 1.0));
  auto p = P("1,1");
  auto closed = mixed_weak_norm(G, p);
  auto grid = grid_mixed_weak(g_grid(G, false), p);
  auto it = iterated_weak_norm(G, p);
  // G(y, x): the x-outer order of the same function
  auto swapped = grid_iterated_weak(g_grid(G, true), p);
  const double four_over_e = 4.0 / std::exp(1.0);
  return {
      make_check("G/mixed-weak/closed", CheckKind::equality, closed, exact_value(4), 1, 1e-6),
      make_check("G/mixed-weak/grid", CheckKind::equality, grid, exact_value(4), 1, c.tol_quad,
                 "x: 512 geometric cells on [1e-6, 1]; y: 512 uniform cells on [0, 8]"),
      make_check("G/iterated-weak", CheckKind::divergence, it, closed, 1, 0),
      make_check("order/x-outer", CheckKind::equality, swapped, exact_value(four_over_e), 1, c.tol_quad,
                 "iterated weak norm of G(y,x) on 2048x2048 cells, oracle 4/e"),
      make_check("order/y-outer", CheckKind::divergence, it, swapped, 1, 0,
                 "the same function with the other integration order"),
  };
}

std::vector<CheckRecord> sandwich_chunk(const SuiteConfig& c, const std::vector<ExponentPair>& pairs,
                                        int first, int count) {
  Rng rng(c.seed, "sandwich/" + std::to_string(first));
  double tol = c.tol_exact;
  Sweep w1("sandwich/weak-le-strong-1d", CheckKind::upper_bound, tol);
  Sweep mw("sandwich/mixed-weak-le-strong", CheckKind::upper_bound, tol);
  Sweep iw("sandwich/iterated-weak-le-strong", CheckKind::upper_bound, tol);
  Sweep mh("sandwich/mixed-weak-le-outer-strong-inner-weak", CheckKind::upper_bound, tol);
  Sweep hs("sandwich/outer-strong-inner-weak-le-strong", CheckKind::upper_bound, tol);
  Sweep ih("sandwich/iterated-weak-le-outer-weak-inner-strong", CheckKind::upper_bound, tol);
  for (int k = 0; k < count; ++k) {
    GridFunc g = random_grid(rng);
    Func1D f1(random_grid1d(rng));
    for (const auto& p : pairs) {
      auto s = grid_mixed_norm(g, p);
      auto m = grid_mixed_weak(g, p);
      auto it = grid_iterated_weak(g, p);
      auto h = grid_half_mixed(g, p, HalfVariant::outer_strong_inner_weak);
      auto hw = grid_half_mixed(g, p, HalfVariant::outer_weak_inner_strong);
      std::string note = "p=" + p.to_string();
      w1.add(weak_norm_1d(f1, p.p1()), strong_norm_1d(f1, p.p1()), 1, note);
      mw.add(m, s, 1, note);
      iw.add(it, s, 1, note);
      mh.add(m, h, 1, note);
      hs.add(h, s, 1, note);
      ih.add(it, hw, 1, note);
    }
  }
  return {w1.finish(), mw.finish(), iw.finish(), mh.finish(), hs.finish(), ih.finish()};
}

std::vector<CheckRecord> tensor_bounds(const SuiteConfig& c) {
  Rng rng(c.seed, "tensor");
  double tol = c.tol_exact;
  Sweep i("tensor/weak-times-strong", CheckKind::upper_bound, tol);
  Sweep ii("tensor/strong-times-weak", CheckKind::upper_bound, tol);
  Sweep iii("tensor/weak-times-weak-lower", CheckKind::upper_bound, tol);
  for (int k = 0; k < 200; ++k) {
    Func1D f(random_grid1d(rng)), g(random_grid1d(rng));
    auto F = FuncRep::tensor(f, g);
    ExponentPair p = random_pair(rng, false);
    std::string note = "p=" + p.to_string();
    auto lhs = mixed_weak_norm(F, p);
    auto fw = weak_norm_1d(f, p.p1()), fs = strong_norm_1d(f, p.p1());
    auto gw = weak_norm_1d(g, p.p2()), gs = strong_norm_1d(g, p.p2());
    i.add(lhs, exact_value(fw.value * gs.value), 1, note);
    if (p.p1().value() <= p.p2().value())
      ii.add(lhs, exact_value(fs.value * gw.value), std::pow(2.0, p.p1().recip_value()), note);
    iii.add(exact_value(fw.value * gw.value), lhs, 1, note);
  }
  return {i.finish("||f x g|| <= ||f||_{p1,weak} ||g||_{p2}"),
          ii.finish("constant 2^{1/p1}, only p1 <= p2"),
          iii.finish("||f||_{p1,weak} ||g||_{p2,weak} <= ||f x g||")};
}

std::vector<CheckRecord> tensor_construction(const SuiteConfig& c) {
  std::vector<CheckRecord> out;
  for (const char* ps : {"2,2", "1,3", "3,1"}) {
    auto p = P(ps);
    double p1 = p.p1().value(), p2 = p.p2().value();
    Func1D f = Func1D::power(1, -2 / p1, 1, kInfinity);
    Func1D g = Func1D::power(1, -1 / p2);
    auto mw = mixed_weak_norm(FuncRep::tensor(f, g), p);
    double bound = std::pow(2 * std::pow(2.0, p2 / p1) * 2, 1 / p2);
    std::string id = std::string("tensor/construction/p=") + ps;
    out.push_back(make_check(id + "/bounded", CheckKind::upper_bound, mw, exact_value(bound), 1,
                             c.tol_quad, "bound (2 v^{p2/p1} v)^{1/p2}"));
    out.push_back(make_check(id + "/g-not-strong", CheckKind::divergence, strong_norm_1d(g, p.p2()),
                             mw, 1, 0, "g outside L^{p2} while the tensor is in the weak space"));
  }
  return out;
}

std::vector<CheckRecord> non_inclusion(const SuiteConfig&) {
  std::vector<CheckRecord> out;
  for (const char* ps : {"2,2", "1,2", "3,1"}) {
    auto p = P(ps);
    double p1 = p.p1().value(), p2 = p.p2().value();
    RegionSpec E;
    E.x_upper_coeff = 1;
    E.x_upper_exp = -p1 / p2;
    auto chiE = FuncRep::catalog(CatalogFunc::power_product(1, 0, 0, E));
    auto half = half_mixed_norm(chiE, p, HalfVariant::outer_weak_inner_strong);
    out.push_back(make_check(std::string("inclusion/chi-E/p=") + ps, CheckKind::divergence,
                             mixed_weak_norm(chiE, p), half, 1, 0,
                             "in L^{p2,weak}(L^{p1}) but not in the mixed weak space"));
    auto fg = FuncRep::tensor(Func1D::power(1, -1 / p1), Func1D::indicator(0, 1));
    out.push_back(make_check(std::string("inclusion/power-tensor/p=") + ps, CheckKind::divergence,
                             half_mixed_norm(fg, p, HalfVariant::outer_weak_inner_strong),
                             mixed_weak_norm(fg, p), 1, 0,
                             "in the mixed weak space but not in L^{p2,weak}(L^{p1})"));
  }
  return out;
}

std::vector<CheckRecord> indicator(const SuiteConfig& c) {
  auto f = FuncRep::catalog(CatalogFunc::power_product(1, 0, 0, RegionSpec::box(1, 1)));
  auto p = P("1,1");
  auto four = exact_value(4);
  return {
      make_check("indicator/strong", CheckKind::equality, mixed_norm(f, p), four, 1, c.tol_exact),
      make_check("indicator/mixed-weak", CheckKind::equality, mixed_weak_norm(f, p), four, 1, c.tol_exact),
      make_check("indicator/iterated-weak", CheckKind::equality, iterated_weak_norm(f, p), four, 1,
                 c.tol_exact),
      make_check("indicator/outer-strong-inner-weak", CheckKind::equality,
                 half_mixed_norm(f, p, HalfVariant::outer_strong_inner_weak), four, 1, c.tol_exact),
      make_check("indicator/outer-weak-inner-strong", CheckKind::equality,
                 half_mixed_norm(f, p, HalfVariant::outer_weak_inner_strong), four, 1, c.tol_exact),
  };
}

}  // namespace

VerificationReport suite_norm_comparisons(const SuiteConfig& c) {
  Rng prng(c.seed, "sandwich/pairs");
  std::vector<ExponentPair> pairs;
  for (int k = 0; k < c.exponent_pairs; ++k) pairs.push_back(random_pair(prng));

  std::vector<NamedTask> tasks{
      {"F", [&] { return catalog_F(c); }},
      {"G", [&] { return catalog_G(c); }},
  };
  const int chunk = 20;
  for (int first = 0; first < c.functions; first += chunk) {
    int count = std::min(chunk, c.functions - first);
    tasks.push_back({"sandwich", [&, first, count] { return sandwich_chunk(c, pairs, first, count); }});
  }
  tasks.push_back({"tensor", [&] { return tensor_bounds(c); }});
  tasks.push_back({"tensor/construction", [&] { return tensor_construction(c); }});
  tasks.push_back({"inclusion", [&] { return non_inclusion(c); }});
  tasks.push_back({"indicator", [&] { return indicator(c); }});
  return make_report("norm-comparisons", c, merge_by_id(run_tasks(tasks)));
}

}  // namespace mixnorm
