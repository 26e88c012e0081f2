#include <algorithm>
#include <cmath>

#include "verify_internal.hpp"

namespace mixnorm {

using namespace detail;

namespace {

ExponentPair P(const char* s) { return ExponentPair::parse(s); }

using NormFn = NormResult (*)(const FuncRep&, const ExponentPair&);

struct WeakNorm {
  const char* name;
  NormFn fn;
};
const WeakNorm kWeak[] = {{"mixed-weak", mixed_weak_norm}, {"iterated-weak", iterated_weak_norm}};

// (|x|+|y|)^{-1} restricted to 1/k <= |x| <= k, |y| <= k increases to the full function
std::vector<CheckRecord> monotone_catalog(const SuiteConfig& c) {
  std::vector<CheckRecord> out;
  auto p = P("2,2");
  auto F = FuncRep::catalog(CatalogFunc::sum_power(1));
  for (const auto& w : kWeak) {
    auto limit = w.fn(F, p);
    std::string id = std::string("convergence/monotone/") + w.name;
    Sweep mono(id + "/nondecreasing", CheckKind::lower_bound, 1e-6);
    NormResult prev = exact_value(0);
    NormResult last;
    for (double k : {2.0, 10.0, 100.0, 1e3, 1e4}) {
      RegionSpec R;
      R.x_lower = 1 / k;
      R.x_upper_coeff = k;
      R.y_upper = k;
      last = w.fn(FuncRep::catalog(CatalogFunc::sum_power(1, R)), p);
      mono.add(last, prev, 1, "k=" + fmt(k));
      prev = last;
    }
    out.push_back(mono.finish("norms of the truncations never decrease"));
    out.push_back(make_check(id + "/limit", CheckKind::equality, last, limit, 1, 1e-3,
                             "final truncation k = 1e4 against the full norm, p=2,2"));
    out.push_back(make_check(id + "/below-limit", CheckKind::upper_bound, last, limit, 1, 1e-6));
  }
  auto chi = FuncRep::catalog(CatalogFunc::power_product(1, 0, 0, RegionSpec::box(1, 1)));
  Sweep ind("convergence/monotone/indicator", CheckKind::equality, c.tol_quad);
  for (double k : {1.0, 2.0, 4.0})
    for (const auto& w : kWeak)
      ind.add(w.fn(FuncRep::truncate(chi, k, k), P("1,1")), exact_value(4), 1,
              std::string(w.name) + " k=" + fmt(k));
  out.push_back(ind.finish("truncations of chi of the unit square at k >= 1 equal the limit 4"));
  return out;
}

// min(g, level) for increasing levels on random grids
std::vector<CheckRecord> monotone_grid(const SuiteConfig& c) {
  Rng rng(c.seed, "convergence/monotone-grid");
  Sweep mono("convergence/monotone/grid-nondecreasing", CheckKind::lower_bound, c.tol_exact);
  Sweep lim("convergence/monotone/grid-limit", CheckKind::equality, c.tol_exact);
  for (int k = 0; k < 100; ++k) {
    GridFunc g = random_grid(rng);
    auto p = random_pair(rng);
    double top = *std::max_element(g.samples.begin(), g.samples.end());
    double prev_m = 0, prev_i = 0;
    GridFunc h = g;
    for (int j = 1; j <= 8; ++j) {
      double level = top * j / 8;
      for (size_t s = 0; s < h.samples.size(); ++s) h.samples[s] = std::min(g.samples[s], level);
      double m = grid_mixed_weak(h, p).value, it = grid_iterated_weak(h, p).value;
      mono.add(exact_value(m), exact_value(prev_m), 1, "p=" + p.to_string());
      mono.add(exact_value(it), exact_value(prev_i), 1, "p=" + p.to_string());
      prev_m = m;
      prev_i = it;
    }
    lim.add(exact_value(prev_m), grid_mixed_weak(g, p), 1, "p=" + p.to_string());
    lim.add(exact_value(prev_i), grid_iterated_weak(g, p), 1, "p=" + p.to_string());
  }
  return {mono.finish("min(g, level) with increasing levels"), lim.finish("last level reaches max g")};
}

// liminf of g, h, g, h, ... is min(g, h)
std::vector<CheckRecord> fatou(const SuiteConfig& c) {
  Rng rng(c.seed, "convergence/fatou");
  Sweep mw("convergence/fatou/mixed-weak", CheckKind::upper_bound, c.tol_exact);
  Sweep it("convergence/fatou/iterated-weak", CheckKind::upper_bound, c.tol_exact);
  for (int k = 0; k < 200; ++k) {
    auto xn = random_nodes(rng, 2 + rng.below(9));
    auto yn = random_nodes(rng, 2 + rng.below(9));
    GridFunc g = random_grid_on(rng, xn, yn), h = random_grid_on(rng, xn, yn), lo = g;
    for (size_t s = 0; s < lo.samples.size(); ++s) lo.samples[s] = std::min(g.samples[s], h.samples[s]);
    auto p = random_pair(rng);
    std::string note = "p=" + p.to_string();
    mw.add(grid_mixed_weak(lo, p),
           exact_value(std::min(grid_mixed_weak(g, p).value, grid_mixed_weak(h, p).value)), 1, note);
    it.add(grid_iterated_weak(lo, p),
           exact_value(std::min(grid_iterated_weak(g, p).value, grid_iterated_weak(h, p).value)), 1, note);
  }
  return {mw.finish("oscillating sequence g, h, g, h, ..."), it.finish("oscillating sequence g, h, g, h, ...")};
}

// f_0 = |x|^{-1/p1}, g = chi_{|y| <= 1}: the tails f_0 chi_{|x|>=k} (x) g keep the norm
// 2^{1/p1} ||g||_{p2}; the heads f_0 chi_{|x|<=k} (x) g reach it while their distance to
// f_0 (x) g, which is the tail, does not shrink
std::vector<CheckRecord> tails(const SuiteConfig& c) {
  std::vector<CheckRecord> out;
  for (const char* ps : {"1,1", "2,3", "1/2,2"}) {
    auto p = P(ps);
    double a = -p.p1().recip_value();
    Func1D g = Func1D::indicator(0, 1);
    double expected = std::pow(2.0, p.p1().recip_value()) * strong_norm_1d(g, p.p2()).value;
    std::string note = std::string("p=") + ps + ", value 2^{1/p1} ||g||_{p2}";
    for (const auto& w : kWeak) {
      Sweep dom(std::string("convergence/dominated/") + w.name, CheckKind::equality, c.tol_exact);
      Sweep head(std::string("convergence/riesz/") + w.name + "/norm", CheckKind::equality, c.tol_exact);
      Sweep dist(std::string("convergence/riesz/") + w.name + "/distance", CheckKind::equality, c.tol_exact);
      for (double k : {1.0, 10.0, 100.0, 1000.0}) {
        auto tail = w.fn(FuncRep::tensor(Func1D::power(1, a, k, kInfinity), g), p);
        dom.add(tail, exact_value(expected), 1, "k=" + fmt(k));
        head.add(w.fn(FuncRep::tensor(Func1D::power(1, a, 0, k), g), p), exact_value(expected), 1,
                 "k=" + fmt(k));
        dist.add(tail, exact_value(expected), 1, "k=" + fmt(k));
      }
      out.push_back(dom.finish(note + "; pointwise limit 0"));
      out.push_back(head.finish(note));
      out.push_back(dist.finish(note + "; |f_k - f_0| is the tail"));
    }
  }
  return out;
}

RegionSpec e_region(double k, bool near_axis) {
  RegionSpec R;
  R.x_upper_coeff = 1;
  R.x_upper_exp = -1;
  if (near_axis) R.y_upper = 1 / k;
  else R.y_lower = k;
  return R;
}

// E_k = {|x| < 1/|y|, |y| < 1/k} for p1 > p2 and {|x| < 1/|y|, |y| > k} for p1 < p2
std::vector<CheckRecord> truncated(const SuiteConfig&) {
  std::vector<CheckRecord> out;
  struct Case {
    const char* p;
    bool near_axis;
    double coeff;  // distance = coeff k^{-1/2}
  };
  for (const auto& cs : {Case{"2,1", true, 4 * std::sqrt(2.0)}, Case{"1,2", false, 2 * std::sqrt(2.0)}}) {
    auto p = P(cs.p);
    std::string base = std::string("convergence/truncated/p=") + cs.p;
    Sweep oracle(base + "/distance", CheckKind::equality, 1e-6);
    Sweep measure(base + "/superlevel-measure", CheckKind::divergence, 0);
    double last = kInfinity;
    for (double k : {1.0, 1e2, 1e4, 1e6, 1e8}) {
      auto fk = FuncRep::catalog(CatalogFunc::power_product(1, 0, 0, e_region(k, cs.near_axis)));
      double d = truncated_distance(fk, FuncRep::scale(fk, 0), 0.5, p);
      oracle.add(quad_value(d), exact_value(cs.coeff / std::sqrt(k)), 1, "k=" + fmt(k));
      measure.add(mixed_norm(fk, P("1,1")), quad_value(d), 1, "k=" + fmt(k));
      last = d;
    }
    out.push_back(oracle.finish("||chi_{f_k > 1/2}||_{L^p} against c k^{-1/2}"));
    out.push_back(measure.finish("|{f_k > 1/2}| infinite at every k"));
    out.push_back(make_check(base + "/final", CheckKind::upper_bound, quad_value(last), exact_value(1e-3), 1, 0,
                             "distance at k = 1e8 below 1e-3"));

    // Cauchy: |f_k - f_l| is the indicator of E_k minus E_l
    Sweep cauchy(base + "/cauchy", CheckKind::equality, 1e-6);
    for (double k : {1.0, 1e2, 1e4, 1e6}) {
      double l = k * 100;
      RegionSpec R = e_region(k, cs.near_axis);
      if (cs.near_axis) R.y_lower = 1 / l;
      else R.y_upper = l;
      auto diff = FuncRep::catalog(CatalogFunc::power_product(1, 0, 0, R));
      double d = truncated_distance(diff, FuncRep::scale(diff, 0), 0.5, p);
      double expect = cs.near_axis ? cs.coeff * (1 / std::sqrt(k) - 1 / std::sqrt(l))
                                   : cs.coeff * std::sqrt(1 / k - 1 / l);
      cauchy.add(quad_value(d), exact_value(expect), 1, "k=" + fmt(k) + " l=" + fmt(l));
    }
    out.push_back(cauchy.finish("distance between f_k and f_{100k}"));
  }
  return out;
}

}  // namespace

VerificationReport suite_convergence(const SuiteConfig& c) {
  std::vector<NamedTask> tasks{
      {"convergence/monotone", [&] { return monotone_catalog(c); }},
      {"convergence/monotone/grid", [&] { return monotone_grid(c); }},
      {"convergence/fatou", [&] { return fatou(c); }},
      {"convergence/tails", [&] { return tails(c); }},
      {"convergence/truncated", [&] { return truncated(c); }},
  };
  return make_report("convergence", c, merge_by_id(run_tasks(tasks)));
}

}  // namespace mixnorm
