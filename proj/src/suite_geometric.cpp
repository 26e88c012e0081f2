#include <algorithm>
#include <cmath>

#include "mixnorm/operators.hpp"
#include "verify_internal.hpp"

namespace mixnorm {

using namespace detail;

namespace {

const ExponentPair kSup(Exponent::inf(), Exponent::inf());

double gamma_of(const ExponentPair& q) { return q.p1().recip_value() + q.p2().recip_value(); }

FuncRep kernel(double gamma) { return FuncRep::catalog(CatalogFunc::max_power(gamma)); }

// sup F (2 max(|x|,|y|))^gamma over a grid, taken at the outer corner of each cell
double grid_kernel_sup(const GridFunc& g, double gamma) {
  double s = 0.0;
  for (size_t j = 0; j < g.ycells(); ++j)
    for (size_t i = 0; i < g.xcells(); ++i)
      if (g.at(i, j) > 0.0)
        s = std::max(s, g.at(i, j) * std::pow(2.0 * std::max(g.xnodes[i + 1], g.ynodes[j + 1]), gamma));
  return s;
}

double catalog_kernel_sup(const FuncRep& f, double gamma) {
  if (gamma == 0.0) return mixed_norm(f, kSup).value;
  return mixed_norm(apply_T_gamma(f, gamma, true), kSup).value;
}

struct KernelBounds {
  ExponentPair q;
  double gamma;
  double weak, iterated, outer_weak;  // norms of the kernel itself
};

std::vector<KernelBounds> kernel_bounds(const SuiteConfig& c, int count) {
  Rng rng(c.seed, "geometric/sup-pairs");
  std::vector<KernelBounds> out;
  auto add = [&](const ExponentPair& q) {
    double g = gamma_of(q);
    auto K = kernel(g);
    bool finite = !q.p1().is_inf() && !q.p2().is_inf();
    out.push_back({q, g, mixed_weak_norm(K, q).value, iterated_weak_norm(K, q).value,
                   finite ? half_mixed_norm(K, q, HalfVariant::outer_weak_inner_strong).value : kInfinity});
  };
  for (const char* s : {"1,1", "2,2", "inf,2", "2,inf"}) add(ExponentPair::parse(s));
  while (static_cast<int>(out.size()) < count) {
    auto q = random_pair(rng);
    if (!(q.p1().is_inf() && q.p2().is_inf())) add(q);
  }
  return out;
}

struct SupSweeps {
  Sweep weak, iterated, outer_weak;
  double ratio[3] = {0, 0, 0};
  SupSweeps(const std::string& base, double tol)
      : weak(base + "/mixed-weak", CheckKind::upper_bound, tol),
        iterated(base + "/iterated-weak", CheckKind::upper_bound, tol),
        outer_weak(base + "/outer-weak-inner-strong", CheckKind::upper_bound, tol) {}

  void add(const KernelBounds& k, const NormResult& mw, const NormResult& it, const NormResult* ows, double s) {
    std::string note = "q=" + k.q.to_string();
    auto rhs = quad_value(s);
    weak.add(mw, rhs, k.weak, note);
    iterated.add(it, rhs, k.iterated, note);
    if (ows) outer_weak.add(*ows, rhs, k.outer_weak, note);
    if (s > 0 && std::isfinite(s)) {
      ratio[0] = std::max(ratio[0], mw.value / s);
      ratio[1] = std::max(ratio[1], it.value / s);
      if (ows) ratio[2] = std::max(ratio[2], ows->value / s);
    }
  }
  std::vector<CheckRecord> finish() const {
    auto note = [](double r) {
      return "constant: the kernel's own norm; empirical sup ratio " + fmt(r);
    };
    return {weak.finish(note(ratio[0])), iterated.finish(note(ratio[1])), outer_weak.finish(note(ratio[2]))};
  }
};

std::vector<CheckRecord> sup_grid(const SuiteConfig& c, const std::vector<KernelBounds>& ks, int index,
                                  int count) {
  Rng rng(c.seed, "geometric/sup-grid/" + std::to_string(index));
  SupSweeps sw("geometric/kernel-sup/grid", c.tol_exact);
  for (int k = 0; k < count; ++k) {
    GridFunc g = random_grid(rng);
    for (const auto& kb : ks) {
      double s = grid_kernel_sup(g, kb.gamma);
      bool finite = std::isfinite(kb.outer_weak);
      NormResult ows = finite ? grid_half_mixed(g, kb.q, HalfVariant::outer_weak_inner_strong) : NormResult{};
      sw.add(kb, grid_mixed_weak(g, kb.q), grid_iterated_weak(g, kb.q), finite ? &ows : nullptr, s);
    }
  }
  return sw.finish();
}

// catalog functions whose kernel supremum is finite for the given pair
std::vector<CheckRecord> sup_catalog(const SuiteConfig& c, const std::vector<KernelBounds>& ks) {
  Rng rng(c.seed, "geometric/sup-catalog");
  SupSweeps sw("geometric/kernel-sup/catalog", c.tol_quad);
  for (int k = 0; k < c.catalog_functions; ++k) {
    auto f = random_catalog(rng);
    const auto& kb = ks[k % ks.size()];
    double s = catalog_kernel_sup(f, kb.gamma);
    bool finite = std::isfinite(kb.outer_weak);
    NormResult ows = finite ? half_mixed_norm(f, kb.q, HalfVariant::outer_weak_inner_strong) : NormResult{};
    sw.add(kb, mixed_weak_norm(f, kb.q), iterated_weak_norm(f, kb.q), finite ? &ows : nullptr, s);
  }
  return sw.finish();
}

// step function on the line, cells [nodes[i], nodes[i+1])
struct Step {
  std::vector<double> nodes, values;
  double weak(const Exponent& p) const {
    std::vector<double> w(values.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = nodes[i + 1] - nodes[i];
    return weighted_weak_norm(values, w, p);
  }
};

Step random_step(Rng& rng) {
  Step s;
  int cells = 1 + rng.below(6);
  double x = rng.uniform(-5, 5);
  s.nodes.push_back(x);
  for (int i = 0; i < cells; ++i) s.nodes.push_back(x += rng.log_uniform(0.05, 3.0));
  s.values = random_samples(rng, cells);
  return s;
}

double separated_sup(const Step& f, const Step& g, double gamma) {
  double s = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i)
    for (size_t j = 0; j < g.values.size(); ++j) {
      if (f.values[i] <= 0 || g.values[j] <= 0) continue;
      double d = std::max(f.nodes[i + 1] - g.nodes[j], g.nodes[j + 1] - f.nodes[i]);
      s = std::max(s, f.values[i] * g.values[j] * std::pow(d, gamma));
    }
  return s;
}

// 2^gamma times the iterated weak norm of the kernel
double separated_constant(const ExponentPair& p) {
  double g = gamma_of(p);
  return std::pow(2.0, g) * iterated_weak_norm(kernel(g), p).value;
}

std::vector<CheckRecord> separated(const SuiteConfig& c) {
  Rng rng(c.seed, "geometric/separated");
  Sweep sw("geometric/separated-sup/steps", CheckKind::upper_bound, c.tol_exact);
  double worst = 0.0;
  for (int k = 0; k < c.functions; ++k) {
    auto p = random_pair(rng);
    if (p.p1().is_inf() && p.p2().is_inf()) continue;
    Step f = random_step(rng), g = random_step(rng);
    double lhs = f.weak(p.p1()) * g.weak(p.p2()), s = separated_sup(f, g, gamma_of(p));
    sw.add(exact_value(lhs), exact_value(s), separated_constant(p), "p=" + p.to_string());
    if (s > 0) worst = std::max(worst, lhs / s);
  }
  std::vector<CheckRecord> out{sw.finish("constant 2^gamma times the kernel norm; empirical sup ratio " + fmt(worst))};

  // indicators of intervals, p = (1,1): |E|^2 <= C diam(E)^2
  auto p = ExponentPair::parse("1,1");
  const double C = separated_constant(p);
  struct Set {
    const char* name;
    Step s;
  };
  for (const auto& [name, s] : {Set{"ball", {{-1, 1}, {1}}}, Set{"cube", {{0, 1}, {1}}},
                                Set{"two-intervals", {{0, 1, 3, 4}, {1, 0, 1}}}}) {
    double m = s.weak(p.p1());
    out.push_back(make_check(std::string("geometric/isodiametric/") + name, CheckKind::upper_bound,
                             exact_value(m * m), exact_value(separated_sup(s, s, 2)), C, c.tol_exact,
                             "f = g = chi_E, p=1,1"));
  }
  auto unit = FuncRep::catalog(CatalogFunc::power_product(1, 0, 0, RegionSpec::box(1, 1)));
  out.push_back(make_check("geometric/separated-sup/unit-interval", CheckKind::equality,
                           iterated_weak_norm(unit, p), exact_value(4), 1, c.tol_exact,
                           "||chi||_{1,weak}^2 = 4 against sup |x-y|^2 = 4"));
  return out;
}

// T_gamma from the p-norm to the q-norm through the kernel in the r-norm, 1/r = 1/q - 1/p
struct TPair {
  ExponentPair p, q, r;
  double gamma;
};

TPair make_tpair(const ExponentPair& p, const ExponentPair& q) {
  ExponentPair r(Exponent::from_recip(q.p1().reciprocal() - p.p1().reciprocal()),
                 Exponent::from_recip(q.p2().reciprocal() - p.p2().reciprocal()));
  return {p, q, r, homogeneity_gamma(p, q, 1)};
}

std::vector<TPair> tgamma_pairs() {
  std::vector<TPair> out;
  for (auto [p, q] : {std::pair{"inf,inf", "2,2"}, std::pair{"4,4", "2,2"}, std::pair{"inf,4", "2,2"},
                      std::pair{"4,inf", "1,2"}, std::pair{"3,6", "3/2,3"}})
    out.push_back(make_tpair(ExponentPair::parse(p), ExponentPair::parse(q)));
  return out;
}

std::vector<CheckRecord> tgamma_bounds(const SuiteConfig& c) {
  Rng rng(c.seed, "geometric/tgamma");
  Sweep it("geometric/tgamma/iterated-weak", CheckKind::upper_bound, c.tol_quad);
  Sweep mw("geometric/tgamma/mixed-weak", CheckKind::upper_bound, c.tol_quad);
  auto pairs = tgamma_pairs();
  for (int k = 0; k < c.catalog_functions; ++k) {
    auto f = random_catalog(rng);
    for (const auto& t : pairs) {
      auto Tf = apply_T_gamma(f, t.gamma);
      auto K = kernel(t.gamma);
      std::string note = "p=" + t.p.to_string() + " q=" + t.q.to_string();
      double Ci = iterated_holder_constant(t.p, t.r) * iterated_weak_norm(K, t.r).value;
      it.add(iterated_weak_norm(Tf, t.q), iterated_weak_norm(f, t.p), Ci, note);
      if (mixed_weak_holder_admissible(t.p, t.r)) {
        double Cm = mixed_weak_holder_constant(t.p, t.r) * mixed_weak_norm(K, t.r).value;
        mw.add(mixed_weak_norm(Tf, t.q), mixed_weak_norm(f, t.p), Cm, note);
      }
    }
  }
  return {it.finish("constant: weak Holder constant times the kernel norm in the gap exponent"),
          mw.finish("pairs with p1 q2 = p2 q1")};
}

// ratio of the T_gamma image to the input under dilation by R
std::vector<CheckRecord> tgamma_drift(const SuiteConfig& c) {
  Rng rng(c.seed, "geometric/tgamma-drift");
  const TPair t = make_tpair(ExponentPair::parse("inf,inf"), ExponentPair::parse("2,2"));
  const double C = iterated_weak_norm(kernel(t.gamma), t.r).value;
  Sweep bound("geometric/tgamma/dilation-bound", CheckKind::upper_bound, c.tol_quad);
  Sweep drift("geometric/tgamma/dilation-drift", CheckKind::upper_bound, 0.0);
  for (int k = 0; k < c.catalog_functions; ++k) {
    auto f = random_catalog(rng);
    double lo = kInfinity, hi = 0.0;
    for (double R : {1.0, 10.0, 100.0, 1000.0}) {
      auto fR = f.dilated(R);
      auto num = iterated_weak_norm(apply_T_gamma(fR, t.gamma), t.q);
      auto den = iterated_weak_norm(fR, t.p);
      if (R <= 100.0) bound.add(num, den, C, "R=" + fmt(R));
      if (num.is_inf() || den.is_inf() || !(den.value > 0)) continue;
      double ratio = num.value / den.value;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    if (hi > 0) drift.add(exact_value(hi), exact_value(lo), 3.0, "max/min ratio over R in 1..1000");
  }
  return {bound.finish("p=inf,inf q=2,2 gamma=1; ratio bounded by the kernel norm"),
          drift.finish("largest ratio at most 3 times the smallest")};
}

// ||F(./R, ./R)|| = R^{1/p1 + 1/p2} ||F|| on closed-form paths
std::vector<CheckRecord> scaling(const SuiteConfig& c) {
  Rng rng(c.seed, "geometric/scaling");
  Sweep it("geometric/scaling/iterated-weak", CheckKind::equality, 1e-6);
  Sweep mw("geometric/scaling/mixed-weak", CheckKind::equality, 1e-6);
  int tried = 0;
  while ((it.samples() < 40 || mw.samples() < 40) && tried++ < 2000) {
    auto f = random_catalog(rng);
    auto p = random_pair(rng);
    for (auto* sw : {&it, &mw}) {
      auto norm = [&](const FuncRep& g) {
        return sw == &it ? iterated_weak_norm(g, p) : mixed_weak_norm(g, p);
      };
      auto base = norm(f);
      if (base.method != Method::closed_form || base.is_inf()) continue;
      for (double R : {0.125, 8.0}) {
        auto scaled = norm(f.dilated(R));
        if (scaled.method != Method::closed_form) continue;
        sw->add(scaled, exact_value(std::pow(R, gamma_of(p)) * base.value), 1,
                "p=" + p.to_string() + " R=" + fmt(R));
      }
    }
  }
  return {it.finish("closed-form catalog functions, R in {1/8, 8}"), mw.finish("closed-form catalog functions, R in {1/8, 8}")};
}

// L_gamma on grids: slice-wise weak Holder against the grid kernel
std::vector<CheckRecord> lgamma_grid(const SuiteConfig& c) {
  Rng rng(c.seed, "geometric/lgamma");
  Sweep strong("geometric/lgamma/outer-strong", CheckKind::upper_bound, c.tol_exact);
  Sweep weak("geometric/lgamma/outer-weak", CheckKind::upper_bound, c.tol_exact);
  static const int gs[][2] = {{1, 4}, {1, 3}, {1, 2}, {2, 3}};
  for (int k = 0; k < c.functions; ++k) {
    auto& gq = gs[rng.below(4)];
    Num gamma = Num::rational(gq[0], gq[1]);
    Exponent p1 = random_exponent(rng), p2 = random_exponent(rng);
    Exponent r = Exponent::from_recip(p1.reciprocal() + gamma);
    Exponent h = Exponent::from_recip(gamma);
    auto xn = random_nodes(rng, 2 + rng.below(9));
    auto yn = random_nodes(rng, 2 + rng.below(9));
    GridFunc g = random_grid_on(rng, xn, yn);
    GridFunc ones(xn, yn, std::vector<double>(g.samples.size(), 1.0));
    auto Lf = apply_L_gamma(FuncRep::grid(g), gamma.to_double()).f.as_grid();
    auto Lk = apply_L_gamma(FuncRep::grid(ones), gamma.to_double()).f.as_grid();
    double knorm = grid_half_mixed(Lk, {h, Exponent::inf()}, HalfVariant::outer_strong_inner_weak).value;
    double C = weak_holder_constant_1d(p1, h) * knorm;
    std::string note = "p=" + p1.to_string() + "," + p2.to_string() + " gamma=" + gamma.to_string();
    strong.add(grid_half_mixed(Lf, {r, p2}, HalfVariant::outer_strong_inner_weak),
               grid_half_mixed(g, {p1, p2}, HalfVariant::outer_strong_inner_weak), C, note);
    weak.add(grid_iterated_weak(Lf, {r, p2}), grid_iterated_weak(g, {p1, p2}), C, note);
  }
  return {strong.finish("L^{p2}(L^{r,weak}) <= C L^{p2}(L^{p1,weak}); C = weak Holder constant times the kernel slice norm"),
          weak.finish("iterated weak version, same constant")};
}

struct FamilyCase {
  const char* family;
  const char* p;
  const char* q;
};

std::vector<CheckRecord> family(const SuiteConfig& c, const FamilyCase& fc) {
  std::optional<ExponentPair> p, q;
  std::string id = std::string("geometric/family/") + fc.family;
  if (fc.p) p = ExponentPair::parse(fc.p), id += std::string("/p=") + fc.p;
  if (fc.q) q = ExponentPair::parse(fc.q), id += std::string("/q=") + fc.q;
  return family_checks(id, fc.family, p, q, c.Ns);
}

}  // namespace

VerificationReport suite_geometric(const SuiteConfig& c) {
  auto ks = kernel_bounds(c, 12);
  std::vector<NamedTask> tasks;
  const int chunk = 50;
  for (int first = 0, i = 0; first < c.functions; first += chunk, ++i) {
    int n = std::min(chunk, c.functions - first);
    tasks.push_back({"geometric/kernel-sup/grid", [&, i, n] { return sup_grid(c, ks, i, n); }});
  }
  tasks.push_back({"geometric/kernel-sup/catalog", [&] { return sup_catalog(c, ks); }});
  tasks.push_back({"geometric/separated-sup", [&] { return separated(c); }});
  tasks.push_back({"geometric/tgamma", [&] { return tgamma_bounds(c); }});
  tasks.push_back({"geometric/tgamma/dilation", [&] { return tgamma_drift(c); }});
  tasks.push_back({"geometric/scaling", [&] { return scaling(c); }});
  tasks.push_back({"geometric/lgamma", [&] { return lgamma_grid(c); }});
  static const FamilyCase families[] = {
      {"kernel-strong", nullptr, "1,1"},
      {"kernel-strong", nullptr, "2,2"},
      {"kernel-strong", nullptr, "1,2"},
      {"kernel-outer-strong-inner-weak", nullptr, "1,1"},
      {"kernel-outer-strong-inner-weak", nullptr, "2,1"},
      {"kernel-sup-outer", nullptr, "1,1"},
      {"kernel-sup-outer", nullptr, "2,1"},
      {"kernel-sup-inner", nullptr, "1,1"},
      {"kernel-sup-inner", nullptr, "2,1"},
      {"tgamma-log-growth", "2,4", "2,2"},
      {"tgamma-inner-gap", "4,2", "2,2"},
      {"lgamma-outer-weak-inner-strong", "2,4", "2,2"},
      {"lgamma-outer-strong-inner-weak", "2,2", "2,1"},
      {"lgamma-iterated-weak", "2,2", "2,1"},
      {"lgamma-strong", "4,2", "1,4"},
  };
  for (const auto& fc : families)
    tasks.push_back({std::string("geometric/family/") + fc.family, [&c, fc] { return family(c, fc); }});
  return make_report("geometric", c, merge_by_id(run_tasks(tasks)));
}

}  // namespace mixnorm
