#include <cmath>

#include "mixnorm/operators.hpp"
#include "verify_internal.hpp"

namespace mixnorm {

using namespace detail;

namespace {

// admissible pairs q = t p, plus a few with infinite entries
std::vector<std::pair<ExponentPair, ExponentPair>> admissible_pairs(const SuiteConfig& c) {
  Rng rng(c.seed, "holder/pairs");
  std::vector<std::pair<ExponentPair, ExponentPair>> out;
  auto push = [&](const ExponentPair& p, const ExponentPair& q) {
    if (mixed_weak_holder_admissible(p, q)) out.emplace_back(p, q);
  };
  push(ExponentPair::parse("2,2"), ExponentPair::parse("2,2"));
  push(ExponentPair::parse("inf,inf"), ExponentPair::parse("2,3"));
  push(ExponentPair::parse("2,4"), ExponentPair::parse("inf,inf"));
  static const int ts[][2] = {{1, 3}, {1, 2}, {2, 3}, {1, 1}, {3, 2}, {2, 1}, {3, 1}};
  int guard = 0;
  while (static_cast<int>(out.size()) < c.holder_pairs && guard++ < 100000) {
    ExponentPair p = random_pair(rng, false);
    auto& t = ts[rng.below(7)];
    Num s = Num::rational(t[1], t[0]);  // 1/t
    ExponentPair q(Exponent::from_recip(p.p1().reciprocal() * s), Exponent::from_recip(p.p2().reciprocal() * s));
    push(p, q);
  }
  return out;
}

std::vector<CheckRecord> positive_grid(const SuiteConfig& c, const ExponentPair& p, const ExponentPair& q,
                                       int index) {
  Rng rng(c.seed, "holder/positive/" + std::to_string(index));
  const ExponentPair r = holder_combine(p, q);
  const double C = mixed_weak_holder_constant(p, q);
  Sweep sw("holder/positive/grid", CheckKind::upper_bound, c.tol_exact);
  for (int k = 0; k < c.holder_functions; ++k) {
    auto xn = random_nodes(rng, 2 + rng.below(9));
    auto yn = random_nodes(rng, 2 + rng.below(9));
    auto f = FuncRep::grid(random_grid_on(rng, xn, yn));
    auto g = FuncRep::grid(random_grid_on(rng, xn, yn));
    auto lhs = mixed_weak_norm(pointwise_product(f, g), r);
    double rhs = mixed_weak_norm(f, p).value * mixed_weak_norm(g, q).value;
    sw.add(lhs, exact_value(rhs), C, "p=" + p.to_string() + " q=" + q.to_string());
  }
  return {sw.finish("constant C_{p,q}; all exponent pairs with p1 q2 = p2 q1")};
}

std::vector<CheckRecord> positive_catalog(const SuiteConfig& c,
                                          const std::vector<std::pair<ExponentPair, ExponentPair>>& pairs) {
  Rng rng(c.seed, "holder/positive/catalog");
  Sweep sw("holder/positive/catalog", CheckKind::upper_bound, c.tol_quad);
  for (int k = 0; k < 24; ++k) {
    auto& [p, q] = pairs[k % pairs.size()];
    RegionSpec R;
    R.x_lower = rng.log_uniform(0.05, 1.0);
    R.x_upper_coeff = R.x_lower * rng.log_uniform(2.0, 50.0);
    R.y_lower = rng.log_uniform(0.05, 1.0);
    R.y_upper = R.y_lower * rng.log_uniform(2.0, 50.0);
    auto f = FuncRep::catalog(CatalogFunc::power_product(std::exp(rng.normal()), rng.uniform(-2, 2),
                                                         rng.uniform(-2, 2), R));
    auto g = FuncRep::catalog(CatalogFunc::power_product(std::exp(rng.normal()), rng.uniform(-2, 2),
                                                         rng.uniform(-2, 2), R));
    auto lhs = mixed_weak_norm(pointwise_product(f, g), holder_combine(p, q));
    double rhs = mixed_weak_norm(f, p).value * mixed_weak_norm(g, q).value;
    sw.add(lhs, exact_value(rhs), mixed_weak_holder_constant(p, q),
           "p=" + p.to_string() + " q=" + q.to_string());
  }
  return {sw.finish("power products on a shared box")};
}

std::vector<CheckRecord> iterated(const SuiteConfig& c, int index) {
  Rng rng(c.seed, "holder/iterated/" + std::to_string(index));
  Sweep sw("holder/iterated/grid", CheckKind::upper_bound, c.tol_exact);
  for (int k = 0; k < c.holder_functions; ++k) {
    ExponentPair p = random_pair(rng), q = random_pair(rng);
    if (p.p1().is_inf() && q.p1().is_inf()) q = ExponentPair(Exponent::rational(2), q.p2());
    if (p.p2().is_inf() && q.p2().is_inf()) q = ExponentPair(q.p1(), Exponent::rational(2));
    auto xn = random_nodes(rng, 2 + rng.below(9));
    auto yn = random_nodes(rng, 2 + rng.below(9));
    auto f = FuncRep::grid(random_grid_on(rng, xn, yn));
    auto g = FuncRep::grid(random_grid_on(rng, xn, yn));
    auto lhs = iterated_weak_norm(pointwise_product(f, g), holder_combine(p, q));
    double rhs = iterated_weak_norm(f, p).value * iterated_weak_norm(g, q).value;
    sw.add(lhs, exact_value(rhs), iterated_holder_constant(p, q),
           "p=" + p.to_string() + " q=" + q.to_string());
  }
  return {sw.finish("product of the one-variable weak Holder constants")};
}

std::vector<CheckRecord> inequalities(const SuiteConfig& c) {
  Rng rng(c.seed, "holder/scalar");
  Sweep a("holder/scalar/power-of-sum", CheckKind::upper_bound, 1e-12);
  Sweep b("holder/scalar/weighted-am-gm", CheckKind::lower_bound, 1e-12);
  Sweep e("holder/scalar/weighted-am-gm-equality", CheckKind::equality, 1e-12);
  for (int k = 0; k < 10000; ++k) {
    double x = rng.log_uniform(1e-6, 1e6), y = rng.log_uniform(1e-6, 1e6);
    double al = rng.log_uniform(0.05, 20.0), th = rng.uniform(0.01, 0.99);
    a.add(exact_value(std::pow(x + y, al)), exact_value(std::pow(x, al) + std::pow(y, al)),
          std::max(std::pow(2.0, al - 1), 1.0));
    double k_th = std::pow(th, th) * std::pow(1 - th, 1 - th);
    b.add(exact_value(x + y), exact_value(std::pow(x, th) * std::pow(y, 1 - th) / k_th), 1);
    double ye = x * (1 - th) / th;  // a/theta = b/(1-theta)
    e.add(exact_value(x + ye), exact_value(std::pow(x, th) * std::pow(ye, 1 - th) / k_th), 1);
  }
  return {a.finish(), b.finish(), e.finish()};
}

}  // namespace

VerificationReport suite_holder(const SuiteConfig& c) {
  auto pairs = admissible_pairs(c);
  std::vector<NamedTask> tasks;
  for (size_t i = 0; i < pairs.size(); ++i)
    tasks.push_back({"holder/positive/grid", [&, i] { return positive_grid(c, pairs[i].first, pairs[i].second, i); }});
  tasks.push_back({"holder/positive/catalog", [&] { return positive_catalog(c, pairs); }});
  for (int i = 0; i < 8; ++i) tasks.push_back({"holder/iterated/grid", [&, i] { return iterated(c, i); }});
  for (const char* f : {"holder-log-growth", "holder-inner-sup", "holder-outer-power",
                        "holder-outer-power-swapped"})
    tasks.push_back({std::string("holder/sharpness/") + f, [&, f] { return family_checks(std::string("holder/sharpness/") + f, f, std::nullopt, std::nullopt, c.Ns); }});
  tasks.push_back({"holder/scalar", [&] { return inequalities(c); }});
  auto checks = merge_by_id(run_tasks(tasks));
  for (auto& ch : checks)
    if (ch.id == "holder/positive/grid")
      ch.notes += "; " + std::to_string(pairs.size()) + " exponent pairs";
  return make_report("holder", c, std::move(checks));
}

}  // namespace mixnorm
