#include <cmath>
#include <functional>

#include "mixnorm/families.hpp"
#include "mixnorm/operators.hpp"

namespace mixnorm {

namespace {

struct Family {
  FamilyInfo info;
  const char* default_p;
  const char* default_q;
};

const std::vector<Family>& table() {
  static const std::vector<Family> t{
      {{"kernel-strong", true, false, true,
        "(|x|+|y|)^{-g} on 1<=|y|<=N, |y|<=|x|: strong norm vs kernel supremum"},
       nullptr, "1,1"},
      {{"kernel-outer-strong-inner-weak", true, false, true,
        "(|x|+|y|)^{-g} on 1<=|y|<=N: L^{q2}(L^{q1,weak}) vs kernel supremum"},
       nullptr, "1,1"},
      {{"kernel-sup-outer", true, false, true,
        "(|x|+|y|)^{-1/q1} on [1,N]^2: L^inf(L^{q1}) vs kernel supremum"},
       nullptr, "1,1"},
      {{"kernel-sup-inner", true, false, true,
        "(|x|+|y|)^{-1/q1} on [1,N]^2: L^{q1}(L^inf) vs kernel supremum"},
       nullptr, "1,1"},
      {{"holder-log-growth", true, true, true,
        "q1 = inf: Holder ratio grows like (ln N)^{1/r2-1/p2}"},
       "2,2", "inf,2"},
      {{"holder-inner-sup", false, true, true, "q2 = inf: product norm infinite"}, "2,2", "2,inf"},
      {{"holder-outer-power", false, true, true, "p2/q2 > p1/q1: product norm infinite"}, "2,4", "4,2"},
      {{"holder-outer-power-swapped", false, true, true, "p2/q2 < p1/q1: product norm infinite"},
       "4,2", "2,4"},
      {{"tgamma-log-growth", true, true, true,
        "p1 = q1, p2 > q2: T_gamma ratio grows like (ln N)^{1/q2-1/p2}"},
       "2,4", "2,2"},
      {{"tgamma-inner-gap", false, true, true, "p2 = q2, p1 > q1: T_gamma image infinite"}, "4,2",
       "2,2"},
      {{"lgamma-outer-weak-inner-strong", false, true, true,
        "L_gamma into L^{q2,weak}(L^{q1}) fails"},
       "2,4", "2,2"},
      {{"lgamma-outer-strong-inner-weak", false, true, true,
        "L_gamma into L^{q2}(L^{q1,weak}) fails unless p2 = q2"},
       "2,2", "2,1"},
      {{"lgamma-iterated-weak", false, true, true,
        "L_gamma into L^{q2,weak}(L^{q1,weak}) fails unless p2 = q2"},
       "2,2", "2,1"},
      {{"lgamma-strong", true, true, true,
        "L_gamma into L^q fails: infinite image, or (ln N)^{1/q1} growth"},
       "4,2", "1,4"},
  };
  return t;
}

double kernel_sup(const FuncRep& f, double gamma) {
  return mixed_norm(apply_T_gamma(f, gamma, true), ExponentPair(Exponent::inf(), Exponent::inf())).value;
}

NormResult ratio(const NormResult& a, double b) {
  NormResult r = a;
  if (!a.is_inf()) {
    r.value = a.value / b;
    r.err_bound = a.err_bound / b;
  }
  r.maximizing_lambda.reset();
  return r;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, msg);
}

double rv(const Exponent& e) { return e.recip_value(); }

}  // namespace

const std::vector<FamilyInfo>& counterexample_families() {
  static const std::vector<FamilyInfo> v = [] {
    std::vector<FamilyInfo> out;
    for (auto& f : table()) out.push_back(f.info);
    return out;
  }();
  return v;
}

CounterexampleRun run_counterexample(const std::string& family, const std::optional<ExponentPair>& p_in,
                                     const std::optional<ExponentPair>& q_in,
                                     const std::vector<double>& Ns) {
  const Family* fam = nullptr;
  for (auto& f : table())
    if (f.info.id == family) fam = &f;
  if (!fam) throw Error(ErrorCode::UnknownFamily, "unknown family '" + family + "'");
  ExponentPair p = p_in ? *p_in : ExponentPair::parse(fam->default_p ? fam->default_p : "1,1");
  ExponentPair q = q_in ? *q_in : ExponentPair::parse(fam->default_q);
  if (fam->info.uses_N) {
    require(!Ns.empty(), "empty N list");
    for (size_t i = 0; i < Ns.size(); ++i)
      require(Ns[i] > 1 && std::isfinite(Ns[i]) && (i == 0 || Ns[i] > Ns[i - 1]),
              "N values must be increasing, finite and > 1");
  }

  CounterexampleRun run;
  run.family = family;
  const double q1 = rv(q.p1()), q2 = rv(q.p2());  // reciprocals
  const double p1 = rv(p.p1()), p2 = rv(p.p2());
  auto per_N = [&](const std::function<FamilyPoint(double)>& at, double predicted) {
    for (double N : Ns) run.points.push_back(at(N));
    run.predicted = predicted;
    std::vector<double> vals;
    bool finite = true;
    for (auto& pt : run.points) {
      vals.push_back(pt.value.value);
      finite = finite && !pt.value.is_inf();
    }
    if (!finite) {
      run.declared_infinite = true;
      return;
    }
    if (Ns.size() >= 4) run.fit = fit_growth(family, Ns, vals, GrowthModel::log_power);
  };
  auto single = [&](const NormResult& value, const NormResult& bound) {
    run.points.push_back({0.0, value, bound});
    run.declared_infinite = value.is_inf();
  };

  if (family == "kernel-strong" || family == "kernel-outer-strong-inner-weak") {
    require(q1 > 0 && q2 > 0, "finite q required");
    const double g = q1 + q2;
    bool strong = family == "kernel-strong";
    per_N(
        [&](double N) {
          RegionSpec R;
          R.y_lower = 1;
          R.y_upper = N;
          if (strong) R.relation = Relation::y_le_x;
          auto F = FuncRep::catalog(CatalogFunc::sum_power(g, R));
          NormResult v = strong ? mixed_norm(F, q) : half_mixed_norm(F, q, HalfVariant::outer_strong_inner_weak);
          return FamilyPoint{N, v, {kernel_sup(F, g), Method::lambda_search, 0.0, std::nullopt}};
        },
        1 / q.p2().value());
    run.notes = "bound column: sup F (|x+y|+|x-y|)^{1/q1+1/q2}, at most 2^{1/q1+1/q2}";
  } else if (family == "kernel-sup-outer" || family == "kernel-sup-inner") {
    require(q1 > 0, "finite q1 required");
    bool outer = family == "kernel-sup-outer";
    ExponentPair e = outer ? ExponentPair(q.p1(), Exponent::inf()) : ExponentPair(Exponent::inf(), q.p1());
    per_N(
        [&](double N) {
          RegionSpec R;
          R.x_lower = 1;
          R.x_upper_coeff = N;
          R.y_lower = 1;
          R.y_upper = N;
          auto F = FuncRep::catalog(CatalogFunc::sum_power(q1, R));
          return FamilyPoint{N, mixed_norm(F, e), {kernel_sup(F, q1), Method::lambda_search, 0.0, std::nullopt}};
        },
        1 / q.p1().value());
    run.notes = "bound column: sup F (|x+y|+|x-y|)^{1/q1}, at most 2^{1/q1}";
  } else if (family == "holder-log-growth") {
    require(q.p1().is_inf() && p1 > 0 && q2 > 0, "needs q1 = inf and finite p1, q2");
    const ExponentPair r = holder_combine(p, q);
    const double g = q2, alpha = (p2 + q2) / p1;
    auto gfun = FuncRep::catalog(CatalogFunc::sum_power(g));
    const NormResult gn = mixed_weak_norm(gfun, q);
    per_N(
        [&](double N) {
          RegionSpec E;
          E.x_upper_coeff = 1;
          E.x_upper_exp = -alpha;
          E.y_lower = 1;
          E.y_upper = N;
          auto f = FuncRep::catalog(CatalogFunc::sum_power(-g, E));
          auto lhs = mixed_weak_norm(pointwise_product(f, gfun), r);
          auto fs = mixed_norm(f, p);
          NormResult bound{fs.value * gn.value, Method::closed_form, 0.0, std::nullopt};
          return FamilyPoint{N, ratio(lhs, bound.value), bound};
        },
        rv(r.p2()) - p2);
    run.notes = "value column: ||fg||_{r,weak} / (||f||_{L^p} ||g||_{q,weak}); the strong norm of f "
                "bounds its weak norm";
  } else if (family == "holder-inner-sup") {
    require(q.p2().is_inf() && q1 > 0 && p2 > 0, "needs q2 = inf and finite q1, p2");
    const ExponentPair r = holder_combine(p, q);
    const double g = q1;
    RegionSpec E;
    E.x_upper_coeff = 1;
    E.x_upper_exp = -rv(r.p2()) / rv(r.p1());  // -r1/r2
    auto f = FuncRep::catalog(CatalogFunc::power_product(1, g, 0, E));
    auto gf = FuncRep::catalog(CatalogFunc::power_product(1, -g, 0));
    auto fn = mixed_weak_norm(f, p), gn = mixed_weak_norm(gf, q);
    single(mixed_weak_norm(pointwise_product(f, gf), r),
           {fn.value * gn.value, Method::closed_form, 0.0, std::nullopt});
    run.notes = "bound column: ||f||_{p,weak} ||g||_{q,weak}";
  } else if (family == "holder-outer-power" || family == "holder-outer-power-swapped") {
    require(p1 > 0 && p2 > 0 && q1 > 0 && q2 > 0, "finite exponents required");
    bool swapped = family == "holder-outer-power-swapped";
    // in reciprocals p2/q2 > p1/q1 reads q2/p2 > q1/p1
    if (!swapped) require(q2 / p2 > q1 / p1, "needs p2/q2 > p1/q1");
    else require(q2 / p2 < q1 / p1, "needs p2/q2 < p1/q1");
    const ExponentPair r = holder_combine(p, q);
    const double beta = (p2 + q2) / (p1 + q1);
    const double alpha = swapped ? p2 - beta * p1 : q2 - beta * q1;
    RegionSpec E;
    E.x_upper_coeff = 1;
    E.x_upper_exp = -beta;
    auto f = FuncRep::catalog(CatalogFunc::power_product(1, 0, swapped ? -alpha : alpha, E));
    auto gf = FuncRep::catalog(CatalogFunc::power_product(1, 0, swapped ? alpha : -alpha, E));
    auto fn = mixed_weak_norm(f, p), gn = mixed_weak_norm(gf, q);
    single(mixed_weak_norm(pointwise_product(f, gf), r),
           {fn.value * gn.value, Method::closed_form, 0.0, std::nullopt});
    run.notes = "bound column: ||f||_{p,weak} ||g||_{q,weak}";
  } else if (family == "tgamma-log-growth") {
    require(p.p1() == q.p1() && p2 < q2 && p1 > 0 && q2 > 0, "needs p1 = q1, p2 > q2");
    const double g = homogeneity_gamma(p, q, 1);
    const double alpha = (g + p2) / p1;
    per_N(
        [&](double N) {
          RegionSpec E;
          E.x_upper_coeff = 1;
          E.x_upper_exp = -alpha;
          E.y_lower = 1;
          E.y_upper = N;
          auto f = FuncRep::catalog(CatalogFunc::max_power(-g, E));
          auto lhs = mixed_weak_norm(apply_T_gamma(f, g), q);
          auto fs = mixed_norm(f, p);
          return FamilyPoint{N, ratio(lhs, fs.value), fs};
        },
        q2 - p2);
    run.notes = "value column: ||T_gamma f||_{q,weak} / ||f||_{L^p}";
  } else if (family == "tgamma-inner-gap") {
    require(p.p2() == q.p2() && p1 < q1 && q2 > 0, "needs p2 = q2, p1 > q1");
    const double g = homogeneity_gamma(p, q, 1);
    RegionSpec E;
    E.x_upper_coeff = 1;
    E.x_upper_exp = -q2 / q1;  // beta = q1/q2
    E.x_upper_sub_coeff = 1;
    E.x_upper_sub_exp = 1;
    E.y_upper = 1;
    auto f = FuncRep::catalog(CatalogFunc::max_power(-g, E));
    single(mixed_weak_norm(apply_T_gamma(f, g), q), mixed_weak_norm(f, p));
    run.notes = "bound column: ||f||_{p,weak}";
  } else if (family == "lgamma-outer-weak-inner-strong") {
    const double g = homogeneity_gamma(p, q, 1);
    require(g > 0, "needs gamma > 0");
    require(q1 > 0, "needs finite q1");
    FuncRep f;
    if (p2 < q2) {  // p2 > q2
      f = FuncRep::catalog(CatalogFunc::shift_power(1, g - q1, RegionSpec::box(1, 1)));
      run.notes = "f = |x-y|^{gamma-1/q1} on |x|,|y| <= 1";
    } else {
      require(p1 < q1, "p2 <= q2 needs p1 > q1");
      f = FuncRep::catalog(CatalogFunc::log_damped(g, q.p1().value(), 1.0 / 3.0));
      run.notes = "f = |x-y|^{gamma-1/q1} |ln|x-y||^{-1/q1} on |x|,|y| <= 1/3";
    }
    auto L = apply_L_gamma(f, g).f;
    single(half_mixed_norm(L, q, HalfVariant::outer_weak_inner_strong),
           half_mixed_norm(f, p, HalfVariant::outer_weak_inner_strong));
    run.notes += "; bound column: ||f|| in L^{p2,weak}(L^{p1})";
  } else if (family == "lgamma-outer-strong-inner-weak" || family == "lgamma-iterated-weak") {
    const double g = homogeneity_gamma(p, q, 1);
    require(g > 0 && p1 > 0, "needs gamma > 0 and finite p1");
    RegionSpec R;
    R.y_upper = 1;
    auto f = FuncRep::catalog(CatalogFunc::shift_power(1, -p1, R));
    auto L = apply_L_gamma(f, g).f;
    if (family == "lgamma-iterated-weak")
      single(iterated_weak_norm(L, q), iterated_weak_norm(f, p));
    else
      single(half_mixed_norm(L, q, HalfVariant::outer_strong_inner_weak),
             half_mixed_norm(f, p, HalfVariant::outer_strong_inner_weak));
    run.notes = "f = |x-y|^{-1/p1} on |y| <= 1; finite exactly when p2 = q2";
  } else if (family == "lgamma-strong") {
    const double g = homogeneity_gamma(p, q, 1);
    require(g > 0 && p1 > 0 && q1 > 0, "needs gamma > 0 and finite p1, q1");
    const double a = g - q1;
    const double s = a / p1;  // (gamma - 1/q1) p1
    if (s > -1) {
      RegionSpec R;
      R.relation = Relation::y_le_x;
      R.x_upper_coeff = 100;
      R.y_lower = 1;
      R.y_upper = 2;
      auto f = FuncRep::catalog(CatalogFunc::shift_power(1, a, R));
      single(mixed_norm(apply_L_gamma(f, g).f, q), mixed_norm(f, p));
      run.notes = "case (gamma-1/q1) p1 > -1 at N = 100: image infinite";
    } else {
      require(!Ns.empty(), "empty N list");
      per_N(
          [&](double N) {
            RegionSpec R;
            R.relation = Relation::two_y_le_x;
            R.x_upper_coeff = N;
            R.y_lower = 1;
            R.y_upper = 2;
            auto f = FuncRep::catalog(CatalogFunc::shift_power(1, a, R));
            return FamilyPoint{N, mixed_norm(apply_L_gamma(f, g).f, q), mixed_norm(f, p)};
          },
          1 / q.p1().value());
      run.notes = "case (gamma-1/q1) p1 <= -1: growth (ln N)^{1/q1}";
    }
  }
  return run;
}

}  // namespace mixnorm
