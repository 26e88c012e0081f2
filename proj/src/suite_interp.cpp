#include <cmath>

#include "verify_internal.hpp"

namespace mixnorm {

using namespace detail;

namespace {

struct Theta {
  int num, den;
  double value() const { return double(num) / den; }
  Num exact() const { return Num::rational(num, den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

Theta random_theta(Rng& rng) {
  static const Theta ts[] = {{1, 4}, {1, 3}, {1, 2}, {2, 3}, {3, 4}};
  return ts[rng.below(5)];
}

// 1/r = t/a + (1-t)/b
Exponent mix(const Exponent& a, const Exponent& b, const Theta& t) {
  Num th = t.exact();
  return Exponent::from_recip(th * a.reciprocal() + (Num::integer(1) - th) * b.reciprocal());
}

// exponent e/t, i.e. reciprocal t/e
Exponent divide(const Exponent& e, const Num& t) { return Exponent::from_recip(e.reciprocal() * t); }

// constant of the one-variable interpolation, ordering the endpoints
double interp_constant(const Exponent& a, const Exponent& b, const Exponent& r) {
  bool a_lo = Num::compare(a.reciprocal(), b.reciprocal()) > 0;
  return a_lo ? weak_interpolation_constant_1d(a, b, r) : weak_interpolation_constant_1d(b, a, r);
}

double pw(double v, double e) { return e == 0.0 ? 1.0 : std::pow(v, e); }

std::vector<CheckRecord> mixed_weak_sweep(const SuiteConfig& c, int index, int count) {
  Rng rng(c.seed, "interp/mixed-weak/" + std::to_string(index));
  Sweep sw("interp/mixed-weak", CheckKind::upper_bound, c.tol_exact);
  for (int k = 0; k < count; ++k) {
    ExponentPair p = random_pair(rng), q = random_pair(rng);
    Theta t = random_theta(rng);
    ExponentPair r(mix(p.p1(), q.p1(), t), mix(p.p2(), q.p2(), t));
    GridFunc g = random_grid(rng);
    double th = t.value();
    double rhs = pw(grid_mixed_weak(g, p).value, th) * pw(grid_mixed_weak(g, q).value, 1 - th);
    sw.add(grid_mixed_weak(g, r), exact_value(rhs), 1,
           "p=" + p.to_string() + " q=" + q.to_string() + " theta=" + t.str());
  }
  return {sw.finish("constant 1")};
}

std::vector<CheckRecord> half_weak_sweep(const SuiteConfig& c, int index, int count) {
  Rng rng(c.seed, "interp/half-weak/" + std::to_string(index));
  Sweep sw("interp/half-weak", CheckKind::upper_bound, c.tol_exact);
  for (int k = 0; k < count; ++k) {
    ExponentPair p = random_pair(rng), q = random_pair(rng);
    while (p.p1() == q.p1()) q = random_pair(rng);
    Theta t = random_theta(rng);
    ExponentPair r(mix(p.p1(), q.p1(), t), mix(p.p2(), q.p2(), t));
    GridFunc g = random_grid(rng);
    double th = t.value();
    auto v = HalfVariant::outer_strong_inner_weak;
    double rhs = pw(grid_half_mixed(g, p, v).value, th) * pw(grid_half_mixed(g, q, v).value, 1 - th);
    sw.add(grid_mixed_norm(g, r), exact_value(rhs), interp_constant(p.p1(), q.p1(), r.p1()),
           "p=" + p.to_string() + " q=" + q.to_string() + " theta=" + t.str());
  }
  return {sw.finish("constant (r1/(r1-p1) + r1/(q1-r1))^{1/r1}; norms L^{p2}(L^{p1,weak})")};
}

std::vector<CheckRecord> four_norm_sweep(const SuiteConfig& c, int index, int count) {
  Rng rng(c.seed, "interp/four-norm/" + std::to_string(index));
  Sweep sw("interp/four-norm", CheckKind::upper_bound, c.tol_exact);
  int done = 0, guard = 0;
  while (done < count && guard++ < 100 * count) {
    Exponent p1 = random_exponent(rng), q1 = random_exponent(rng);
    if (p1 == q1) continue;
    Exponent p21 = random_exponent(rng, false), p22 = random_exponent(rng, false);
    Exponent q21 = random_exponent(rng, false), q22 = random_exponent(rng, false);
    Theta t = random_theta(rng), x = random_theta(rng);
    Exponent p2 = mix(p21, p22, t), q2 = mix(q21, q22, t);
    if (p2 == q2) continue;
    Exponent r1 = mix(p1, q1, t), r2 = mix(p2, q2, x);
    Num th = t.exact(), om = Num::integer(1) - th;
    double C = interp_constant(p1, q1, r1) * interp_constant(p2, q2, r2) *
               pw(weak_holder_constant_1d(divide(p21, th), divide(p22, om)), x.value()) *
               pw(weak_holder_constant_1d(divide(q21, th), divide(q22, om)), 1 - x.value());
    GridFunc g = random_grid(rng);
    double a = t.value(), b = x.value();
    double rhs = pw(grid_iterated_weak(g, {p1, p21}).value, a * b) *
                 pw(grid_iterated_weak(g, {q1, p22}).value, (1 - a) * b) *
                 pw(grid_iterated_weak(g, {p1, q21}).value, a * (1 - b)) *
                 pw(grid_iterated_weak(g, {q1, q22}).value, (1 - a) * (1 - b));
    sw.add(grid_mixed_norm(g, {r1, r2}), exact_value(rhs), C,
           "r=" + r1.to_string() + "," + r2.to_string() + " theta=" + t.str() + " xi=" + x.str());
    ++done;
  }
  return {sw.finish("constant K(p1,q1,r1) K(p2,q2,r2) times the weak Holder constants; p2 = q2 skipped")};
}

std::vector<CheckRecord> indicator_example(const SuiteConfig& c) {
  auto f = FuncRep::catalog(CatalogFunc::power_product(1, 0, 0, RegionSpec::box(1, 1)));
  auto p = ExponentPair::parse("1,1"), q = ExponentPair::parse("inf,inf");
  auto r = interpolate_exponent(p, q, InterpolationSpec(0.5));
  double rhs = std::sqrt(mixed_weak_norm(f, p).value * mixed_weak_norm(f, q).value);
  auto lhs = mixed_weak_norm(f, r);
  return {
      make_check("interp/indicator/bound", CheckKind::upper_bound, lhs, exact_value(rhs), 1, c.tol_exact,
                 "chi of the unit square, p=1,1 q=inf,inf theta=1/2"),
      make_check("interp/indicator/value", CheckKind::equality, lhs, exact_value(2), 1, c.tol_exact,
                 "equality case 2 = 4^{1/2} 1^{1/2}"),
  };
}

// (|x|+|y|)^{-gamma} with gamma on both homogeneity lines
std::vector<CheckRecord> non_inclusion() {
  std::vector<CheckRecord> out;
  struct Case {
    const char* p;
    const char* q;
  };
  for (auto [ps, qs] : {Case{"2,2", "4,4/3"}, Case{"1,2", "2,1"}, Case{"3,3/2", "3/2,3"}}) {
    auto p = ExponentPair::parse(ps), q = ExponentPair::parse(qs);
    double gamma = p.p1().recip_value() + p.p2().recip_value();
    auto f = FuncRep::catalog(CatalogFunc::sum_power(gamma));
    std::string base = std::string("interp/non-inclusion/p=") + ps + "/q=" + qs;
    auto np = mixed_weak_norm(f, p), nq = mixed_weak_norm(f, q);
    out.push_back(make_check(base + "/weak-p-finite", CheckKind::finite, np, np, 1, 0));
    out.push_back(make_check(base + "/weak-q-finite", CheckKind::finite, nq, nq, 1, 0));
    for (const char* rs : {"1,1", "2,2", "4,4", "3/2,6", "inf,2"}) {
      auto r = ExponentPair::parse(rs);
      out.push_back(make_check(base + "/strong-r=" + rs, CheckKind::divergence, mixed_norm(f, r),
                               exact_value(np.value * nq.value), 1, 0,
                               "L^r norm infinite while both weak norms are finite"));
    }
  }
  return out;
}

}  // namespace

VerificationReport suite_interpolation(const SuiteConfig& c) {
  std::vector<NamedTask> tasks;
  const int chunk = 50;
  for (int first = 0, i = 0; first < c.functions; first += chunk, ++i) {
    int n = std::min(chunk, c.functions - first);
    tasks.push_back({"interp/mixed-weak", [&, i, n] { return mixed_weak_sweep(c, i, n); }});
    tasks.push_back({"interp/half-weak", [&, i, n] { return half_weak_sweep(c, i, n); }});
    tasks.push_back({"interp/four-norm", [&, i, n] { return four_norm_sweep(c, i, n); }});
  }
  tasks.push_back({"interp/indicator", [&] { return indicator_example(c); }});
  tasks.push_back({"interp/non-inclusion", [&] { return non_inclusion(); }});
  return make_report("interpolation", c, merge_by_id(run_tasks(tasks)));
}

}  // namespace mixnorm
