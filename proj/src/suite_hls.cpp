#include <algorithm>
#include <cmath>
#include <limits>

#include "mixnorm/operators.hpp"
#include "quadrature.hpp"
#include "verify_internal.hpp"

namespace mixnorm {

using namespace detail;

namespace {

// forward regime p1 = p2 = 3/2: kernel |x-y|^{-2/3}, I_alpha with alpha = 1/3
constexpr double kForwardP = 1.5;
constexpr double kForwardMu = -2.0 / 3.0;
// reverse regime p1 = p2 = 2/3: kernel |x-y|^{1}
constexpr double kReverseP = 2.0 / 3.0;
constexpr double kReverseMu = 1.0;

// sharp diagonal constant for n = 1, lambda = 2/3 (Lieb)
double lieb_constant() {
  const double lam = -kForwardMu;
  return std::pow(M_PI, lam / 2) * std::tgamma(0.5 - lam / 2) / std::tgamma(1 - lam / 2) *
         std::pow(std::tgamma(0.5), lam - 1);
}

LineFunc random_line(Rng& rng) {
  int cells = 1 + rng.below(8);
  std::vector<double> nodes{rng.uniform(-4, 4)};
  for (int i = 0; i < cells; ++i) nodes.push_back(nodes.back() + rng.log_uniform(0.05, 2.0));
  return LineFunc::step(nodes, random_samples(rng, cells));
}

LineFunc moved(const LineFunc& f, double R, double shift) {
  std::vector<Segment> s;
  for (auto g : f.segments()) {
    g.x0 = g.x0 * R + shift;
    g.x1 = g.x1 * R + shift;
    s.push_back(g);
  }
  return LineFunc(std::move(s));
}

LineFunc rearranged(const LineFunc& f) { return LineFunc::from_radial(symmetric_rearrangement(f)); }

// int f(y) |x - y|^mu dy from the antiderivative sign(t) |t|^{mu+1} / (mu+1)
double inner_integral(const LineFunc& f, double mu, double x) {
  auto A = [&](double t) { return std::copysign(std::pow(std::fabs(t), mu + 1), t) / (mu + 1); };
  double v = 0.0;
  for (const auto& s : f.segments()) v += s.c * (A(x - s.x0) - A(x - s.x1));
  return v;
}

// int g(x) (int f(y) |x-y|^mu dy) dx, outer integral by tanh-sinh between the breakpoints of f;
// the inner integral is I_{mu+1} f when mu < 0
double via_fractional_integral(const LineFunc& f, const LineFunc& g, double mu) {
  auto inner = [&](double x) {
    return mu < 0 ? fractional_integral_1d(f, mu + 1, x) : inner_integral(f, mu, x);
  };
  std::vector<double> cuts;
  for (const auto& s : f.segments()) {
    cuts.push_back(s.x0);
    cuts.push_back(s.x1);
  }
  long double total = 0.0L;
  for (const auto& t : g.segments()) {
    std::vector<double> pts{t.x0, t.x1};
    for (double x : cuts)
      if (x > t.x0 && x < t.x1) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      if (!(pts[i + 1] > pts[i])) continue;
      auto r = quad::tanh_sinh(inner, pts[i], pts[i + 1], 1e-9);
      total += static_cast<long double>(t.c) * r.value;
    }
  }
  return static_cast<double>(total);
}

double norm_product(const LineFunc& f, const LineFunc& g, double p) { return f.strong_norm(p) * g.strong_norm(p); }

struct Chunk {
  std::vector<CheckRecord> checks;
  double ratio_min = kInfinity, ratio_max = 0.0;
};

Chunk forward(const SuiteConfig& c, int index, int count) {
  Rng rng(c.seed, "hls/forward/" + std::to_string(index));
  const double C = lieb_constant();
  Sweep bound("hls/forward/bound", CheckKind::upper_bound, c.tol_quad);
  Sweep quadr("hls/forward/quadrature", CheckKind::equality, c.tol_quad);
  Sweep stable("hls/forward/ratio-invariance", CheckKind::equality, 1e-9);
  Sweep riesz("hls/rearrangement/forward", CheckKind::lower_bound, c.tol_quad);
  Chunk out;
  for (int k = 0; k < count; ++k) {
    LineFunc f = random_line(rng), g = random_line(rng);
    double I = kernel_double_integral(f, g, kForwardMu);
    double N = norm_product(f, g, kForwardP);
    bound.add(exact_value(I), exact_value(N), C);
    quadr.add(quad_value(via_fractional_integral(f, g, kForwardMu)), exact_value(I), 1);
    double ratio = I / N;
    out.ratio_min = std::min(out.ratio_min, ratio);
    out.ratio_max = std::max(out.ratio_max, ratio);
    double R = rng.log_uniform(0.1, 10.0), h = rng.uniform(-5, 5);
    LineFunc fm = moved(f, R, h), gm = moved(g, R, h);
    stable.add(exact_value(kernel_double_integral(fm, gm, kForwardMu) / norm_product(fm, gm, kForwardP)),
               exact_value(ratio), 1, "R=" + fmt(R));
    riesz.add(exact_value(kernel_double_integral(rearranged(f), rearranged(g), kForwardMu)), exact_value(I), 1);
  }
  out.checks = {bound.finish(), quadr.finish("outer 1-D quadrature of g I_{1/3} f"), stable.finish(),
                riesz.finish("decreasing kernel |x-y|^{-2/3}: rearranging never decreases the integral")};
  return out;
}

Chunk reverse(const SuiteConfig& c, int index, int count) {
  Rng rng(c.seed, "hls/reverse/" + std::to_string(index));
  Sweep quadr("hls/reverse/quadrature", CheckKind::equality, c.tol_quad);
  Sweep stable("hls/reverse/ratio-invariance", CheckKind::equality, 1e-9);
  Sweep step("hls/rearrangement/reverse", CheckKind::upper_bound, c.tol_quad);
  Sweep norms("hls/rearrangement/norm-preserved", CheckKind::equality, 1e-10);
  Chunk out;
  for (int k = 0; k < count; ++k) {
    LineFunc f = random_line(rng), g = random_line(rng);
    double I = kernel_double_integral(f, g, kReverseMu);
    double ratio = I / norm_product(f, g, kReverseP);
    out.ratio_min = std::min(out.ratio_min, ratio);
    out.ratio_max = std::max(out.ratio_max, ratio);
    quadr.add(quad_value(via_fractional_integral(f, g, kReverseMu)), exact_value(I), 1);
    double R = rng.log_uniform(0.1, 10.0), h = rng.uniform(-5, 5);
    LineFunc fm = moved(f, R, h), gm = moved(g, R, h);
    stable.add(exact_value(kernel_double_integral(fm, gm, kReverseMu) / norm_product(fm, gm, kReverseP)),
               exact_value(ratio), 1, "R=" + fmt(R));
    LineFunc fs = rearranged(f), gs = rearranged(g);
    step.add(exact_value(kernel_double_integral(fs, gs, kReverseMu)), exact_value(I), 1);
    for (double p : {kReverseP, kForwardP})
      norms.add(exact_value(fs.strong_norm(p)), exact_value(f.strong_norm(p)), 1, "p=" + fmt(p));
  }
  out.checks = {quadr.finish("outer 1-D quadrature of g times the inner antiderivative"), stable.finish(),
                step.finish("increasing kernel |x-y|: rearranging never increases the integral"),
                norms.finish("layer cake")};
  return out;
}

std::vector<CheckRecord> examples(const SuiteConfig& c) {
  std::vector<CheckRecord> out;
  // chi_[0,1] at p = 3/2: inner antiderivative 3 (x^{1/3} + (1-x)^{1/3}), outer by quadrature
  LineFunc chi = LineFunc::indicator(0, 1);
  double I = kernel_double_integral(chi, chi, kForwardMu);
  auto oracle = quad::tanh_sinh([](double x) { return 3 * (std::cbrt(x) + std::cbrt(1 - x)); }, 0, 1, 1e-12);
  out.push_back(make_check("hls/example/indicator/integral", CheckKind::equality, exact_value(I),
                           quad_value(oracle.value), 1, c.tol_quad, "int_0^1 int_0^1 |x-y|^{-2/3} = 9/2"));
  out.push_back(make_check("hls/example/indicator/ratio", CheckKind::finite,
                           exact_value(I / norm_product(chi, chi, kForwardP)), exact_value(4.5), 1, 0));
  LineFunc zero = LineFunc::step({0, 1}, {0});
  for (double mu : {kForwardMu, kReverseMu}) {
    double p = mu < 0 ? kForwardP : kReverseP;
    out.push_back(make_check("hls/example/zero/mu=" + fmt(mu), CheckKind::equality,
                             exact_value(kernel_double_integral(zero, chi, mu)),
                             exact_value(norm_product(zero, chi, p)), 1, 0, "f = 0 gives 0 on both sides"));
  }
  return out;
}

}  // namespace

VerificationReport suite_hls(const SuiteConfig& c) {
  const int chunk = 25;
  std::vector<std::pair<int, int>> parts;
  for (int first = 0, i = 0; first < c.hls_pairs; first += chunk, ++i)
    parts.push_back({i, std::min(chunk, c.hls_pairs - first)});
  std::vector<Chunk> fw(parts.size()), rv(parts.size());
  std::vector<NamedTask> tasks;
  for (size_t j = 0; j < parts.size(); ++j) {
    tasks.push_back({"hls/forward", [&, j] {
                       fw[j] = forward(c, parts[j].first, parts[j].second);
                       return fw[j].checks;
                     }});
    tasks.push_back({"hls/reverse", [&, j] {
                       rv[j] = reverse(c, parts[j].first, parts[j].second);
                       return rv[j].checks;
                     }});
  }
  tasks.push_back({"hls/example", [&] { return examples(c); }});
  auto checks = merge_by_id(run_tasks(tasks));

  double fmin = kInfinity, fmax = 0, rmin = kInfinity, rmax = 0;
  for (const auto& x : fw) fmin = std::min(fmin, x.ratio_min), fmax = std::max(fmax, x.ratio_max);
  for (const auto& x : rv) rmin = std::min(rmin, x.ratio_min), rmax = std::max(rmax, x.ratio_max);
  std::string n = std::to_string(c.hls_pairs) + " random compactly supported step pairs";
  checks.push_back(make_check("hls/forward/ratio-finite", CheckKind::finite, exact_value(fmax),
                              exact_value(lieb_constant()), 1, 0,
                              n + "; empirical ratio range [" + fmt(fmin) + ", " + fmt(fmax) + "]"));
  // a zero lower constant would make 1/c infinite
  checks.push_back(make_check("hls/reverse/constant-positive", CheckKind::finite,
                              exact_value(rmin > 0 && std::isfinite(rmin) ? 1 / rmin : kInfinity), exact_value(0), 1, 0,
                              n + "; empirical lower constant c = " + fmt(rmin) + ", max ratio " + fmt(rmax) +
                                  "; value shown is 1/c"));
  return make_report("hls", c, std::move(checks));
}

}  // namespace mixnorm
