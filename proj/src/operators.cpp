#include "mixnorm/operators.hpp"

#include <algorithm>
#include <cmath>

#include "quadrature.hpp"

namespace mixnorm {

OperatorSpec::OperatorSpec(OperatorKind k, double g, DimPair d) : kind(k), gamma_or_alpha(g), dims(d) {
  if (!(g > 0.0)) throw Error(ErrorCode::InvalidArgument, "operator parameter must be positive");
  if (k == OperatorKind::I_alpha && !(g < d.n)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, n)");
}

namespace {

bool full_max_power(const FuncRep& f) {
  if (f.kind() != FuncRep::Kind::catalog) return false;
  const CatalogFunc& c = f.as_catalog();
  const RegionSpec& R = c.region;
  return c.kind == CatalogKind::max_power && R.x_lower == 0.0 && std::isinf(R.x_upper_coeff) &&
         R.y_lower == 0.0 && std::isinf(R.y_upper) && R.relation == Relation::none;
}

// multiply by (2 max)^{-g}, folding into an existing full-region kernel factor
FuncRep times_kernel(const FuncRep& f, double g) {
  if (full_max_power(f)) {
    CatalogFunc c = f.as_catalog();
    c.gamma += g;
    return FuncRep::catalog(c, f.dims());
  }
  if (f.kind() == FuncRep::Kind::product) {
    if (full_max_power(f.left())) return FuncRep::product(times_kernel(f.left(), g), f.right());
    if (full_max_power(f.right())) return FuncRep::product(f.left(), times_kernel(f.right(), g));
  }
  if (f.kind() == FuncRep::Kind::scale) return FuncRep::scale(times_kernel(f.left(), g), f.scalar());
  CatalogFunc k = CatalogFunc::max_power(g);
  return FuncRep::product(f, FuncRep::catalog(k, f.dims()));
}

}  // namespace

FuncRep apply_T_gamma(const FuncRep& f, double gamma, bool inverse) {
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  const double g = inverse ? -gamma : gamma;
  if (f.kind() == FuncRep::Kind::grid) {
    const GridFunc* grid = &f.as_grid();
    if (grid->dims.n != 1 || grid->dims.m != 1)
      throw Error(ErrorCode::UnsupportedDimension, "the T_gamma kernel is radial only for n = m = 1");
    GridFunc out = *grid;
    for (size_t j = 0; j < out.ycells(); ++j)
      for (size_t i = 0; i < out.xcells(); ++i)
        out.samples[j * out.xcells() + i] *= std::pow(2.0 * std::max(out.xmid(i), out.ymid(j)), -g);
    return FuncRep::grid(std::move(out));
  }
  return times_kernel(f, g);
}

LGammaResult apply_L_gamma(const FuncRep& f, double gamma, bool inverse) {
  if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidArgument, "gamma must be positive");
  const double g = inverse ? -gamma : gamma;
  if (f.kind() == FuncRep::Kind::catalog) {
    CatalogFunc c = f.as_catalog();
    if (c.kind == CatalogKind::shift_power) {
      c.a1 -= g;
      return {FuncRep::catalog(c, f.dims()), false};
    }
    if (c.kind == CatalogKind::log_damped) {
      c.gamma -= g;
      return {FuncRep::catalog(c, f.dims()), false};
    }
  }
  GridFunc in = f.kind() == FuncRep::Kind::grid ? f.as_grid() : sample_default(f);
  if (in.dims.n != 1 || in.dims.m != 1)
    throw Error(ErrorCode::UnsupportedDimension, "the L_gamma kernel is handled for n = m = 1");
  const size_t kx = in.xnodes.size() - 1;
  std::vector<double> s(2 * kx * in.ycells());
  bool singular = false;
  for (size_t j = 0; j < in.ycells(); ++j) {
    double ry = in.ymid(j);
    for (size_t i = 0; i < kx; ++i) {
      double x0 = in.xnodes[i], x1 = in.xnodes[i + 1], rx = 0.5 * (x0 + x1);
      double same = in.at(i, j);
      double opp = in.split_sign ? in.at(kx + i, j) : same;
      double d = std::fabs(rx - ry);
      if (ry >= x0 && ry < x1) {
        // diagonal cell: mean distance from the cell center
        d = 0.25 * (x1 - x0);
        if (same > 0.0) singular = true;
      }
      s[j * 2 * kx + i] = same == 0.0 ? 0.0 : same * std::pow(d, -g);
      s[j * 2 * kx + kx + i] = opp == 0.0 ? 0.0 : opp * std::pow(rx + ry, -g);
    }
  }
  return {FuncRep::grid(GridFunc(in.xnodes, in.ynodes, std::move(s), in.dims, true)), singular};
}

FuncRep pointwise_product(const FuncRep& f, const FuncRep& g) {
  using K = FuncRep::Kind;
  if (f.kind() == K::catalog && g.kind() == K::catalog) {
    const CatalogFunc &a = f.as_catalog(), &b = g.as_catalog();
    if (full_max_power(f) && full_max_power(g)) {
      CatalogFunc c = a;
      c.gamma += b.gamma;
      c.c *= b.c;
      return FuncRep::catalog(c, f.dims());
    }
    auto same_region = [](const RegionSpec& r, const RegionSpec& s) {
      return r.x_lower == s.x_lower && r.x_upper_coeff == s.x_upper_coeff && r.x_upper_exp == s.x_upper_exp &&
             r.x_upper_sub_coeff == s.x_upper_sub_coeff && r.x_upper_sub_exp == s.x_upper_sub_exp &&
             r.y_lower == s.y_lower && r.y_upper == s.y_upper && r.relation == s.relation;
    };
    if (a.kind == CatalogKind::power_product && b.kind == CatalogKind::power_product &&
        same_region(a.region, b.region)) {
      return FuncRep::catalog(CatalogFunc::power_product(a.c * b.c, a.a1 + b.a1, a.a2 + b.a2, a.region), f.dims());
    }
  }
  if (f.kind() == K::grid && g.kind() == K::grid) {
    const GridFunc &a = f.as_grid(), &b = g.as_grid();
    if (a.xnodes == b.xnodes && a.ynodes == b.ynodes && a.split_sign == b.split_sign) {
      std::vector<double> s(a.samples.size());
      for (size_t k = 0; k < s.size(); ++k)
        s[k] = (a.samples[k] == 0.0 || b.samples[k] == 0.0) ? 0.0 : a.samples[k] * b.samples[k];
      return FuncRep::grid(GridFunc(a.xnodes, a.ynodes, std::move(s), a.dims, a.split_sign));
    }
  }
  return FuncRep::product(f, g);
}

FuncRep dilate(const FuncRep& f, double R) { return f.dilated(R); }

// ---------------------------------------------------------------- line functions

double Segment::value(double x) const {
  if (x < x0 || x >= x1) return 0.0;
  if (a == 0.0) return c;
  double t = std::fabs(x - center);
  if (t == 0.0) return a > 0 ? 0.0 : kInfinity;
  return c * std::pow(t, a);
}

LineFunc::LineFunc(std::vector<Segment> s) {
  for (auto& g : s) {
    if (!(g.x1 > g.x0) || !(g.c >= 0.0)) throw Error(ErrorCode::InvalidArgument, "bad segment");
    if (g.c > 0.0) segs_.push_back(g);
  }
  std::sort(segs_.begin(), segs_.end(), [](const Segment& a, const Segment& b) { return a.x0 < b.x0; });
}

LineFunc LineFunc::step(const std::vector<double>& nodes, const std::vector<double>& values) {
  if (nodes.size() != values.size() + 1) throw Error(ErrorCode::InvalidArgument, "step needs K+1 nodes for K values");
  std::vector<Segment> s;
  for (size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
      throw Error(ErrorCode::NonFiniteSample, "step values must be finite and nonnegative");
    s.push_back({nodes[i], nodes[i + 1], values[i], 0.0, 0.0});
  }
  return LineFunc(std::move(s));
}

LineFunc LineFunc::indicator(double a, double b, double c) { return LineFunc({Segment{a, b, c, 0.0, 0.0}}); }

LineFunc LineFunc::from_radial(const Func1D& f) {
  std::vector<Segment> s;
  if (f.is_grid()) {
    const Grid1D& g = f.grid();
    if (g.n != 1) throw Error(ErrorCode::UnsupportedDimension, "line functions are one-dimensional");
    for (size_t i = 0; i < g.values.size(); ++i) {
      if (g.values[i] <= 0.0) continue;
      s.push_back({g.nodes[i], g.nodes[i + 1], g.values[i], 0.0, 0.0});
      s.push_back({-g.nodes[i + 1], -g.nodes[i], g.values[i], 0.0, 0.0});
    }
    return LineFunc(std::move(s));
  }
  for (const auto& p : f.profile().pieces()) {
    if (p.b != 0.0 || (p.e != 0.0 && p.d != 0.0))
      throw Error(ErrorCode::InvalidArgument, "only pure power pieces extend to the line");
    double a = p.a + p.e;
    s.push_back({p.t0, p.t1, p.c, a, 0.0});
    s.push_back({-p.t1, -p.t0, p.c, a, 0.0});
  }
  return LineFunc(std::move(s));
}

bool LineFunc::is_step() const {
  for (const auto& s : segs_)
    if (s.a != 0.0 || std::isinf(s.x0) || std::isinf(s.x1)) return false;
  return true;
}

double LineFunc::eval(double x) const {
  double v = 0.0;
  for (const auto& s : segs_) v += s.value(x);
  return v;
}

double LineFunc::measure_gt(double lambda) const {
  if (!is_step()) throw Error(ErrorCode::InvalidArgument, "measure of a non-step line function");
  double m = 0.0;
  for (const auto& s : segs_)
    if (s.c > lambda) m += s.x1 - s.x0;
  return m;
}

double LineFunc::strong_norm(double p) const {
  if (!is_step()) throw Error(ErrorCode::InvalidArgument, "norm of a non-step line function");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& s : segs_) m = std::max(m, s.c);
    return m;
  }
  long double t = 0.0L;
  for (const auto& s : segs_) t += (s.x1 - s.x0) * std::pow(static_cast<long double>(s.c), p);
  return std::pow(static_cast<double>(t), 1.0 / p);
}

LineFunc LineFunc::scaled(double k) const {
  std::vector<Segment> s = segs_;
  for (auto& g : s) g.c *= k;
  return LineFunc(std::move(s));
}

// ---------------------------------------------------------------- I_alpha

namespace {

constexpr long kBudget = 100000;

struct Budget {
  long used = 0;
};

// int_l^r phi(y) dy where phi ~ |y - l|^{bl} near l and ~ |y - r|^{br} near r
double integrate_singular(const std::function<double(double)>& phi, double l, double r, double bl, double br,
                          Budget& B) {
  if (!(r > l)) return 0.0;
  double m = 0.5 * (l + r);
  double total = 0.0;
  for (int side = 0; side < 2; ++side) {
    double a = side == 0 ? l : r;           // singular end
    double b = m;                            // regular end
    double beta = side == 0 ? bl : br;
    double len = std::fabs(b - a);
    double dir = side == 0 ? 1.0 : -1.0;
    // y = a + dir * len * s^k with k = 1/(beta+1) flattens |y-a|^beta
    double k = beta < 0.0 ? 1.0 / (beta + 1.0) : 1.0;
    auto g = [&](double s) {
      if (s <= 0.0) return 0.0;
      double y = a + dir * len * std::pow(s, k);
      double v = phi(y);
      if (!std::isfinite(v)) return 0.0;
      return v * len * k * std::pow(s, k - 1.0);
    };
    auto res = quad::adaptive(g, 0.0, 1.0, 1e-8, 0.0, kBudget - B.used);
    B.used += res.evals;
    if (!res.converged) throw Error(ErrorCode::QuadratureFailure, "I_alpha quadrature exceeded its budget");
    total += res.value;
  }
  return total;
}

double segment_integral(const Segment& s, double alpha, double x, Budget& B) {
  if (s.a == 0.0) {
    if (std::isinf(s.x0) || std::isinf(s.x1)) return kInfinity;
    auto F = [&](double t) { return (t < 0 ? -1.0 : 1.0) * std::pow(std::fabs(t), alpha) / alpha; };
    return s.c * (F(s.x1 - x) - F(s.x0 - x));
  }
  const double km = alpha - 1.0;
  // tails: |y|^{a + alpha - 1} must be integrable at infinity
  if ((std::isinf(s.x1) || std::isinf(s.x0)) && s.a + alpha >= 0.0) return kInfinity;
  // local integrability at the center
  if (s.a <= -1.0 && s.center >= s.x0 && s.center <= s.x1) return kInfinity;
  if (x == s.center && s.a + alpha <= 0.0 && x >= s.x0 && x <= s.x1) return kInfinity;
  std::vector<double> cuts{s.x0, s.x1};
  for (double c : {x, s.center})
    if (c > s.x0 && c < s.x1) cuts.push_back(c);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto phi = [&](double y) {
    double t = std::fabs(y - s.center), d = std::fabs(y - x);
    if (t == 0.0 || d == 0.0) return kInfinity;
    return s.c * std::pow(t, s.a) * std::pow(d, km);
  };
  auto expo = [&](double at) {
    double e = 0.0;
    if (at == x) e += km;
    if (at == s.center) e += s.a;
    return e;
  };
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    double l = cuts[i], r = cuts[i + 1];
    if (std::isinf(r)) {
      double L = std::max({l + 1.0, 2.0 * std::fabs(x) + 1.0, 2.0 * std::fabs(s.center) + 1.0});
      total += integrate_singular(phi, l, L, expo(l), 0.0, B);
      // y = L / u on (0, 1]
      auto psi = [&](double u) { return phi(L / u) * L / (u * u); };
      double beta0 = -(s.a + km) - 2.0;
      total += integrate_singular(psi, 0.0, 1.0, beta0, 0.0, B);
    } else if (std::isinf(l)) {
      double L = std::min({r - 1.0, -2.0 * std::fabs(x) - 1.0, -2.0 * std::fabs(s.center) - 1.0});
      total += integrate_singular(phi, L, r, 0.0, expo(r), B);
      auto psi = [&](double u) { return phi(L / u) * std::fabs(L) / (u * u); };
      double beta0 = -(s.a + km) - 2.0;
      total += integrate_singular(psi, 0.0, 1.0, beta0, 0.0, B);
    } else {
      total += integrate_singular(phi, l, r, expo(l), expo(r), B);
    }
  }
  return total;
}

}  // namespace

double fractional_integral_1d(const LineFunc& f, double alpha, double x) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1) for n = 1");
  Budget B;
  double total = 0.0;
  for (const auto& s : f.segments()) {
    total += segment_integral(s, alpha, x, B);
    if (std::isinf(total)) return kInfinity;
  }
  return total;
}

double fractional_integral_1d(const Func1D& f, double alpha, double x) {
  return fractional_integral_1d(LineFunc::from_radial(f), alpha, x);
}

// ---------------------------------------------------------------- rearrangement

Func1D symmetric_rearrangement(const LineFunc& f) {
  if (!f.is_step()) throw Error(ErrorCode::InvalidArgument, "rearrangement needs a step function");
  std::vector<std::pair<double, double>> cells;  // value, width
  for (const auto& s : f.segments())
    if (s.c > 0.0) cells.push_back({s.c, s.x1 - s.x0});
  std::stable_sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  Grid1D g;
  g.nodes.push_back(0.0);
  long double w = 0.0L;
  for (size_t k = 0; k < cells.size();) {
    double v = cells[k].first;
    while (k < cells.size() && cells[k].first == v) w += cells[k++].second;
    g.nodes.push_back(static_cast<double>(w / 2.0L));
    g.values.push_back(v);
  }
  if (g.values.empty()) {
    g.nodes.push_back(1.0);
    g.values.push_back(0.0);
  }
  return Func1D(g);
}

Func1D symmetric_rearrangement(const Func1D& f) {
  if (f.is_grid()) return symmetric_rearrangement(LineFunc::from_radial(f));
  // compact profile: sample on a geometric grid over its support first
  double hi = 0.0;
  for (const auto& p : f.profile().pieces()) hi = std::max(hi, p.t1);
  if (std::isinf(hi) || hi == 0.0) throw Error(ErrorCode::InvalidArgument, "rearrangement needs compact support");
  Grid1D g;
  g.nodes = geometric_nodes(512, hi * 1e-6, hi);
  for (size_t i = 0; i + 1 < g.nodes.size(); ++i) {
    double v = f.eval(0.5 * (g.nodes[i] + g.nodes[i + 1]));
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteSample, "non-finite sample during rearrangement");
    g.values.push_back(v);
  }
  return symmetric_rearrangement(Func1D(g));
}

// ---------------------------------------------------------------- HLS kernel

double kernel_double_integral(const LineFunc& f, const LineFunc& g, double mu) {
  if (!f.is_step() || !g.is_step()) throw Error(ErrorCode::InvalidArgument, "kernel integral needs step functions");
  if (!(mu > -1.0)) throw Error(ErrorCode::InvalidArgument, "kernel exponent must exceed -1");
  const double den = (mu + 1.0) * (mu + 2.0);
  auto K = [&](double t) { return std::pow(std::fabs(t), mu + 2.0) / den; };
  long double total = 0.0L;
  for (const auto& s : f.segments())
    for (const auto& t : g.segments()) {
      double a = s.x0, b = s.x1, c = t.x0, d = t.x1;
      long double v = static_cast<long double>(K(b - c)) - K(a - c) - K(b - d) + K(a - d);
      total += static_cast<long double>(s.c) * t.c * v;
    }
  return static_cast<double>(total);
}

}  // namespace mixnorm
