#include "mixnorm/normcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>

#include "quadrature.hpp"

namespace mixnorm {

const char* method_name(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::lambda_search: return "lambda_search";
    case Method::grid_exact: return "grid_exact";
  }
  return "?";
}

namespace {

enum class Family { mixed, mixed_weak, iterated, half_strong_weak, half_weak_strong };

bool near_zero(double x) { return std::fabs(x) < 1e-12; }

double ipow(double base, double e) {
  if (e == 0.0) return 1.0;
  if (base == 0.0) return e > 0 ? 0.0 : kInfinity;
  if (std::isinf(base)) return e > 0 ? kInfinity : 0.0;
  return std::pow(base, e);
}

double mul0(double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; }

}  // namespace

// ---------------------------------------------------------------- radial powers

double power_weak_norm(double c, double a, double lo, double hi, int n, const Exponent& p) {
  if (!(hi > lo) || c <= 0.0) return 0.0;
  if (p.is_inf()) {
    if (near_zero(a)) return c;
    if (a < 0) return lo == 0.0 ? kInfinity : c * std::pow(lo, a);
    return std::isinf(hi) ? kInfinity : c * std::pow(hi, a);
  }
  const double ip = p.recip_value(), V = unit_ball_volume(n);
  const double k = a + n * ip;
  if (near_zero(a)) return std::isinf(hi) ? kInfinity : c * std::pow(V * (std::pow(hi, n) - std::pow(lo, n)), ip);
  double best = 0.0;
  if (a < 0) {
    auto g = [&](double t) { return c * std::pow(t, a) * std::pow(V * (std::pow(t, n) - std::pow(lo, n)), ip); };
    if (std::isinf(hi)) {
      if (k > 1e-12) return kInfinity;
      if (near_zero(k)) best = c * std::pow(V, ip);
    } else {
      best = g(hi);
    }
    if (lo == 0.0) {
      if (k < -1e-12) return kInfinity;
      if (near_zero(k)) best = std::max(best, c * std::pow(V, ip));
    } else if (k < 0) {
      double ts = lo * std::pow(a / k, 1.0 / n);
      if (ts < hi) best = std::max(best, g(ts));
    }
    return best;
  }
  if (std::isinf(hi)) return kInfinity;
  auto g = [&](double t) { return c * ipow(t, a) * std::pow(V * (std::pow(hi, n) - std::pow(t, n)), ip); };
  best = g(lo);
  double ts = hi * std::pow(a / k, 1.0 / n);
  if (ts > lo) best = std::max(best, g(ts));
  return best;
}

double power_strong_norm(double c, double a, double lo, double hi, int n, const Exponent& p) {
  if (!(hi > lo) || c <= 0.0) return 0.0;
  if (p.is_inf()) return power_weak_norm(c, a, lo, hi, n, p);
  const double P = p.value(), V = unit_ball_volume(n);
  const double k = a * P + n;
  double integral;
  if (near_zero(k)) {
    if (lo == 0.0 || std::isinf(hi)) return kInfinity;
    integral = n * V * std::log(hi / lo);
  } else {
    if (lo == 0.0 && k < 0) return kInfinity;
    if (std::isinf(hi) && k > 0) return kInfinity;
    double top = std::isinf(hi) ? 0.0 : std::pow(hi, k);
    double bot = lo == 0.0 ? 0.0 : std::pow(lo, k);
    integral = n * V * (top - bot) / k;
  }
  return c * std::pow(integral, 1.0 / P);
}

// ---------------------------------------------------------------- weighted step functions

double weighted_weak_norm(const std::vector<double>& values, const std::vector<double>& weights,
                          const Exponent& p) {
  std::vector<size_t> idx;
  for (size_t i = 0; i < values.size(); ++i)
    if (values[i] > 0.0 && weights[i] > 0.0) idx.push_back(i);
  if (idx.empty()) return 0.0;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return values[a] > values[b]; });
  if (p.is_inf()) return values[idx.front()];
  const double ip = p.recip_value();
  long double m = 0.0L;
  double best = 0.0;
  for (size_t k = 0; k < idx.size();) {
    double v = values[idx[k]];
    while (k < idx.size() && values[idx[k]] == v) m += weights[idx[k++]];
    best = std::max(best, v * std::pow(static_cast<double>(m), ip));
  }
  return best;
}

double weighted_strong_norm(const std::vector<double>& values, const std::vector<double>& weights,
                            const Exponent& p) {
  if (p.is_inf()) {
    double s = 0.0;
    for (size_t i = 0; i < values.size(); ++i)
      if (weights[i] > 0.0) s = std::max(s, values[i]);
    return s;
  }
  const double P = p.value();
  long double s = 0.0L;
  for (size_t i = 0; i < values.size(); ++i)
    if (values[i] > 0.0) s += static_cast<long double>(weights[i]) * std::pow(static_cast<long double>(values[i]), P);
  return std::pow(static_cast<double>(s), 1.0 / P);
}

// ---------------------------------------------------------------- grids

namespace {

// per-row contribution to Phi for a row measure M
struct RowTerm {
  bool p1_inf, p2_inf;
  double r, ip1, ip2;
  explicit RowTerm(const ExponentPair& p)
      : p1_inf(p.p1().is_inf()), p2_inf(p.p2().is_inf()),
        r(p1_inf || p2_inf ? 0.0 : p.p2().value() / p.p1().value()),
        ip1(p.p1().recip_value()), ip2(p.p2().recip_value()) {}
  // summand for finite p2: M^{p2/p1}
  long double sum_term(long double M) const {
    if (M <= 0.0L) return 0.0L;
    if (p1_inf) return 1.0L;
    return std::pow(M, static_cast<long double>(r));
  }
  // factor for p2 = inf: M^{1/p1}
  double sup_term(double M) const {
    if (M <= 0.0) return 0.0;
    if (p1_inf) return 1.0;
    return std::pow(M, ip1);
  }
};

std::vector<double> row(const GridFunc& g, size_t j) {
  return std::vector<double>(g.samples.begin() + j * g.xcells(), g.samples.begin() + (j + 1) * g.xcells());
}

}  // namespace

double grid_phi(const GridFunc& g, const ExponentPair& p, double lambda, bool strict) {
  RowTerm T(p);
  long double s = 0.0L;
  double sup = 0.0;
  for (size_t j = 0; j < g.ycells(); ++j) {
    long double M = 0.0L;
    for (size_t i = 0; i < g.xcells(); ++i) {
      double v = g.at(i, j);
      if (strict ? v > lambda : v >= lambda) M += g.wx[i];
    }
    if (T.p2_inf) sup = std::max(sup, T.sup_term(static_cast<double>(M)));
    else s += g.wy[j] * T.sum_term(M);
  }
  if (T.p2_inf) return sup;
  return std::pow(static_cast<double>(s), T.ip2);
}

NormResult grid_mixed_weak(const GridFunc& g, const ExponentPair& p) {
  struct Entry {
    double v;
    size_t i, j;
  };
  std::vector<Entry> es;
  for (size_t j = 0; j < g.ycells(); ++j)
    for (size_t i = 0; i < g.xcells(); ++i)
      if (g.at(i, j) > 0.0) es.push_back({g.at(i, j), i, j});
  NormResult res{0.0, Method::grid_exact, 0.0, std::nullopt};
  if (es.empty()) return res;
  std::sort(es.begin(), es.end(), [](const Entry& a, const Entry& b) { return a.v > b.v; });
  RowTerm T(p);
  std::vector<long double> M(g.ycells(), 0.0L);
  long double S = 0.0L;
  double sup = 0.0;
  for (size_t k = 0; k < es.size();) {
    double v = es[k].v;
    while (k < es.size() && es[k].v == v) {
      const Entry& e = es[k++];
      if (T.p2_inf) {
        M[e.j] += g.wx[e.i];
        sup = std::max(sup, T.sup_term(static_cast<double>(M[e.j])));
      } else {
        S -= g.wy[e.j] * T.sum_term(M[e.j]);
        M[e.j] += g.wx[e.i];
        S += g.wy[e.j] * T.sum_term(M[e.j]);
      }
    }
    double phi = T.p2_inf ? sup : std::pow(static_cast<double>(std::max(S, 0.0L)), T.ip2);
    double cand = v * phi;
    if (cand > res.value) {
      res.value = cand;
      res.maximizing_lambda = v;
    }
  }
  return res;
}

namespace {

NormResult grid_nested(const GridFunc& g, const ExponentPair& p, bool inner_weak, bool outer_weak) {
  std::vector<double> h(g.ycells());
  for (size_t j = 0; j < g.ycells(); ++j) {
    auto r = row(g, j);
    h[j] = inner_weak ? weighted_weak_norm(r, g.wx, p.p1()) : weighted_strong_norm(r, g.wx, p.p1());
  }
  double v = outer_weak ? weighted_weak_norm(h, g.wy, p.p2()) : weighted_strong_norm(h, g.wy, p.p2());
  return {v, Method::grid_exact, 0.0, std::nullopt};
}

}  // namespace

NormResult grid_iterated_weak(const GridFunc& g, const ExponentPair& p) { return grid_nested(g, p, true, true); }
NormResult grid_mixed_norm(const GridFunc& g, const ExponentPair& p) { return grid_nested(g, p, false, false); }
NormResult grid_half_mixed(const GridFunc& g, const ExponentPair& p, HalfVariant v) {
  return v == HalfVariant::outer_strong_inner_weak ? grid_nested(g, p, true, false) : grid_nested(g, p, false, true);
}

namespace {

bool same_nodes(const GridFunc& a, const GridFunc& b) {
  return a.xnodes == b.xnodes && a.ynodes == b.ynodes && a.split_sign == b.split_sign && a.dims.n == b.dims.n &&
         a.dims.m == b.dims.m;
}

// index of the first node >= r when r sits on a node (relative 1e-12), or -1
long node_index(const std::vector<double>& nodes, double r) {
  if (r >= nodes.back()) return static_cast<long>(nodes.size()) - 1;
  for (size_t i = 0; i < nodes.size(); ++i)
    if (std::fabs(nodes[i] - r) <= 1e-12 * std::max(1.0, std::fabs(r))) return static_cast<long>(i);
  return -1;
}

}  // namespace

std::optional<GridFunc> exact_grid(const FuncRep& f) {
  using K = FuncRep::Kind;
  switch (f.kind()) {
    case K::grid: return f.as_grid();
    case K::tensor: {
      const Func1D &a = f.tensor_f(), &b = f.tensor_g();
      if (!a.is_grid() || !b.is_grid()) return std::nullopt;
      const Grid1D &ga = a.grid(), &gb = b.grid();
      std::vector<double> s;
      s.reserve(ga.values.size() * gb.values.size());
      for (double vy : gb.values)
        for (double vx : ga.values) s.push_back(mul0(vx, vy));
      return GridFunc(ga.nodes, gb.nodes, std::move(s), DimPair(ga.n, gb.n));
    }
    case K::scale: {
      auto g = exact_grid(f.left());
      if (!g) return std::nullopt;
      for (auto& v : g->samples) v = mul0(v, f.scalar());
      return g;
    }
    case K::truncate: {
      auto g = exact_grid(f.left());
      if (!g) return std::nullopt;
      double rx = f.truncate_bounds().first, ry = f.truncate_bounds().second;
      long ix = node_index(g->xnodes, rx), iy = node_index(g->ynodes, ry);
      if (ix < 0 || iy < 0) return std::nullopt;
      size_t kx = g->xnodes.size() - 1;
      for (size_t j = 0; j < g->ycells(); ++j)
        for (size_t i = 0; i < g->xcells(); ++i) {
          size_t ii = i >= kx ? i - kx : i;
          if (static_cast<long>(ii) >= ix || static_cast<long>(j) >= iy) g->samples[j * g->xcells() + i] = 0.0;
        }
      return g;
    }
    case K::sum:
    case K::product:
    case K::min:
    case K::max: {
      auto a = exact_grid(f.left()), b = exact_grid(f.right());
      if (!a || !b || !same_nodes(*a, *b)) return std::nullopt;
      for (size_t k = 0; k < a->samples.size(); ++k) {
        double x = a->samples[k], y = b->samples[k];
        switch (f.kind()) {
          case K::sum: x = x + y; break;
          case K::product: x = mul0(x, y); break;
          case K::min: x = std::min(x, y); break;
          default: x = std::max(x, y); break;
        }
        a->samples[k] = x;
      }
      return a;
    }
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------- closed forms

namespace {

struct Shape {
  bool inner_weak, outer_weak;
};

Shape shape_of(Family fam) {
  switch (fam) {
    case Family::iterated: return {true, true};
    case Family::half_strong_weak: return {true, false};
    case Family::half_weak_strong: return {false, true};
    default: return {false, false};
  }
}

double radial(bool weak, double c, double a, double lo, double hi, int n, const Exponent& p) {
  return weak ? power_weak_norm(c, a, lo, hi, n, p) : power_strong_norm(c, a, lo, hi, n, p);
}

bool is_box(const RegionSpec& R) {
  return R.relation == Relation::none && R.x_upper_sub_coeff == 0.0 &&
         (R.x_upper_exp == 0.0 || std::isinf(R.x_upper_coeff));
}

bool is_power_bounded(const RegionSpec& R) {
  return R.relation == Relation::none && R.x_lower == 0.0 && R.x_upper_sub_coeff == 0.0 &&
         std::isfinite(R.x_upper_coeff) && R.x_upper_exp != 0.0;
}

bool is_full(const RegionSpec& R) {
  return is_box(R) && R.x_lower == 0.0 && std::isinf(R.x_upper_coeff) && R.y_lower == 0.0 && std::isinf(R.y_upper);
}

// nested norm of c |x|^a1 |y|^a2 chi_R for box or power-bounded regions
std::optional<double> power_product_nested(const CatalogFunc& f, DimPair d, const ExponentPair& p, Shape s) {
  const RegionSpec& R = f.region;
  if (!(R.y_upper > R.y_lower)) return 0.0;
  if (is_box(R)) {
    double X = R.x_upper_coeff;
    double I = radial(s.inner_weak, 1.0, f.a1, R.x_lower, X, d.n, p.p1());
    if (I == 0.0) return 0.0;
    if (std::isinf(I)) return kInfinity;
    return radial(s.outer_weak, f.c * I, f.a2, R.y_lower, R.y_upper, d.m, p.p2());
  }
  if (is_power_bounded(R)) {
    double K = radial(s.inner_weak, 1.0, f.a1, 0.0, 1.0, d.n, p.p1());
    if (K == 0.0) return 0.0;
    if (std::isinf(K)) return kInfinity;
    double k = f.a1 + d.n * p.p1().recip_value();
    double coeff = f.c * K * std::pow(R.x_upper_coeff, k);
    return radial(s.outer_weak, coeff, f.a2 + R.x_upper_exp * k, R.y_lower, R.y_upper, d.m, p.p2());
  }
  return std::nullopt;
}

std::optional<NormResult> closed(double v) {
  if (std::isinf(v)) return NormResult::infinite(Method::closed_form);
  return NormResult{v, Method::closed_form, 0.0, std::nullopt};
}

std::optional<NormResult> catalog_closed_form(const CatalogFunc& f, DimPair d, const ExponentPair& p, Family fam) {
  const double ip1 = p.p1().recip_value(), ip2 = p.p2().recip_value();
  switch (f.kind) {
    case CatalogKind::power_product: {
      if (fam != Family::mixed_weak) {
        auto v = power_product_nested(f, d, p, shape_of(fam));
        if (v) return closed(*v);
        return std::nullopt;
      }
      if (near_zero(f.a1) && near_zero(f.a2)) {
        // c chi_E: the only level is c
        auto v = power_product_nested(f, d, p, Shape{false, false});
        if (!v) return std::nullopt;
        auto r = closed(*v);
        if (*v > 0.0 && std::isfinite(*v)) r->maximizing_lambda = f.c;
        return r;
      }
      if (is_full(f.region)) {
        if (f.c <= 0.0) return closed(0.0);
        // one variable drops out only when its exponent is inf
        if (near_zero(f.a2) && p.p2().is_inf()) return closed(power_weak_norm(f.c, f.a1, 0.0, kInfinity, d.n, p.p1()));
        if (near_zero(f.a1) && p.p1().is_inf()) return closed(power_weak_norm(f.c, f.a2, 0.0, kInfinity, d.m, p.p2()));
        return closed(kInfinity);
      }
      return std::nullopt;
    }
    case CatalogKind::exp_g: {
      // G = c a^{|y|^m} chi{|x| <= w a^{-p1 |y|^m / n}}; rho = p1(G) / p1(norm)
      const double la = std::log(f.base);
      const double Vn = unit_ball_volume(d.n), Vm = unit_ball_volume(d.m);
      const double rho = f.p1 * ip1;
      const double cell = Vn * std::pow(f.width, d.n);
      if (fam == Family::mixed_weak) {
        if (rho < 1.0 - 1e-12) return closed(kInfinity);
        double v = f.c * std::pow(cell, ip1) * std::pow(Vm, ip2);
        if (!p.p2().is_inf()) v /= std::pow(p.p2().value() * rho * la, ip2);
        auto r = closed(v);
        r->maximizing_lambda = f.c;
        return r;
      }
      if (fam == Family::iterated) {
        // slice weak norm C a^{s (1 - rho)} with s = |y|^m
        if (rho < 1.0 - 1e-12) return closed(kInfinity);
        double C = f.c * std::pow(cell, ip1);
        if (p.p2().is_inf()) return closed(C);
        if (rho <= 1.0 + 1e-12) return closed(kInfinity);
        double k = Vm / ((rho - 1.0) * la);
        return closed(C * std::exp(-ip2) * std::pow(k * ip2, ip2));
      }
      return std::nullopt;
    }
    case CatalogKind::max_power: {
      if (d.n != 1 || d.m != 1 || !is_full(f.region)) return std::nullopt;
      const double g = f.gamma;
      if (fam == Family::mixed_weak) {
        // {f > lambda} is the square max(|x|,|y|) < (c/lambda)^{1/g} / 2
        double beta = (ip1 + ip2) / g;
        if (!near_zero(beta - 1.0)) return closed(kInfinity);
        return closed(f.c);
      }
      if (fam == Family::iterated) {
        double k = ip1 - g;
        if (k > 1e-12) return closed(kInfinity);
        if (near_zero(k)) return closed(p.p2().is_inf() ? f.c : kInfinity);
        // slice weak norm c (2|y|)^{k}
        return closed(power_weak_norm(f.c * std::pow(2.0, k), k, 0.0, kInfinity, 1, p.p2()));
      }
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------- numeric slice engine (n = m = 1)

constexpr int kCellsPerDecade = 40;
constexpr std::array<double, 8> kGLx = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                        0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGLw = {0.1012285362903763, 0.2223810344533745, 0.3137066678684056,
                                        0.3626837833783620, 0.3626837833783620, 0.3137066678684056,
                                        0.2223810344533745, 0.1012285362903763};

// exponents of the test functions are small rationals; snap fitted tail exponents
double snap(double e) {
  if (!std::isfinite(e)) return e;
  for (int q = 1; q <= 64; ++q) {
    double k = std::round(e * q);
    if (std::fabs(e - k / q) < 1e-8) return k / q;
  }
  return e;
}

struct Cell {
  double u0, u1;
  Profile lo, hi;
  double slo, shi;  // slice ess-sups
  std::array<double, 8> y;
  std::array<Profile, 8> s;
  std::array<double, 8> ss;
};

class SliceEngine {
public:
  explicit SliceEngine(const FuncRep& f) : f_(f) {
    YInfo yi = f.y_info();
    if (!(yi.hi > yi.lo)) return;
    double bmin = kInfinity, bmax = 0.0;
    // breaks outside [1e-40, 1e40] are treated as 0 or inf
    if (yi.lo < 1e-40) yi.lo = 0.0;
    if (yi.hi > 1e40) yi.hi = kInfinity;
    for (double b : yi.breaks)
      if (b >= 1e-40 && b <= 1e40) {
        bmin = std::min(bmin, b);
        bmax = std::max(bmax, b);
      }
    if (std::isinf(bmin)) bmin = bmax = 1.0;
    head_ = yi.lo == 0.0;
    tail_ = std::isinf(yi.hi);
    ylo_ = head_ ? std::min(bmin, 1.0) * 1e-6 : yi.lo;
    yhi_ = tail_ ? std::max({bmax, yi.lo, 1.0}) * 1e6 : yi.hi;
    std::vector<double> pts{ylo_, yhi_};
    for (double b : yi.breaks)
      if (b > ylo_ && b < yhi_) pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (size_t k = 0; k + 1 < pts.size(); ++k) {
      double a = std::log(pts[k]), b = std::log(pts[k + 1]);
      if (!(b > a)) continue;
      int nc = std::max(2, static_cast<int>(std::ceil(kCellsPerDecade * (b - a) / std::log(10.0))));
      for (int c = 0; c < nc; ++c) {
        Cell cell;
        cell.u0 = a + (b - a) * c / nc;
        cell.u1 = a + (b - a) * (c + 1) / nc;
        cell.lo = slice(std::exp(cell.u0) * (1 + 1e-12));
        cell.hi = slice(std::exp(cell.u1) * (1 - 1e-12));
        cell.slo = cell.lo.ess_sup();
        cell.shi = cell.hi.ess_sup();
        for (int g = 0; g < 8; ++g) {
          double u = 0.5 * (cell.u0 + cell.u1) + 0.5 * (cell.u1 - cell.u0) * kGLx[g];
          cell.y[g] = std::exp(u);
          cell.s[g] = slice(cell.y[g]);
          cell.ss[g] = cell.s[g].ess_sup();
        }
        cells_.push_back(std::move(cell));
      }
    }
    if (head_) {
      head_a_ = slice(ylo_);
      head_b_ = slice(ylo_ * 10);
    }
    if (tail_) {
      tail_a_ = slice(yhi_ / 10);
      tail_b_ = slice(yhi_);
    }
  }

  bool empty() const { return cells_.empty(); }
  Profile slice(double y) const { return f_.slice(y); }

  // integral over y > 0 of 2 G(slice(y)) dy
  double integrate(const std::function<double(const Profile&)>& G) const {
    long double total = 0.0L;
    for (const auto& c : cells_) {
      double h = 0.5 * (c.u1 - c.u0);
      for (int g = 0; g < 8; ++g) {
        double v = G(c.s[g]);
        if (std::isinf(v)) return kInfinity;
        if (v > 0.0) total += kGLw[g] * v * 2.0 * c.y[g] * h;
      }
    }
    double ends = end_integrals(G(head_a_), G(head_b_), G(tail_a_), G(tail_b_));
    if (std::isinf(ends)) return kInfinity;
    return static_cast<double>(total) + ends;
  }

  // head and tail contributions from power-law extrapolation
  double end_integrals(double ha, double hb, double ta, double tb) const {
    double s = 0.0;
    if (head_ && (ha > 0.0 || hb > 0.0)) {
      if (std::isinf(ha) || std::isinf(hb)) return kInfinity;
      if (ha > 0.0) {
        double e = hb > 0.0 ? snap(std::log(hb / ha) / std::log(10.0)) : 0.0;
        if (e <= -1.0) return kInfinity;
        s += 2.0 * ha * ylo_ / (e + 1.0);
      }
    }
    if (tail_ && (ta > 0.0 || tb > 0.0)) {
      if (std::isinf(ta) || std::isinf(tb)) return kInfinity;
      if (tb > 0.0 && ta > 0.0) {
        double e = snap(std::log(tb / ta) / std::log(10.0));
        if (e >= -1.0) return kInfinity;
        s += 2.0 * tb * yhi_ / (-(e + 1.0));
      } else if (tb > 0.0) {
        return kInfinity;
      }
    }
    return s;
  }

  // sup over sampled y of G, with end growth treated as infinite
  double supremum(const std::function<double(const Profile&)>& G) const {
    double s = 0.0;
    for (const auto& c : cells_) {
      s = std::max({s, G(c.lo), G(c.hi)});
      for (int g = 0; g < 8; ++g) s = std::max(s, G(c.s[g]));
    }
    if (head_) {
      double a = G(head_a_), b = G(head_b_);
      if (a > b * (1 + 1e-9)) return kInfinity;
      s = std::max(s, a);
    }
    if (tail_) {
      double a = G(tail_a_), b = G(tail_b_);
      if (b > a * (1 + 1e-9)) return kInfinity;
      s = std::max(s, b);
    }
    return s;
  }

  // step profile in y of h = G(slice), log-linear between cell ends
  std::optional<Profile> outer_profile(const std::function<double(const Profile&)>& G) const {
    Profile prof;
    for (const auto& c : cells_) {
      double a = G(c.lo), b = G(c.hi);
      if (std::isinf(a) || std::isinf(b)) return std::nullopt;
      double y0 = std::exp(c.u0), y1 = std::exp(c.u1);
      if (a > 0.0 && b > 0.0) {
        double e = std::log(b / a) / (c.u1 - c.u0);
        prof.add(Piece{y0, y1, a * std::pow(y0, -e), e, 0.0, 0.0, 0.0, 2.0});
      } else {
        double m = G(c.s[3]);
        if (std::isinf(m)) return std::nullopt;
        if (m > 0.0) prof.add(Piece{y0, y1, m, 0.0, 0.0, 0.0, 0.0, 2.0});
      }
    }
    if (head_) {
      double a = G(head_a_), b = G(head_b_);
      if (std::isinf(a) || std::isinf(b)) return std::nullopt;
      if (a > 0.0 && b > 0.0) {
        double e = snap(std::log(b / a) / std::log(10.0));
        prof.add(Piece{0.0, ylo_, a * std::pow(ylo_, -e), e, 0.0, 0.0, 0.0, 2.0});
      }
    }
    if (tail_) {
      double a = G(tail_a_), b = G(tail_b_);
      if (std::isinf(a) || std::isinf(b)) return std::nullopt;
      if (a > 0.0 && b > 0.0) {
        double e = snap(std::log(b / a) / std::log(10.0));
        prof.add(Piece{yhi_, kInfinity, b * std::pow(yhi_, -e), e, 0.0, 0.0, 0.0, 2.0});
      }
    }
    return prof;
  }

  // Phi(lambda)^{p2} (finite p2) or Phi (p2 = inf)
  double phi(double lambda, const ExponentPair& p) const {
    RowTerm T(p);
    auto m_of = [&](const Profile& s) { return s.measure_gt(lambda); };
    if (T.p2_inf) {
      return supremum([&](const Profile& s) {
        double m = m_of(s);
        return std::isinf(m) ? kInfinity : T.sup_term(m);
      });
    }
    auto term = [&](double m) -> double {
      if (std::isinf(m)) return kInfinity;
      return static_cast<double>(T.sum_term(m));
    };
    long double total = 0.0L;
    for (const auto& c : cells_) {
      bool in_lo = c.slo > lambda, in_hi = c.shi > lambda;
      double h = 0.5 * (c.u1 - c.u0);
      if (in_lo == in_hi) {
        bool any = in_lo;
        for (int g = 0; g < 8 && !any; ++g) any = c.ss[g] > lambda;
        if (!any) continue;
        for (int g = 0; g < 8; ++g) {
          double v = term(m_of(c.s[g]));
          if (std::isinf(v)) return kInfinity;
          total += kGLw[g] * v * 2.0 * c.y[g] * h;
        }
        continue;
      }
      // support boundary inside the cell
      double a = c.u0, b = c.u1;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (a + b);
        bool in = slice(std::exp(mid)).ess_sup() > lambda;
        (in == in_lo ? a : b) = mid;
      }
      double us = 0.5 * (a + b);
      double part = graded(c.u0, us, true, lambda, term) + graded(us, c.u1, false, lambda, term);
      if (std::isinf(part)) return kInfinity;
      total += part;
    }
    double ends = 0.0;
    if (head_) ends += walk(ylo_, -1, lambda, term);
    if (tail_ && !std::isinf(ends)) ends += walk(yhi_, +1, lambda, term);
    if (std::isinf(ends)) return kInfinity;
    return static_cast<double>(total) + ends;
  }

  // value range of the function over the sampled slices
  std::pair<double, double> value_range() const {
    double lo = kInfinity, hi = 0.0;
    auto visit = [&](const Profile& s) {
      for (const auto& pc : s.pieces())
        for (double v : {pc.value_lo(), pc.value_hi()}) {
          if (v > 0.0 && std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
        }
    };
    for (const auto& c : cells_) {
      visit(c.lo);
      visit(c.hi);
      for (const auto& s : c.s) visit(s);
    }
    for (const Profile* s : {&head_a_, &head_b_, &tail_a_, &tail_b_}) visit(*s);
    return {lo, hi};
  }

private:
  // integral of 2 term(m(y)) dy over [e^a, e^b] with GL8 panels on fresh slices
  double panels(double a, double b, int n, double lambda, const std::function<double(double)>& term) const {
    long double total = 0.0L;
    for (int k = 0; k < n; ++k) {
      double lo = a + (b - a) * k / n, hi = a + (b - a) * (k + 1) / n;
      double h = 0.5 * (hi - lo);
      for (int g = 0; g < 8; ++g) {
        double y = std::exp(0.5 * (lo + hi) + h * kGLx[g]);
        double v = term(slice(y).measure_gt(lambda));
        if (std::isinf(v)) return kInfinity;
        total += kGLw[g] * v * 2.0 * y * h;
      }
    }
    return static_cast<double>(total);
  }

  // Continue the y-integral past the cached range decade by decade until the
  // support ends or the decade integrals settle into a geometric series.
  double walk(double y0, int dir, double lambda, const std::function<double(double)>& term) const {
    const double L10 = std::log(10.0);
    std::vector<double> I;
    long double total = 0.0L;
    double u = std::log(y0);
    bool in = slice(y0).ess_sup() > lambda;
    int zeros = 0;
    for (int k = 0; k < 80; ++k) {
      double un = u + dir * L10;
      bool in_next = slice(std::exp(un)).ess_sup() > lambda;
      double lo = std::min(u, un), hi = std::max(u, un);
      double Ik;
      if (in != in_next) {
        bool in_lo = dir > 0 ? in : in_next;
        double a = lo, b = hi;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (a + b);
          bool m = slice(std::exp(mid)).ess_sup() > lambda;
          (m == in_lo ? a : b) = mid;
        }
        double us = 0.5 * (a + b);
        Ik = graded(lo, us, true, lambda, term) + graded(us, hi, false, lambda, term);
      } else {
        Ik = panels(lo, hi, 2, lambda, term);
      }
      if (std::isinf(Ik)) return kInfinity;
      total += Ik;
      I.push_back(Ik);
      u = un;
      in = in_next;
      zeros = Ik == 0.0 ? zeros + 1 : 0;
      if (zeros >= 3 && !in) {
        // outside the support: jump ahead if the slice sup climbs toward lambda
        double s1 = slice(std::exp(u)).ess_sup(), s0 = slice(std::exp(u - dir * L10)).ess_sup();
        if (!(s1 > s0 * (1.0 + 1e-9)) || !std::isfinite(s1) || s0 <= 0.0) break;
        double K = std::log(lambda / s1) / std::log(s1 / s0);
        if (u + dir * K * L10 > 690.0 || u + dir * K * L10 < -690.0) break;
        if (!(K >= 2.0)) {
          // support is close: keep stepping
          zeros = 0;
          continue;
        }
        u += dir * (std::floor(K) - 1.0) * L10;
        in = slice(std::exp(u)).ess_sup() > lambda;
        zeros = 0;
        I.clear();
        continue;
      }
      size_t n = I.size();
      if (in && n >= 4 && I[n - 1] > 0.0 && I[n - 2] > 0.0 && I[n - 3] > 0.0 && I[n - 4] > 0.0) {
        double r1 = I[n - 1] / I[n - 2], r2 = I[n - 2] / I[n - 3], r3 = I[n - 3] / I[n - 4];
        if (std::fabs(r1 - r2) <= 1e-6 * r1 && std::fabs(r2 - r3) <= 1e-6 * r2) {
          // if the slice sup decays toward lambda, skip ahead to just before
          // the support ends instead of summing the series to infinity
          double s1 = slice(std::exp(u)).ess_sup(), s0 = slice(std::exp(u - dir * L10)).ess_sup();
          double K = 0.0;
          if (in && std::isfinite(s0) && std::isfinite(s1) && s1 < s0 * (1.0 - 1e-9))
            K = std::log(s1 / lambda) / std::log(s0 / s1);
          if (K >= 3.0) {
            double J = std::floor(K) - 2.0;
            double skip = std::fabs(r1 - 1.0) < 1e-12 ? J : r1 * (std::pow(r1, J) - 1.0) / (r1 - 1.0);
            total += I[n - 1] * skip;
            if (std::isinf(static_cast<double>(total))) return kInfinity;
            u += dir * J * L10;
            in = slice(std::exp(u)).ess_sup() > lambda;
            I.clear();
            continue;
          }
          if (K > 0.0) continue;
          if (r1 >= 1.0 - 1e-7) return kInfinity;
          total += I[n - 1] * r1 / (1.0 - r1);
          break;
        }
      }
    }
    return static_cast<double>(total);
  }

  // GL8 on geometrically graded panels that cluster at the support boundary
  double graded(double a, double b, bool toward_b, double lambda, const std::function<double(double)>& term) const {
    long double total = 0.0L;
    double len = b - a;
    double edge = toward_b ? b : a;
    double dir = toward_b ? -1.0 : 1.0;
    double d_hi = len;
    for (int level = 0; level < 12 && d_hi > 0.0; ++level) {
      double d_lo = level == 11 ? 0.0 : d_hi * 0.5;
      double p0 = edge + dir * d_lo, p1 = edge + dir * d_hi;
      double lo = std::min(p0, p1), hi = std::max(p0, p1);
      double h = 0.5 * (hi - lo);
      for (int g = 0; g < 8; ++g) {
        double u = 0.5 * (lo + hi) + h * kGLx[g];
        double y = std::exp(u);
        double v = term(slice(y).measure_gt(lambda));
        if (std::isinf(v)) return kInfinity;
        total += kGLw[g] * v * 2.0 * y * h;
      }
      d_hi = d_lo;
    }
    return static_cast<double>(total);
  }

  FuncRep f_;
  std::vector<Cell> cells_;
  bool head_ = false, tail_ = false;
  double ylo_ = 0.0, yhi_ = 0.0;
  Profile head_a_, head_b_, tail_a_, tail_b_;
};

double slice_norm(const Profile& s, const Exponent& p, bool weak) {
  return weak ? s.weak_norm(p).value : s.strong_norm(p);
}

NormResult numeric_nested(const FuncRep& f, const ExponentPair& p, Shape sh) {
  SliceEngine E(f);
  if (E.empty()) return {0.0, Method::lambda_search, 0.0, std::nullopt};
  auto h = [&](const Profile& s) { return slice_norm(s, p.p1(), sh.inner_weak); };
  double v;
  double rel_err;
  if (sh.outer_weak) {
    auto prof = E.outer_profile(h);
    if (!prof) return NormResult::infinite(Method::lambda_search);
    v = prof->weak_norm(p.p2(), 2).value;
    rel_err = 1e-4;
  } else if (p.p2().is_inf()) {
    v = E.supremum(h);
    rel_err = 1e-4;
  } else {
    double P = p.p2().value();
    double I = E.integrate([&](const Profile& s) {
      double x = h(s);
      return std::isinf(x) ? kInfinity : std::pow(x, P);
    });
    v = std::isinf(I) ? kInfinity : std::pow(I, 1.0 / P);
    rel_err = 1e-6;
  }
  if (std::isinf(v) || v > 1e150) return NormResult::infinite(Method::lambda_search);
  return {v, Method::lambda_search, rel_err * v, std::nullopt};
}

double phi_value(const SliceEngine& E, double lambda, const ExponentPair& p) {
  double q = E.phi(lambda, p);
  if (p.p2().is_inf() || std::isinf(q)) return q;
  return std::pow(q, p.p2().recip_value());
}

NormResult numeric_mixed_weak(const FuncRep& f, const ExponentPair& p) {
  SliceEngine E(f);
  if (E.empty()) return {0.0, Method::lambda_search, 0.0, std::nullopt};
  auto [vlo, vhi] = E.value_range();
  if (!(vhi > 0.0)) return {0.0, Method::lambda_search, 0.0, std::nullopt};
  double lmin = std::max(vlo / 1e3, 1e-30), lmax = std::min(vhi * 1e3, 1e30);
  if (lmax / lmin > 1e60) lmin = lmax * 1e-60;
  constexpr int kGrid = 512;
  std::vector<double> lam(kGrid), val(kGrid);
  const double a = std::log(lmin), b = std::log(lmax);
  for (int i = 0; i < kGrid; ++i) {
    lam[i] = std::exp(a + (b - a) * i / (kGrid - 1));
    double ph = phi_value(E, lam[i], p);
    if (std::isinf(ph)) return NormResult::infinite(Method::lambda_search);
    val[i] = lam[i] * ph;
    if (val[i] > 1e150) return NormResult::infinite(Method::lambda_search);
  }
  int best = static_cast<int>(std::max_element(val.begin(), val.end()) - val.begin());
  if (val[best] == 0.0) return {0.0, Method::lambda_search, 0.0, std::nullopt};
  // still growing at an end of the level range across three decades
  const int dec3 = static_cast<int>(std::ceil(3.0 * std::log(10.0) / ((b - a) / (kGrid - 1))));
  if (best == kGrid - 1 && dec3 < kGrid && val[best] > val[kGrid - 1 - dec3] * (1 + 1e-2))
    return NormResult::infinite(Method::lambda_search);
  if (best == 0 && dec3 < kGrid && val[0] > val[dec3] * (1 + 1e-2))
    return NormResult::infinite(Method::lambda_search);
  double ul = std::log(lam[std::max(best - 1, 0)]), uh = std::log(lam[std::min(best + 1, kGrid - 1)]);
  auto F = [&](double u) {
    double l = std::exp(u);
    double ph = phi_value(E, l, p);
    return std::isinf(ph) ? kInfinity : l * ph;
  };
  double us = quad::golden_max(F, ul, uh, 1e-6 * std::max(1.0, std::fabs(ul)));
  double vs = F(us);
  NormResult r{val[best], Method::lambda_search, 0.0, lam[best]};
  if (vs > r.value) {
    r.value = vs;
    r.maximizing_lambda = std::exp(us);
  }
  // bracket-width times local slope plus quadrature level
  double neighbor = std::max(val[std::max(best - 1, 0)], val[std::min(best + 1, kGrid - 1)]);
  r.err_bound = std::fabs(r.value - neighbor) * 1e-3 + 1e-6 * r.value;
  return r;
}

// ---------------------------------------------------------------- sampling fallback

NormResult from_grid(const GridFunc& g, const ExponentPair& p, Family fam) {
  switch (fam) {
    case Family::mixed: return grid_mixed_norm(g, p);
    case Family::mixed_weak: return grid_mixed_weak(g, p);
    case Family::iterated: return grid_iterated_weak(g, p);
    case Family::half_strong_weak: return grid_half_mixed(g, p, HalfVariant::outer_strong_inner_weak);
    case Family::half_weak_strong: return grid_half_mixed(g, p, HalfVariant::outer_weak_inner_strong);
  }
  return {};
}

NormResult sampled(const FuncRep& f, const ExponentPair& p, Family fam) {
  NormResult fine = from_grid(sample_default(f, 512), p, fam);
  NormResult coarse = from_grid(sample_default(f, 256), p, fam);
  fine.err_bound = std::fabs(fine.value - coarse.value);
  return fine;
}

Method combine(Method a, Method b) {
  if (a == b) return a;
  return Method::lambda_search;
}

// f = c chi_A with |A| = m
bool single_valued(const Func1D& f, double& c, double& m) {
  c = 0.0;
  long double w = 0.0L;
  auto take = [&](double v, double wt) {
    if (v == 0.0 || wt == 0.0) return true;
    if (c != 0.0 && v != c) return false;
    c = v;
    w += wt;
    return true;
  };
  if (f.is_grid()) {
    const auto& g = f.grid();
    auto ws = g.weights();
    for (size_t i = 0; i < g.values.size(); ++i)
      if (!take(g.values[i], ws[i])) return false;
  } else {
    for (const auto& q : f.profile().pieces())
      if (!q.constant() || !take(q.c, q.w * (q.t1 - q.t0))) return false;
  }
  m = static_cast<double>(w);
  return true;
}

NormResult compute(const FuncRep& f, const ExponentPair& p, Family fam) {
  using K = FuncRep::Kind;
  if (f.kind() == K::scale) {
    NormResult r = compute(f.left(), p, fam);
    double k = f.scalar();
    if (k == 0.0) return {0.0, r.method, 0.0, std::nullopt};
    r.value = mul0(r.value, k);
    r.err_bound = mul0(r.err_bound, k);
    if (r.maximizing_lambda) *r.maximizing_lambda *= k;
    return r;
  }
  if (auto g = exact_grid(f)) return from_grid(*g, p, fam);
  if (f.kind() == K::tensor && fam != Family::mixed_weak) {
    Shape s = shape_of(fam);
    NormResult a = s.inner_weak ? weak_norm_1d(f.tensor_f(), p.p1()) : strong_norm_1d(f.tensor_f(), p.p1());
    NormResult b = s.outer_weak ? weak_norm_1d(f.tensor_g(), p.p2()) : strong_norm_1d(f.tensor_g(), p.p2());
    double v = mul0(a.value, b.value);
    if (std::isinf(v)) return NormResult::infinite(combine(a.method, b.method));
    return {v, combine(a.method, b.method), a.err_bound * b.value + b.err_bound * a.value, std::nullopt};
  }
  if (f.kind() == K::tensor && fam == Family::mixed_weak) {
    // c chi_A (x) g: {f > lambda} = A x {g > lambda / c}, and symmetrically
    double c, m;
    if (single_valued(f.tensor_f(), c, m)) {
      NormResult b = weak_norm_1d(f.tensor_g(), p.p2());
      double k = c * std::pow(m, p.p1().recip_value());
      if (m == 0.0 || c == 0.0) return {0.0, Method::closed_form, 0.0, std::nullopt};
      if (std::isinf(b.value)) return NormResult::infinite(b.method);
      return {k * b.value, b.method, k * b.err_bound, std::nullopt};
    }
    if (single_valued(f.tensor_g(), c, m)) {
      NormResult a = weak_norm_1d(f.tensor_f(), p.p1());
      double k = c * std::pow(m, p.p2().recip_value());
      if (m == 0.0 || c == 0.0) return {0.0, Method::closed_form, 0.0, std::nullopt};
      if (std::isinf(a.value)) return NormResult::infinite(a.method);
      return {k * a.value, a.method, k * a.err_bound, std::nullopt};
    }
  }
  if (f.kind() == K::catalog) {
    if (auto r = catalog_closed_form(f.as_catalog(), f.dims(), p, fam)) return *r;
  }
  if (f.has_profile()) {
    if (fam == Family::mixed_weak) return numeric_mixed_weak(f, p);
    return numeric_nested(f, p, shape_of(fam));
  }
  if (f.kind() == K::catalog && (f.dims().n != 1 || f.dims().m != 1))
    throw Error(ErrorCode::UnsupportedDimension, "numeric norms of catalog functions need n = m = 1");
  return sampled(f, p, fam);
}

bool single_power(const Profile& pr, Piece& out) {
  if (pr.pieces().size() != 1) return false;
  const Piece& pc = pr.pieces().front();
  if (pc.b != 0.0 || (pc.e != 0.0 && pc.d != 0.0) || pc.w != 2.0) return false;
  out = pc;
  out.a += out.e;
  return true;
}

bool all_constant(const Profile& pr) {
  for (const auto& pc : pr.pieces())
    if (!pc.constant()) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------- public entry points

NormResult strong_norm_1d(const Func1D& f, const Exponent& p) {
  if (f.is_grid()) {
    const auto& g = f.grid();
    return {weighted_strong_norm(g.values, g.weights(), p), Method::grid_exact, 0.0, std::nullopt};
  }
  const Profile& pr = f.profile();
  Piece pc;
  if (single_power(pr, pc)) {
    double v = power_strong_norm(pc.c, pc.a, pc.t0, pc.t1, 1, p);
    return std::isinf(v) ? NormResult::infinite(Method::closed_form) : NormResult{v, Method::closed_form, 0.0, {}};
  }
  double v = pr.strong_norm(p);
  bool exact = true;
  for (const auto& q : pr.pieces()) exact = exact && q.b == 0.0 && (q.e == 0.0 || q.d == 0.0);
  Method m = exact ? Method::closed_form : Method::lambda_search;
  if (std::isinf(v)) return NormResult::infinite(m);
  return {v, m, exact ? 0.0 : 1e-10 * v, std::nullopt};
}

NormResult weak_norm_1d(const Func1D& f, const Exponent& p) {
  if (f.is_grid()) {
    const auto& g = f.grid();
    return {weighted_weak_norm(g.values, g.weights(), p), Method::grid_exact, 0.0, std::nullopt};
  }
  const Profile& pr = f.profile();
  Piece pc;
  if (single_power(pr, pc)) {
    double v = power_weak_norm(pc.c, pc.a, pc.t0, pc.t1, 1, p);
    return std::isinf(v) ? NormResult::infinite(Method::closed_form) : NormResult{v, Method::closed_form, 0.0, {}};
  }
  if (all_constant(pr)) {
    std::vector<double> vals, ws;
    for (const auto& q : pr.pieces()) {
      vals.push_back(q.c);
      ws.push_back(q.w * (q.t1 - q.t0));
    }
    double v = weighted_weak_norm(vals, ws, p);
    if (std::isinf(v)) return NormResult::infinite(Method::closed_form);
    return {v, Method::closed_form, 0.0, std::nullopt};
  }
  WeakSup w = pr.weak_norm(p);
  if (std::isinf(w.value)) return NormResult::infinite(Method::lambda_search);
  NormResult r{w.value, Method::lambda_search, 1e-9 * w.value, std::nullopt};
  if (w.lambda > 0.0) r.maximizing_lambda = w.lambda;
  return r;
}

NormResult mixed_norm(const FuncRep& f, const ExponentPair& p) { return compute(f, p, Family::mixed); }
NormResult mixed_weak_norm(const FuncRep& f, const ExponentPair& p) { return compute(f, p, Family::mixed_weak); }
NormResult iterated_weak_norm(const FuncRep& f, const ExponentPair& p) { return compute(f, p, Family::iterated); }
NormResult half_mixed_norm(const FuncRep& f, const ExponentPair& p, HalfVariant v) {
  return compute(f, p, v == HalfVariant::outer_strong_inner_weak ? Family::half_strong_weak : Family::half_weak_strong);
}

SuperlevelProfile distribution_curve(const FuncRep& f, const ExponentPair& p, const std::vector<double>& lambdas) {
  for (size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda values must be positive");
    if (i > 0 && lambdas[i] < lambdas[i - 1]) throw Error(ErrorCode::InvalidArgument, "lambda values must be sorted");
  }
  SuperlevelProfile out;
  out.lambda = lambdas;
  std::function<double(double)> phi;
  bool exact = false;
  std::optional<GridFunc> g = exact_grid(f);
  std::optional<SliceEngine> E;
  if (g) {
    exact = true;
    phi = [&](double l) { return grid_phi(*g, p, l); };
  } else if (f.has_profile()) {
    E.emplace(f);
    phi = [&](double l) { return E->empty() ? 0.0 : phi_value(*E, l, p); };
  } else {
    g = sample_default(f);
    phi = [&](double l) { return grid_phi(*g, p, l); };
  }
  for (double l : lambdas) {
    double v = phi(l);
    // superlevel sets are nested; clamp quadrature noise
    if (!out.phi.empty()) v = std::min(v, out.phi.back());
    out.phi.push_back(v);
    out.exact.push_back(exact);
  }
  return out;
}

double truncated_distance(const FuncRep& f, const FuncRep& g, double lambda, const ExponentPair& p) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  bool g_zero = g.kind() == FuncRep::Kind::scale && g.scalar() == 0.0;
  if (g_zero) return distribution_curve(f, p, {lambda}).phi.front();
  auto a = exact_grid(f), b = exact_grid(g);
  if (!a || !b || !same_nodes(*a, *b)) {
    auto nodes = geometric_nodes(512, 1e-6, 1e6);
    a = sample_to_grid(f, nodes, nodes, f.dims());
    b = sample_to_grid(g, nodes, nodes, f.dims());
    if (a->split_sign != b->split_sign) throw Error(ErrorCode::InvalidArgument, "sign layouts differ");
  }
  for (size_t k = 0; k < a->samples.size(); ++k) a->samples[k] = std::fabs(a->samples[k] - b->samples[k]);
  return grid_phi(*a, p, lambda);
}

}  // namespace mixnorm
