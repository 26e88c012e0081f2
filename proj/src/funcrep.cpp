#include "mixnorm/funcrep.hpp"

#include <algorithm>
#include <cmath>

namespace mixnorm {

// ---------------------------------------------------------------- regions

RegionSpec RegionSpec::box(double rx, double ry) {
  RegionSpec r;
  r.x_upper_coeff = rx;
  r.y_upper = ry;
  return r;
}

double RegionSpec::x_low(double ry) const {
  double lo = x_lower;
  if (relation == Relation::y_le_x) lo = std::max(lo, ry);
  if (relation == Relation::two_y_le_x) lo = std::max(lo, 2.0 * ry);
  return lo;
}

namespace {

double coeff_power(double A, double ry, double s) {
  if (A == 0.0) return 0.0;
  if (std::isinf(A)) return kInfinity;
  if (s == 0.0) return A;
  if (ry == 0.0) return s < 0 ? kInfinity : 0.0;
  return A * std::pow(ry, s);
}

}  // namespace

double RegionSpec::x_high(double ry) const {
  double hi = coeff_power(x_upper_coeff, ry, x_upper_exp);
  if (x_upper_sub_coeff != 0.0 && std::isfinite(hi)) hi -= coeff_power(x_upper_sub_coeff, ry, x_upper_sub_exp);
  return hi;
}

bool RegionSpec::contains(double rx, double ry) const {
  if (ry < y_lower || ry > y_upper) return false;
  return rx >= x_low(ry) && rx <= x_high(ry);
}

RegionSpec RegionSpec::dilated(double R) const {
  RegionSpec r = *this;
  r.x_lower *= R;
  if (std::isfinite(x_upper_coeff)) r.x_upper_coeff = x_upper_coeff * std::pow(R, 1.0 - x_upper_exp);
  r.x_upper_sub_coeff = x_upper_sub_coeff * std::pow(R, 1.0 - x_upper_sub_exp);
  r.y_lower *= R;
  r.y_upper *= R;
  return r;
}

// ---------------------------------------------------------------- catalog

CatalogFunc CatalogFunc::power_product(double c, double a1, double a2, RegionSpec r) {
  CatalogFunc f;
  f.kind = CatalogKind::power_product;
  f.c = c;
  f.a1 = a1;
  f.a2 = a2;
  f.region = r;
  return f;
}

CatalogFunc CatalogFunc::sum_power(double gamma, RegionSpec r, double c) {
  CatalogFunc f;
  f.kind = CatalogKind::sum_power;
  f.gamma = gamma;
  f.region = r;
  f.c = c;
  return f;
}

CatalogFunc CatalogFunc::max_power(double gamma, RegionSpec r, double c) {
  CatalogFunc f;
  f.kind = CatalogKind::max_power;
  f.gamma = gamma;
  f.region = r;
  f.c = c;
  return f;
}

CatalogFunc CatalogFunc::exp_g(double base, double p1) {
  if (!(base > 1.0)) throw Error(ErrorCode::InvalidArgument, "exp_g needs base > 1");
  CatalogFunc f;
  f.kind = CatalogKind::exp_g;
  f.base = base;
  f.p1 = p1;
  return f;
}

CatalogFunc CatalogFunc::log_damped(double gamma, double q1, double box) {
  CatalogFunc f;
  f.kind = CatalogKind::log_damped;
  f.gamma = gamma;
  f.q1 = q1;
  f.region = RegionSpec::box(box, box);
  return f;
}

CatalogFunc CatalogFunc::shift_power(double c, double a, RegionSpec r) {
  CatalogFunc f;
  f.kind = CatalogKind::shift_power;
  f.c = c;
  f.a1 = a;
  f.region = r;
  return f;
}

namespace {

void add_shift_pieces(Profile& prof, double xl, double xu, double ry, Piece proto) {
  auto push = [&](double t0, double t1) {
    if (t1 > t0) {
      Piece p = proto;
      p.t0 = t0;
      p.t1 = t1;
      p.w = 1.0;
      prof.add(p);
    }
  };
  if (ry <= xl) {
    push(xl - ry, xu - ry);
  } else if (ry >= xu) {
    push(ry - xu, ry - xl);
  } else {
    push(0.0, ry - xl);
    push(0.0, xu - ry);
  }
  push(ry + xl, ry + xu);
}

double pow_or(double base, double e) {
  if (e == 0.0) return 1.0;
  if (base == 0.0) return e > 0 ? 0.0 : kInfinity;
  return std::pow(base, e);
}

Profile catalog_slice(const CatalogFunc& f, double ry) {
  Profile prof;
  const RegionSpec& R = f.region;
  if (ry < R.y_lower || ry > R.y_upper) return prof;
  double xl = R.x_low(ry), xu = R.x_high(ry);
  if (!(xu > xl)) return prof;
  switch (f.kind) {
    case CatalogKind::power_product: {
      double c = f.c * pow_or(ry, f.a2);
      if (!(c > 0.0) || !std::isfinite(c)) return prof;
      prof.add(Piece{xl, xu, c, f.a1, 0.0, 0.0, 0.0, 2.0});
      break;
    }
    case CatalogKind::sum_power: {
      prof.add(Piece{xl, xu, f.c, 0.0, ry, -f.gamma, 0.0, 2.0});
      break;
    }
    case CatalogKind::max_power: {
      double mid = std::clamp(ry, xl, xu);
      if (mid > xl) {
        double v = f.c * pow_or(2.0 * ry, -f.gamma);
        if (std::isfinite(v)) prof.add(Piece{xl, mid, v, 0.0, 0.0, 0.0, 0.0, 2.0});
      }
      if (xu > mid) prof.add(Piece{mid, xu, f.c * std::pow(2.0, -f.gamma), -f.gamma, 0.0, 0.0, 0.0, 2.0});
      break;
    }
    case CatalogKind::exp_g: {
      double top = std::min(xu, f.width * std::pow(f.base, -f.p1 * ry));
      double v = f.c * std::pow(f.base, ry);
      if (top > xl && std::isfinite(v)) prof.add(Piece{xl, top, v, 0.0, 0.0, 0.0, 0.0, 2.0});
      break;
    }
    case CatalogKind::log_damped: {
      Piece proto{0, 0, f.c, f.gamma - 1.0 / f.q1, 0.0, 0.0, -1.0 / f.q1, 1.0};
      add_shift_pieces(prof, xl, xu, ry, proto);
      break;
    }
    case CatalogKind::shift_power: {
      Piece proto{0, 0, f.c, f.a1, 0.0, 0.0, 0.0, 1.0};
      add_shift_pieces(prof, xl, xu, ry, proto);
      break;
    }
  }
  return prof;
}

double catalog_eval(const CatalogFunc& f, double rx, double ry, SignRegime regime) {
  if (!f.region.contains(rx, ry)) return 0.0;
  switch (f.kind) {
    case CatalogKind::power_product:
      return f.c * pow_or(rx, f.a1) * pow_or(ry, f.a2);
    case CatalogKind::sum_power:
      return f.c * pow_or(rx + ry, -f.gamma);
    case CatalogKind::max_power:
      return f.c * pow_or(2.0 * std::max(rx, ry), -f.gamma);
    case CatalogKind::exp_g:
      return rx <= f.width * std::pow(f.base, -f.p1 * ry) ? f.c * std::pow(f.base, ry) : 0.0;
    case CatalogKind::log_damped: {
      double t = regime == SignRegime::same ? std::fabs(rx - ry) : rx + ry;
      double l = std::fabs(std::log(t));
      return f.c * pow_or(t, f.gamma - 1.0 / f.q1) * pow_or(l, -1.0 / f.q1);
    }
    case CatalogKind::shift_power: {
      double t = regime == SignRegime::same ? std::fabs(rx - ry) : rx + ry;
      return f.c * pow_or(t, f.a1);
    }
  }
  return 0.0;
}

CatalogFunc catalog_dilated(const CatalogFunc& f, double R) {
  CatalogFunc g = f;
  g.region = f.region.dilated(R);
  switch (f.kind) {
    case CatalogKind::power_product:
      g.c = f.c * std::pow(R, -f.a1 - f.a2);
      break;
    case CatalogKind::sum_power:
    case CatalogKind::max_power:
      g.c = f.c * std::pow(R, f.gamma);
      break;
    case CatalogKind::exp_g:
      g.base = std::pow(f.base, 1.0 / R);
      g.width = f.width * R;
      break;
    case CatalogKind::shift_power:
      g.c = f.c * std::pow(R, -f.a1);
      break;
    case CatalogKind::log_damped:
      throw Error(ErrorCode::InvalidArgument, "log_damped is not closed under dilation");
  }
  return g;
}

YInfo catalog_yinfo(const CatalogFunc& f) {
  YInfo y;
  y.lo = f.region.y_lower;
  y.hi = f.region.y_upper;
  for (double v : {f.region.y_lower, f.region.y_upper, f.region.x_lower})
    if (v > 0 && std::isfinite(v)) y.breaks.push_back(v);
  if (f.kind == CatalogKind::log_damped) y.breaks.push_back(1.0);
  return y;
}

}  // namespace

// ---------------------------------------------------------------- grids

GridFunc::GridFunc(std::vector<double> xn, std::vector<double> yn, std::vector<double> s, DimPair d,
                   bool split)
    : xnodes(std::move(xn)), ynodes(std::move(yn)), split_sign(split), samples(std::move(s)), dims(d) {
  if (xnodes.size() < 2 || ynodes.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "grid needs at least one cell per axis");
  auto weights = [](const std::vector<double>& nodes, int dim) {
    std::vector<double> w;
    double v = unit_ball_volume(dim);
    for (size_t i = 0; i + 1 < nodes.size(); ++i) {
      if (!(nodes[i + 1] > nodes[i])) throw Error(ErrorCode::InvalidArgument, "grid nodes must increase");
      w.push_back(v * (std::pow(nodes[i + 1], dim) - std::pow(nodes[i], dim)));
    }
    return w;
  };
  wx = weights(xnodes, dims.n);
  wy = weights(ynodes, dims.m);
  if (split_sign) {
    size_t k = wx.size();
    wx.resize(2 * k);
    for (size_t i = 0; i < k; ++i) {
      wx[i] *= 0.5;
      wx[k + i] = wx[i];
    }
  }
  if (samples.size() != wx.size() * wy.size())
    throw Error(ErrorCode::InvalidArgument, "grid sample count does not match cells");
  for (double v : samples)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw Error(ErrorCode::NonFiniteSample, "grid samples must be finite and nonnegative");
}

double GridFunc::xmid(size_t i) const {
  size_t k = xnodes.size() - 1;
  if (i >= k) i -= k;
  return 0.5 * (xnodes[i] + xnodes[i + 1]);
}

double GridFunc::ymid(size_t j) const { return 0.5 * (ynodes[j] + ynodes[j + 1]); }

std::vector<double> Grid1D::weights() const {
  std::vector<double> w;
  double v = unit_ball_volume(n);
  for (size_t i = 0; i + 1 < nodes.size(); ++i) w.push_back(v * (std::pow(nodes[i + 1], n) - std::pow(nodes[i], n)));
  return w;
}

std::vector<double> geometric_nodes(size_t cells, double lo, double hi) {
  if (cells < 2 || !(hi > lo) || !(lo > 0)) throw Error(ErrorCode::InvalidArgument, "bad geometric grid");
  std::vector<double> n{0.0};
  size_t k = cells - 1;
  for (size_t i = 0; i <= k; ++i) n.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / k));
  n.back() = hi;
  return n;
}

std::vector<double> uniform_nodes(size_t cells, double hi) {
  std::vector<double> n;
  for (size_t i = 0; i <= cells; ++i) n.push_back(hi * static_cast<double>(i) / cells);
  return n;
}

namespace {

size_t find_cell(const std::vector<double>& nodes, double r) {
  // returns nodes.size()-1 when outside
  if (r < nodes.front() || r >= nodes.back()) return nodes.size() - 1;
  auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
  return static_cast<size_t>(it - nodes.begin()) - 1;
}

}  // namespace

// ---------------------------------------------------------------- Func1D

Func1D Func1D::power(double c, double a, double lo, double hi) {
  return Func1D(Profile({Piece{lo, hi, c, a, 0.0, 0.0, 0.0, 2.0}}));
}

Func1D Func1D::indicator(double lo, double hi, double c) { return power(c, 0.0, lo, hi); }

double Func1D::eval(double r) const {
  if (is_grid()) {
    const auto& g = grid();
    size_t i = find_cell(g.nodes, r);
    return i < g.values.size() ? g.values[i] : 0.0;
  }
  for (const auto& p : profile().pieces())
    if (r >= p.t0 && r < p.t1) return p.value(r);
  return 0.0;
}

Profile Func1D::as_profile() const {
  if (!is_grid()) return profile();
  const auto& g = grid();
  if (g.n != 1) throw Error(ErrorCode::UnsupportedDimension, "profiles are one-dimensional");
  Profile p;
  for (size_t i = 0; i < g.values.size(); ++i)
    if (g.values[i] > 0) p.add(Piece{g.nodes[i], g.nodes[i + 1], g.values[i], 0, 0, 0, 0, 2.0});
  return p;
}

Func1D Func1D::dilated(double R) const {
  if (is_grid()) {
    Grid1D g = grid();
    for (auto& x : g.nodes) x *= R;
    return Func1D(g);
  }
  std::vector<Piece> ps;
  for (auto p : profile().pieces()) {
    // c t^a (t+d)^e |ln t|^b at t/R
    if (p.b != 0.0) throw Error(ErrorCode::InvalidArgument, "log pieces are not closed under dilation");
    p.c *= std::pow(R, -p.a - p.e);
    p.d *= R;
    p.t0 *= R;
    p.t1 *= R;
    ps.push_back(p);
  }
  return Func1D(Profile(ps));
}

// ---------------------------------------------------------------- FuncRep

struct FuncRep::Node {
  Kind kind;
  DimPair dims;
  CatalogFunc cat;
  GridFunc grid;
  Func1D f, g;
  FuncRep l, r;
  double k = 1.0;
  double rx = kInfinity, ry = kInfinity;
};

FuncRep FuncRep::catalog(const CatalogFunc& c, DimPair dims) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::catalog;
  n->cat = c;
  n->dims = dims;
  return FuncRep(n);
}

FuncRep FuncRep::grid(GridFunc g) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::grid;
  n->dims = g.dims;
  n->grid = std::move(g);
  return FuncRep(n);
}

FuncRep FuncRep::tensor(Func1D f, Func1D g) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::tensor;
  n->dims = DimPair(f.is_grid() ? f.grid().n : 1, g.is_grid() ? g.grid().n : 1);
  n->f = std::move(f);
  n->g = std::move(g);
  return FuncRep(n);
}

namespace {

template <class NodeT>
std::shared_ptr<NodeT> binary(FuncRep::Kind k, const FuncRep& a, const FuncRep& b) {
  auto n = std::make_shared<NodeT>();
  n->kind = k;
  n->l = a;
  n->r = b;
  n->dims = a.dims();
  return n;
}

}  // namespace

FuncRep FuncRep::sum(const FuncRep& a, const FuncRep& b) { return FuncRep(binary<Node>(Kind::sum, a, b)); }
FuncRep FuncRep::product(const FuncRep& a, const FuncRep& b) { return FuncRep(binary<Node>(Kind::product, a, b)); }
FuncRep FuncRep::min(const FuncRep& a, const FuncRep& b) { return FuncRep(binary<Node>(Kind::min, a, b)); }
FuncRep FuncRep::max(const FuncRep& a, const FuncRep& b) { return FuncRep(binary<Node>(Kind::max, a, b)); }

FuncRep FuncRep::scale(const FuncRep& a, double k) {
  if (!(k >= 0.0)) throw Error(ErrorCode::InvalidArgument, "scale factor must be nonnegative");
  auto n = std::make_shared<Node>();
  n->kind = Kind::scale;
  n->l = a;
  n->k = k;
  n->dims = a.dims();
  return FuncRep(n);
}

FuncRep FuncRep::truncate(const FuncRep& a, double rx, double ry) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::truncate;
  n->l = a;
  n->rx = rx;
  n->ry = ry;
  n->dims = a.dims();
  return FuncRep(n);
}

FuncRep::Kind FuncRep::kind() const { return node_->kind; }
const DimPair& FuncRep::dims() const { return node_->dims; }
const CatalogFunc& FuncRep::as_catalog() const { return node_->cat; }
const GridFunc& FuncRep::as_grid() const { return node_->grid; }
const Func1D& FuncRep::tensor_f() const { return node_->f; }
const Func1D& FuncRep::tensor_g() const { return node_->g; }
const FuncRep& FuncRep::left() const { return node_->l; }
const FuncRep& FuncRep::right() const { return node_->r; }
double FuncRep::scalar() const { return node_->k; }
std::pair<double, double> FuncRep::truncate_bounds() const { return {node_->rx, node_->ry}; }

bool FuncRep::sign_dependent() const {
  switch (node_->kind) {
    case Kind::catalog: return node_->cat.sign_dependent();
    case Kind::grid: return node_->grid.split_sign;
    case Kind::tensor: return false;
    case Kind::scale:
    case Kind::truncate: return node_->l.sign_dependent();
    default: return node_->l.sign_dependent() || node_->r.sign_dependent();
  }
}

double FuncRep::eval(double rx, double ry, SignRegime regime) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::catalog:
      if (n.cat.kind == CatalogKind::max_power && (n.dims.n > 1 || n.dims.m > 1))
        throw Error(ErrorCode::UnsupportedDimension, "max_power is angle dependent for n >= 2");
      return catalog_eval(n.cat, rx, ry, regime);
    case Kind::grid: {
      const GridFunc& g = n.grid;
      size_t i = find_cell(g.xnodes, rx), j = find_cell(g.ynodes, ry);
      size_t k = g.xnodes.size() - 1;
      if (i >= k || j >= g.ynodes.size() - 1) return 0.0;
      if (g.split_sign && regime == SignRegime::opposite) i += k;
      return g.at(i, j);
    }
    case Kind::tensor: {
      double gv = n.g.eval(ry);
      return gv == 0.0 ? 0.0 : n.f.eval(rx) * gv;
    }
    case Kind::sum: return n.l.eval(rx, ry, regime) + n.r.eval(rx, ry, regime);
    case Kind::product: {
      double a = n.l.eval(rx, ry, regime);
      if (a == 0.0) return 0.0;
      double b = n.r.eval(rx, ry, regime);
      return b == 0.0 ? 0.0 : a * b;
    }
    case Kind::scale: return n.k == 0.0 ? 0.0 : n.k * n.l.eval(rx, ry, regime);
    case Kind::truncate: return (rx <= n.rx && ry <= n.ry) ? n.l.eval(rx, ry, regime) : 0.0;
    case Kind::min: return std::min(n.l.eval(rx, ry, regime), n.r.eval(rx, ry, regime));
    case Kind::max: return std::max(n.l.eval(rx, ry, regime), n.r.eval(rx, ry, regime));
  }
  return 0.0;
}

bool FuncRep::slice_aligned() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::catalog: return !n.cat.sign_dependent();
    case Kind::tensor: return true;
    case Kind::scale:
    case Kind::truncate: return n.l.slice_aligned();
    case Kind::product: return n.l.slice_aligned() && n.r.slice_aligned();
    default: return false;
  }
}

bool FuncRep::has_profile() const {
  const Node& n = *node_;
  if (n.dims.n != 1 || n.dims.m != 1) return false;
  switch (n.kind) {
    case Kind::catalog: return true;
    case Kind::tensor: return !n.f.is_grid() || n.f.grid().n == 1;
    case Kind::scale: return n.l.has_profile();
    case Kind::truncate: return n.l.has_profile() && n.l.slice_aligned();
    case Kind::product:
      return n.l.has_profile() && n.r.has_profile() && n.l.slice_aligned() && n.r.slice_aligned();
    default: return false;
  }
}

Profile profile_product(const Profile& a, const Profile& b) {
  Profile out;
  for (const auto& p : a.pieces()) {
    for (const auto& q : b.pieces()) {
      double lo = std::max(p.t0, q.t0), hi = std::min(p.t1, q.t1);
      if (!(hi > lo)) continue;
      Piece r;
      r.t0 = lo;
      r.t1 = hi;
      r.c = p.c * q.c;
      r.a = p.a + q.a;
      r.b = p.b + q.b;
      r.w = p.w;
      if (p.e == 0.0) {
        r.d = q.d;
        r.e = q.e;
      } else if (q.e == 0.0 || p.d == q.d) {
        r.d = p.d;
        r.e = p.e + q.e;
      } else {
        throw Error(ErrorCode::UnsupportedDimension, "product of shifted power pieces has no closed form");
      }
      out.add(r);
    }
  }
  return out;
}

namespace {

Profile truncate_profile(const Profile& p, double rx) {
  Profile out;
  for (auto q : p.pieces()) {
    q.t1 = std::min(q.t1, rx);
    if (q.t1 > q.t0) out.add(q);
  }
  return out;
}

}  // namespace

Profile FuncRep::slice(double ry) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::catalog:
      if (n.dims.n != 1 || n.dims.m != 1)
        throw Error(ErrorCode::UnsupportedDimension, "closed-form slices are implemented for n = m = 1");
      return catalog_slice(n.cat, ry);
    case Kind::tensor: {
      double gv = n.g.eval(ry);
      if (gv <= 0.0) return {};
      return n.f.as_profile().scaled(gv);
    }
    case Kind::scale: return n.l.slice(ry).scaled(n.k);
    case Kind::truncate:
      if (ry > n.ry) return {};
      return truncate_profile(n.l.slice(ry), n.rx);
    case Kind::product: return profile_product(n.l.slice(ry), n.r.slice(ry));
    default:
      throw Error(ErrorCode::InvalidArgument, "no closed-form slices for this representation");
  }
}

YInfo FuncRep::y_info() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::catalog: return catalog_yinfo(n.cat);
    case Kind::grid: {
      YInfo y;
      y.lo = 0.0;
      y.hi = n.grid.ynodes.back();
      return y;
    }
    case Kind::tensor: {
      YInfo y;
      if (n.g.is_grid()) {
        y.lo = 0.0;
        y.hi = n.g.grid().nodes.back();
        y.breaks = n.g.grid().nodes;
      } else {
        const auto& ps = n.g.profile().pieces();
        if (ps.empty()) {
          y.hi = 0.0;
          return y;
        }
        y.lo = kInfinity;
        y.hi = 0.0;
        for (const auto& p : ps) {
          y.lo = std::min(y.lo, p.t0);
          y.hi = std::max(y.hi, p.t1);
          y.breaks.push_back(p.t0);
          if (std::isfinite(p.t1)) y.breaks.push_back(p.t1);
        }
      }
      return y;
    }
    case Kind::scale: return n.l.y_info();
    case Kind::truncate: {
      YInfo y = n.l.y_info();
      y.hi = std::min(y.hi, n.ry);
      if (std::isfinite(n.ry)) y.breaks.push_back(n.ry);
      return y;
    }
    default: {
      YInfo a = n.l.y_info(), b = n.r.y_info();
      YInfo y;
      if (n.kind == Kind::product || n.kind == Kind::min) {
        y.lo = std::max(a.lo, b.lo);
        y.hi = std::min(a.hi, b.hi);
      } else {
        y.lo = std::min(a.lo, b.lo);
        y.hi = std::max(a.hi, b.hi);
      }
      y.breaks = a.breaks;
      y.breaks.insert(y.breaks.end(), b.breaks.begin(), b.breaks.end());
      return y;
    }
  }
}

FuncRep FuncRep::dilated(double R) const {
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "dilation needs R > 0");
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::catalog: return catalog(catalog_dilated(n.cat, R), n.dims);
    case Kind::grid: {
      GridFunc g = n.grid;
      for (auto& x : g.xnodes) x *= R;
      for (auto& y : g.ynodes) y *= R;
      return grid(GridFunc(g.xnodes, g.ynodes, g.samples, g.dims, g.split_sign));
    }
    case Kind::tensor: return tensor(n.f.dilated(R), n.g.dilated(R));
    case Kind::sum: return sum(n.l.dilated(R), n.r.dilated(R));
    case Kind::product: return product(n.l.dilated(R), n.r.dilated(R));
    case Kind::scale: return scale(n.l.dilated(R), n.k);
    case Kind::truncate: return truncate(n.l.dilated(R), n.rx * R, n.ry * R);
    case Kind::min: return min(n.l.dilated(R), n.r.dilated(R));
    case Kind::max: return max(n.l.dilated(R), n.r.dilated(R));
  }
  return *this;
}

// ---------------------------------------------------------------- operations

double superlevel_measure(const FuncRep& f, double ry, double lambda) {
  if (f.kind() == FuncRep::Kind::grid) {
    const GridFunc& g = f.as_grid();
    size_t j = find_cell(g.ynodes, ry);
    if (j >= g.ycells()) return 0.0;
    double s = 0.0;
    for (size_t i = 0; i < g.xcells(); ++i)
      if (g.at(i, j) > lambda) s += g.wx[i];
    return s;
  }
  if (!f.has_profile()) throw Error(ErrorCode::InvalidArgument, "slice measure needs a closed-form slice");
  return f.slice(ry).measure_gt(lambda);
}

FuncRep tensor(const Func1D& f, const Func1D& g) { return FuncRep::tensor(f, g); }

GridFunc sample_to_grid(const FuncRep& f, const std::vector<double>& xn, const std::vector<double>& yn,
                        DimPair dims) {
  size_t kx = xn.size() - 1, ky = yn.size() - 1;
  bool split = f.sign_dependent();
  size_t cols = split ? 2 * kx : kx;
  std::vector<double> s(cols * ky);
  for (size_t j = 0; j < ky; ++j) {
    double ry = 0.5 * (yn[j] + yn[j + 1]);
    for (size_t i = 0; i < kx; ++i) {
      double rx = 0.5 * (xn[i] + xn[i + 1]);
      double v = f.eval(rx, ry, SignRegime::same);
      if (!std::isfinite(v))
        throw Error(ErrorCode::NonFiniteSample, "non-finite sample at cell midpoint (" + std::to_string(rx) +
                                                    ", " + std::to_string(ry) + ")");
      s[j * cols + i] = v;
      if (split) {
        double w = f.eval(rx, ry, SignRegime::opposite);
        if (!std::isfinite(w)) throw Error(ErrorCode::NonFiniteSample, "non-finite sample at cell midpoint");
        s[j * cols + kx + i] = w;
      }
    }
  }
  return GridFunc(xn, yn, std::move(s), dims, split);
}

GridFunc sample_default(const FuncRep& f, size_t cells, double lo, double hi) {
  auto nodes = geometric_nodes(cells, lo, hi);
  return sample_to_grid(f, nodes, nodes, f.dims());
}

}  // namespace mixnorm
