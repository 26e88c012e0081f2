#include "mixnorm/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "quadrature.hpp"

namespace mixnorm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// limit of t^A |ln t|^B as t -> 0 (at_zero) or t -> inf
double power_log_limit(double A, double B, double c) {
  if (A > 0) return kInf;
  if (A < 0) return 0.0;
  if (B > 0) return kInf;
  if (B < 0) return 0.0;
  return c;
}

double safe_mul(double x, double y) {
  if (x == 0.0 || y == 0.0) return 0.0;
  return x * y;
}

}  // namespace

double Piece::value(double t) const {
  if (t <= 0.0) return value_lo();
  if (std::isinf(t)) return value_hi();
  double v = c;
  if (a != 0.0) v *= std::pow(t, a);
  if (e != 0.0) v *= std::pow(t + d, e);
  if (b != 0.0) {
    double l = std::fabs(std::log(t));
    if (l == 0.0) return b > 0 ? 0.0 : kInf;
    v *= std::pow(l, b);
  }
  return v;
}

double Piece::value_lo() const {
  if (t0 > 0.0) {
    if (b != 0.0 && t0 == 1.0) return b > 0 ? 0.0 : kInf;
    return value(t0);
  }
  if (d > 0.0) {
    double base = c * (e != 0.0 ? std::pow(d, e) : 1.0);
    // t -> 0: t^a |ln t|^b with ln t -> -inf
    return safe_mul(base, power_log_limit(-a, b, 1.0));
  }
  return safe_mul(c, power_log_limit(-(a + e), b, 1.0));
}

double Piece::value_hi() const {
  if (!std::isinf(t1)) {
    if (b != 0.0 && t1 == 1.0) return b > 0 ? 0.0 : kInf;
    return value(t1);
  }
  return safe_mul(c, power_log_limit(a + e, b, 1.0));
}

namespace {

// normalize and split into monotone pieces
void split_monotone(Piece p, std::vector<Piece>& out) {
  if (!(p.t1 > p.t0) || p.c <= 0.0 || p.w <= 0.0) return;
  if (p.d == 0.0 && p.e != 0.0) {
    p.a += p.e;
    p.e = 0.0;
  }
  std::vector<double> cuts;
  if (p.b != 0.0) {
    cuts.push_back(1.0);
    if (p.a != 0.0 && p.e == 0.0) cuts.push_back(std::exp(-p.b / p.a));
  } else if (p.e != 0.0 && p.d > 0.0 && p.a != 0.0 && p.a + p.e != 0.0) {
    double ts = -p.a * p.d / (p.a + p.e);
    if (ts > 0.0) cuts.push_back(ts);
  }
  std::sort(cuts.begin(), cuts.end());
  double lo = p.t0;
  for (double cpt : cuts) {
    if (cpt > lo && cpt < p.t1) {
      Piece q = p;
      q.t0 = lo;
      q.t1 = cpt;
      out.push_back(q);
      lo = cpt;
    }
  }
  Piece q = p;
  q.t0 = lo;
  out.push_back(q);
}

bool increasing(const Piece& p) {
  double lo = p.value_lo(), hi = p.value_hi();
  if (lo != hi) return lo < hi;
  double m1, m2;
  if (std::isinf(p.t1)) {
    m1 = std::max(1.0, 2 * p.t0);
    m2 = 2 * m1;
  } else {
    m1 = p.t0 + 0.25 * (p.t1 - p.t0);
    m2 = p.t0 + 0.75 * (p.t1 - p.t0);
  }
  return p.value(m1) < p.value(m2);
}

// solve value(t) = lambda on a monotone piece, lambda strictly between the end limits
double invert(const Piece& p, double lambda) {
  if (p.e == 0.0 && p.b == 0.0 && p.a != 0.0) return std::pow(lambda / p.c, 1.0 / p.a);
  double ulo = std::log(std::max(p.t0, 1e-300));
  double uhi = std::log(std::isinf(p.t1) ? 1e300 : p.t1);
  bool inc = increasing(p);
  double target = std::log(lambda);
  auto h = [&](double u) {
    double v = p.value(std::exp(u));
    double lv = v > 0 ? std::log(v) : -kInf;
    return inc ? lv - target : target - lv;
  };
  // h increasing in u; bracket [ulo, uhi]
  double u = 0.5 * (ulo + uhi);
  for (int it = 0; it < 200 && uhi - ulo > 1e-15 * std::max(1.0, std::fabs(u)); ++it) {
    double hv = h(u);
    if (hv > 0) uhi = u;
    else ulo = u;
    double t = std::exp(u);
    double deriv = p.a + (p.e != 0.0 ? p.e * t / (t + p.d) : 0.0);
    if (p.b != 0.0) deriv += p.b / std::log(t);
    if (!inc) deriv = -deriv;
    double next = (deriv > 0 && std::isfinite(hv)) ? u - hv / deriv : 0.5 * (ulo + uhi);
    if (!(next > ulo && next < uhi)) next = 0.5 * (ulo + uhi);
    if (std::fabs(next - u) < 1e-15 * std::max(1.0, std::fabs(u))) {
      u = next;
      break;
    }
    u = next;
  }
  return std::exp(u);
}

}  // namespace

double piece_measure(const Piece& p, double lambda, bool strict) {
  double full = p.w * (p.t1 - p.t0);
  if (lambda <= 0.0) return full;
  if (p.constant()) return (strict ? p.c > lambda : p.c >= lambda) ? full : 0.0;
  double lo = p.value_lo(), hi = p.value_hi();
  bool inc = lo < hi || (lo == hi && increasing(p));
  double top = inc ? hi : lo, bottom = inc ? lo : hi;
  if (lambda > top || (lambda == top)) return 0.0;
  if (lambda < bottom || (!strict && lambda == bottom)) return full;
  if (strict && lambda == bottom) {
    // bottom value attained only at an endpoint
  }
  double ts = invert(p, lambda);
  ts = std::clamp(ts, p.t0, p.t1);
  return inc ? p.w * (p.t1 - ts) : p.w * (ts - p.t0);
}

double piece_power_integral(const Piece& p, double P) {
  if (P <= 0.0) throw Error(ErrorCode::InvalidArgument, "power must be positive");
  double A = p.a * P, E = p.e * P, Bl = p.b * P;
  double cp = std::pow(p.c, P);
  // divergence at t -> 0
  if (p.t0 == 0.0) {
    double lead = (p.d > 0.0) ? A : A + E;
    if (lead < -1.0 || (lead == -1.0 && Bl >= -1.0)) return kInf;
  }
  if (std::isinf(p.t1)) {
    double lead = A + E;
    if (lead > -1.0 || (lead == -1.0 && Bl >= -1.0)) return kInf;
  }
  if (Bl <= -1.0 && ((p.t0 == 1.0) || (p.t1 == 1.0))) return kInf;
  if (E == 0.0 && Bl == 0.0) {
    auto anti = [&](double t) {
      if (A == -1.0) return std::log(t);
      return std::pow(t, A + 1.0) / (A + 1.0);
    };
    double hi = std::isinf(p.t1) ? 0.0 : anti(p.t1);
    double lo = (p.t0 == 0.0) ? 0.0 : anti(p.t0);
    if (A == -1.0) {
      // both ends finite and positive here
      return p.w * cp * (std::log(p.t1) - std::log(p.t0));
    }
    return p.w * cp * (hi - lo);
  }
  Piece q = p;
  q.c = 1.0;
  q.a = A;
  q.e = E;
  q.b = Bl;
  auto g = [&](double t) { return q.value(t); };
  double total = 0.0;
  double split = std::isinf(p.t1) ? std::max(1.0, p.t0) : p.t1;
  if (split > p.t0) {
    auto r = quad::tanh_sinh(g, p.t0, split, 1e-12);
    total += r.value;
  }
  if (std::isinf(p.t1)) {
    double s0 = split;
    auto h = [&](double s) { return q.value(s0 / s) * s0 / (s * s); };
    auto r = quad::tanh_sinh(h, 0.0, 1.0, 1e-12);
    total += r.value;
  }
  return p.w * cp * total;
}

Profile::Profile(std::vector<Piece> pieces) {
  for (auto& p : pieces) split_monotone(p, pieces_);
}

void Profile::add(const Piece& p) { split_monotone(p, pieces_); }

double Profile::measure_gt(double lambda) const {
  double s = 0.0;
  for (const auto& p : pieces_) s += piece_measure(p, lambda, true);
  return s;
}

double Profile::measure_ge(double lambda) const {
  double s = 0.0;
  for (const auto& p : pieces_) s += piece_measure(p, lambda, false);
  return s;
}

double Profile::support_measure() const {
  double s = 0.0;
  for (const auto& p : pieces_) s += p.w * (p.t1 - p.t0);
  return s;
}

double Profile::ess_sup() const {
  double s = 0.0;
  for (const auto& p : pieces_) s = std::max({s, p.value_lo(), p.value_hi()});
  return s;
}

double Profile::strong_norm(const Exponent& p) const {
  if (p.is_inf()) return ess_sup();
  double P = p.value();
  double s = 0.0;
  for (const auto& pc : pieces_) {
    s += piece_power_integral(pc, P);
    if (std::isinf(s)) return kInf;
  }
  return std::pow(s, 1.0 / P);
}

std::vector<double> Profile::breakpoints() const {
  std::vector<double> out;
  for (const auto& p : pieces_) {
    for (double v : {p.value_lo(), p.value_hi()})
      if (v > 0.0 && std::isfinite(v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Profile Profile::scaled(double k) const {
  Profile r;
  if (k <= 0.0) return r;
  r.pieces_ = pieces_;
  for (auto& p : r.pieces_) p.c *= k;
  return r;
}

WeakSup Profile::weak_norm(const Exponent& p, int per_interval) const {
  if (pieces_.empty()) return {};
  if (p.is_inf()) return {ess_sup(), 0.0};
  const double ip = p.recip_value();
  // a nonzero level held on a set of infinite measure
  for (const auto& pc : pieces_) {
    if (std::isinf(pc.t1) && pc.value_hi() > 0.0) return {kInf, 0.0};
  }
  auto phi = [&](double lam) {
    double m = measure_ge(lam);
    if (m <= 0.0) return 0.0;
    if (std::isinf(m)) return kInf;
    return lam * std::pow(m, ip);
  };
  std::vector<double> levels = breakpoints();
  double top = ess_sup();
  if (levels.empty()) {
    double ref = 0.0;
    for (const auto& pc : pieces_) {
      double t = std::isinf(pc.t1) ? std::max(1.0, 2 * pc.t0) : 0.5 * (pc.t0 + pc.t1);
      double v = pc.value(t);
      if (v > 0 && std::isfinite(v)) ref = std::max(ref, v);
    }
    if (ref == 0.0) return {0.0, 0.0};
    levels.push_back(ref);
  }
  std::vector<double> lam, val;
  auto push = [&](double l) {
    if (!(l > 0.0) || !std::isfinite(l)) return;
    lam.push_back(l);
    val.push_back(phi(l));
  };
  const int kPer = std::max(per_interval, 1);
  for (size_t i = 0; i < levels.size(); ++i) {
    push(levels[i]);
    if (i + 1 < levels.size()) {
      double la = std::log(levels[i]), lb = std::log(levels[i + 1]);
      for (int k = 1; k < kPer; ++k) push(std::exp(la + (lb - la) * k / kPer));
    }
  }
  // tails: below the smallest level and above the largest
  std::vector<double> low, high;
  for (int k = 1; k <= 12; ++k) {
    double l = levels.front() * std::pow(10.0, -k);
    low.push_back(phi(l));
    push(l);
  }
  if (top > levels.back()) {
    for (int k = 1; k <= 12; ++k) {
      double l = levels.back() * std::pow(10.0, k);
      if (l >= top) break;
      high.push_back(phi(l));
      push(l);
    }
  }
  for (double v : val)
    if (std::isinf(v)) return {kInf, 0.0};
  if (low.size() >= 3 && low.back() > low[low.size() - 3] * (1.0 + 1e-9)) return {kInf, 0.0};
  if (std::isinf(top) && high.size() >= 3 && high.back() > high[high.size() - 3] * (1.0 + 1e-9))
    return {kInf, 0.0};
  // refine around the best sample
  std::vector<size_t> order(lam.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return lam[x] < lam[y]; });
  size_t best = 0;
  for (size_t k = 0; k < order.size(); ++k)
    if (val[order[k]] > val[order[best]]) best = k;
  double bl = lam[order[best]], bv = val[order[best]];
  double lo = best > 0 ? lam[order[best - 1]] : bl * 0.5;
  double hi = best + 1 < order.size() ? lam[order[best + 1]] : bl * 2.0;
  if (std::isfinite(top)) hi = std::min(hi, top);
  if (hi > lo) {
    auto f = [&](double u) { return phi(std::exp(u)); };
    double u = quad::golden_max(f, std::log(lo), std::log(hi), 1e-12);
    double v = f(u);
    if (v > bv) {
      bv = v;
      bl = std::exp(u);
    }
  }
  return {bv, bl};
}

}  // namespace mixnorm
