#include "mixnorm/exponents.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace mixnorm {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::SpecParse: return "SpecParse";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NegativeGamma: return "NegativeGamma";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Exponent Exponent::rational(std::int64_t num, std::int64_t den) {
  if (num <= 0 || den <= 0) throw Error(ErrorCode::InvalidArgument, "exponent must be positive");
  return Exponent(Num::rational(den, num));
}

Exponent Exponent::real(double v) {
  if (std::isinf(v) && v > 0) return inf();
  if (!(v > 0) || std::isnan(v)) throw Error(ErrorCode::InvalidArgument, "exponent must be positive");
  Num e = Num::from_double(v);
  if (e.exact()) return Exponent(Num::rational(e.den(), e.num()));
  return Exponent(Num::real(1.0 / v));
}

Exponent Exponent::from_recip(const Num& r) {
  if (r.sign() < 0) throw Error(ErrorCode::InvalidArgument, "negative reciprocal exponent");
  return Exponent(r);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view s) {
  std::string tmp(s);
  char* end = nullptr;
  double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size())
    throw Error(ErrorCode::SpecParse, "cannot parse number '" + tmp + "'");
  return v;
}

bool parse_int(std::string_view s, std::int64_t& out) {
  auto r = std::from_chars(s.data(), s.data() + s.size(), out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

}  // namespace

Exponent Exponent::parse(std::string_view s) {
  s = trim(s);
  if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return inf();
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::int64_t a, b;
    if (parse_int(trim(s.substr(0, slash)), a) && parse_int(trim(s.substr(slash + 1)), b) && a > 0 && b > 0)
      return rational(a, b);
    throw Error(ErrorCode::SpecParse, "bad rational exponent '" + std::string(s) + "'");
  }
  std::int64_t k;
  if (parse_int(s, k)) {
    if (k <= 0) throw Error(ErrorCode::SpecParse, "exponent must be positive");
    return rational(k, 1);
  }
  double v = parse_double(s);
  if (!(v > 0)) throw Error(ErrorCode::SpecParse, "exponent must be positive");
  return real(v);
}

double Exponent::value() const {
  if (is_inf()) return std::numeric_limits<double>::infinity();
  if (recip_.exact()) return static_cast<double>(recip_.den()) / static_cast<double>(recip_.num());
  return 1.0 / recip_.to_double();
}

std::string Exponent::to_string() const {
  if (is_inf()) return "inf";
  if (recip_.exact()) {
    Num v = Num::integer(1) / recip_;
    return v.to_string();
  }
  return Num::real(value()).to_string();
}

ExponentPair ExponentPair::parse(std::string_view s) {
  auto comma = s.find(',');
  if (comma == std::string_view::npos)
    throw Error(ErrorCode::SpecParse, "exponent pair needs the form p1,p2");
  return {Exponent::parse(s.substr(0, comma)), Exponent::parse(s.substr(comma + 1))};
}

InterpolationSpec::InterpolationSpec(double t, double x) : theta(t), xi(x) {
  if (!(t > 0 && t < 1) || !(x > 0 && x < 1))
    throw Error(ErrorCode::InvalidArgument, "theta and xi must lie in (0,1)");
}

DimPair::DimPair(int n_, int m_) : n(n_), m(m_) {
  if (n < 1 || m < 1) throw Error(ErrorCode::InvalidArgument, "dimensions must be positive");
}

double unit_ball_volume(int n) {
  if (n == 1) return 2.0;
  if (n == 2) return std::numbers::pi;
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

ExponentPair holder_combine(const ExponentPair& p, const ExponentPair& q) {
  return {Exponent::from_recip(p.inner.reciprocal() + q.inner.reciprocal()),
          Exponent::from_recip(p.outer.reciprocal() + q.outer.reciprocal())};
}

bool mixed_weak_holder_admissible(const ExponentPair& p, const ExponentPair& q) {
  // p1 q2 = p2 q1 rewritten on reciprocals: (1/p1)(1/q2) = (1/p2)(1/q1).
  // The reciprocal form keeps the inf conventions exact.
  Num lhs = p.inner.reciprocal() * q.outer.reciprocal();
  Num rhs = p.outer.reciprocal() * q.inner.reciprocal();
  if (lhs.exact() && rhs.exact()) return Num::compare(lhs, rhs) == 0;
  double a = lhs.to_double(), b = rhs.to_double();
  double scale = std::max(std::fabs(a), std::fabs(b));
  if (scale == 0.0) return true;
  return std::fabs(a - b) <= 1e-12 * scale;
}

namespace {

// x^{1/x} with the inf limit 1
double self_power(const Exponent& e) {
  if (e.is_inf()) return 1.0;
  return std::pow(e.value(), e.recip_value());
}

}  // namespace

double mixed_weak_holder_constant(const ExponentPair& p, const ExponentPair& q) {
  if (!mixed_weak_holder_admissible(p, q))
    throw Error(ErrorCode::NotAdmissible, "p1 q2 != p2 q1 for " + p.to_string() + " / " + q.to_string());
  ExponentPair r = holder_combine(p, q);
  bool p_inf = p.inner.is_inf() && p.outer.is_inf();
  bool q_inf = q.inner.is_inf() && q.outer.is_inf();
  if (p_inf || q_inf) return 1.0;
  bool finite = !p.inner.is_inf() && !p.outer.is_inf() && !q.inner.is_inf() && !q.outer.is_inf();
  if (finite) {
    double lead = std::max(1.0, std::pow(2.0, r.inner.recip_value() - r.outer.recip_value()));
    return lead * self_power(p.outer) * self_power(q.outer) / self_power(r.outer);
  }
  if (p.outer.is_inf() && q.outer.is_inf() && !p.inner.is_inf() && !q.inner.is_inf()) {
    double r1 = r.inner.value();
    double lead = std::max(1.0, std::pow(2.0, r.inner.recip_value() - 1.0));
    return lead * std::pow(p.inner.value(), r1 / p.inner.value()) *
           std::pow(q.inner.value(), r1 / q.inner.value()) / r1;
  }
  if (p.inner.is_inf() && q.inner.is_inf() && !p.outer.is_inf() && !q.outer.is_inf()) {
    return self_power(p.outer) * self_power(q.outer) / self_power(r.outer);
  }
  throw Error(ErrorCode::NotAdmissible, "no constant listed for " + p.to_string() + " / " + q.to_string());
}

double weak_holder_constant_1d(const Exponent& p, const Exponent& q) {
  Exponent r = Exponent::from_recip(p.reciprocal() + q.reciprocal());
  if (r.is_inf()) return 1.0;
  return self_power(p) * self_power(q) / self_power(r);
}

double iterated_holder_constant(const ExponentPair& p, const ExponentPair& q) {
  ExponentPair r = holder_combine(p, q);
  double c = 1.0;
  const Exponent* ps[2] = {&p.inner, &p.outer};
  const Exponent* qs[2] = {&q.inner, &q.outer};
  const Exponent* rs[2] = {&r.inner, &r.outer};
  for (int i = 0; i < 2; ++i) {
    if (rs[i]->is_inf()) continue;
    double rv = rs[i]->value();
    if (!ps[i]->is_inf()) c *= std::pow(ps[i]->value() / rv, ps[i]->recip_value());
    if (!qs[i]->is_inf()) c *= std::pow(qs[i]->value() / rv, qs[i]->recip_value());
  }
  return c;
}

ExponentPair interpolate_exponent(const ExponentPair& p, const ExponentPair& q,
                                  const InterpolationSpec& spec) {
  Num t = Num::from_double(spec.theta);
  Num one_minus = Num::integer(1) - t;
  auto mix = [&](const Exponent& a, const Exponent& b) {
    return Exponent::from_recip(t * a.reciprocal() + one_minus * b.reciprocal());
  };
  return {mix(p.inner, q.inner), mix(p.outer, q.outer)};
}

double homogeneity_gamma(const ExponentPair& p, const ExponentPair& q, int n) {
  Num g = Num::integer(n) * (q.inner.reciprocal() + q.outer.reciprocal() - p.inner.reciprocal() -
                             p.outer.reciprocal());
  bool negative = g.exact() ? g.sign() < 0 : g.to_double() < -1e-12 * n;
  if (negative)
    throw Error(ErrorCode::NegativeGamma, "homogeneity forces gamma = " + g.to_string() + " < 0");
  return std::max(0.0, g.to_double());
}

namespace {

std::vector<double> geometric_family(const Exponent& e, int k) {
  std::vector<double> out(k, 1.0);
  if (e.is_inf() || e.value() >= 1.0) return out;
  double pe = e.value();
  double expo = pe / (1.0 - pe);
  // b_i = b0 / 2^i with sum b_i^expo = 1
  double s = 0.0;
  for (int i = 1; i <= k; ++i) s += std::pow(2.0, -i * expo);
  double b0 = std::pow(s, -1.0 / expo);
  for (int i = 1; i <= k; ++i) out[i - 1] = b0 * std::pow(2.0, -i);
  return out;
}

}  // namespace

QuasiTriangleTable quasi_triangle_coefficients(const ExponentPair& p, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  QuasiTriangleTable t;
  t.a.assign(k, 1.0 / k);
  t.b = geometric_family(p.inner, k);
  t.c = geometric_family(p.outer, k);
  return t;
}

double weak_interpolation_constant_1d(const Exponent& p, const Exponent& q, const Exponent& r) {
  double rv = r.value(), pv = p.value();
  if (!(pv < rv) || !(q.is_inf() || rv < q.value()))
    throw Error(ErrorCode::InvalidArgument, "need p < r < q");
  double s = rv / (rv - pv);
  if (!q.is_inf()) s += rv / (q.value() - rv);
  return std::pow(s, 1.0 / rv);
}

}  // namespace mixnorm
