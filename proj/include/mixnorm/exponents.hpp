#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mixnorm/error.hpp"
#include "mixnorm/num.hpp"

namespace mixnorm {

// An exponent in (0, inf]. Stored through its reciprocal so that inf is the
// exact value 0 and never a float sentinel.
class Exponent {
public:
  Exponent() : recip_(Num::integer(1)) {}
  static Exponent inf() { return Exponent(Num::integer(0)); }
  static Exponent rational(std::int64_t num, std::int64_t den = 1);
  static Exponent real(double v);
  static Exponent from_recip(const Num& r);
  // "inf", "3/2", "1.5", "2"
  static Exponent parse(std::string_view s);

  bool is_inf() const { return recip_.is_zero(); }
  bool exact() const { return recip_.exact(); }
  double value() const;
  double recip_value() const { return recip_.to_double(); }
  // 1/e with 1/inf = 0
  const Num& reciprocal() const { return recip_; }

  std::string to_string() const;
  friend bool operator==(const Exponent& a, const Exponent& b) {
    return Num::compare(a.recip_, b.recip_) == 0;
  }

private:
  explicit Exponent(Num r) : recip_(r) {}
  Num recip_;
};

struct ExponentPair {
  Exponent inner;  // p1, acts on x
  Exponent outer;  // p2, acts on y

  ExponentPair() = default;
  ExponentPair(Exponent a, Exponent b) : inner(a), outer(b) {}
  static ExponentPair parse(std::string_view s);  // "p1,p2"

  const Exponent& p1() const { return inner; }
  const Exponent& p2() const { return outer; }
  std::string to_string() const { return inner.to_string() + "," + outer.to_string(); }
  friend bool operator==(const ExponentPair& a, const ExponentPair& b) {
    return a.inner == b.inner && a.outer == b.outer;
  }
};

struct InterpolationSpec {
  double theta = 0.5;
  double xi = 0.5;
  InterpolationSpec() = default;
  InterpolationSpec(double t, double x = 0.5);
};

struct DimPair {
  int n = 1;
  int m = 1;
  DimPair() = default;
  DimPair(int n_, int m_);
};

// volume of the unit ball in R^n; v_1 = 2
double unit_ball_volume(int n);

ExponentPair holder_combine(const ExponentPair& p, const ExponentPair& q);
bool mixed_weak_holder_admissible(const ExponentPair& p, const ExponentPair& q);
double mixed_weak_holder_constant(const ExponentPair& p, const ExponentPair& q);
double iterated_holder_constant(const ExponentPair& p, const ExponentPair& q);
ExponentPair interpolate_exponent(const ExponentPair& p, const ExponentPair& q,
                                  const InterpolationSpec& spec);
// n(1/q1 + 1/q2 - 1/p1 - 1/p2); throws NegativeGamma when negative
double homogeneity_gamma(const ExponentPair& p, const ExponentPair& q, int n);

struct QuasiTriangleTable {
  std::vector<double> a, b, c;
};
QuasiTriangleTable quasi_triangle_coefficients(const ExponentPair& p, int k);

// one-variable weak Holder constant p^{1/p} q^{1/q} / r^{1/r}, 1/r = 1/p + 1/q
double weak_holder_constant_1d(const Exponent& p, const Exponent& q);
// (r/(r-p) + r/(q-r))^{1/r} for p < r < q
double weak_interpolation_constant_1d(const Exponent& p, const Exponent& q, const Exponent& r);

}  // namespace mixnorm
