#pragma once

#include <vector>

#include "mixnorm/exponents.hpp"

namespace mixnorm {

// One piece of a nonnegative one-variable function, parametrized by a
// distance-like coordinate t in [t0, t1]:
//   value(t) = c * t^a * (t + d)^e * |ln t|^b
// Each unit of t carries measure w (w = 2 for an even function of x in R,
// 1 for a one-sided piece).
struct Piece {
  double t0 = 0.0, t1 = 0.0;
  double c = 1.0;
  double a = 0.0;
  double d = 0.0;
  double e = 0.0;
  double b = 0.0;
  double w = 2.0;

  double value(double t) const;
  // values at the ends as one-sided limits; may be 0 or inf
  double value_lo() const;
  double value_hi() const;
  bool constant() const { return a == 0.0 && e == 0.0 && b == 0.0; }
};

struct WeakSup {
  double value = 0.0;
  double lambda = 0.0;  // maximizing level, 0 when not attained at a finite level
};

// Distribution-level view of a one-variable function: only the multiset of
// (value, measure) matters, so pieces need not remember where they sit in x.
class Profile {
public:
  Profile() = default;
  explicit Profile(std::vector<Piece> pieces);

  void add(const Piece& p);
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  double measure_gt(double lambda) const;  // |{f > lambda}|
  double measure_ge(double lambda) const;  // |{f >= lambda}|
  double support_measure() const;
  double ess_sup() const;

  double strong_norm(const Exponent& p) const;
  // per_interval: log samples between consecutive level breakpoints
  WeakSup weak_norm(const Exponent& p, int per_interval = 24) const;

  // all finite positive values taken at piece ends (level-set breakpoints)
  std::vector<double> breakpoints() const;

  Profile scaled(double k) const;

private:
  std::vector<Piece> pieces_;  // split so each piece is monotone
};

// measure of {t in piece : value > lambda} (strict) or >= (non strict)
double piece_measure(const Piece& p, double lambda, bool strict);
// integral of w * value^p over the piece; inf when divergent
double piece_power_integral(const Piece& p, double power);

}  // namespace mixnorm
