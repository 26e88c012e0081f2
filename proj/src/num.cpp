#include "mixnorm/num.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mixnorm {

namespace {

using i128 = __int128;

bool fits(i128 v) {
  return v <= std::numeric_limits<std::int64_t>::max() &&
         v >= std::numeric_limits<std::int64_t>::min();
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// returns false when the reduced fraction overflows int64
bool make_exact(i128 n, i128 d, std::int64_t& on, std::int64_t& od) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (!fits(n) || !fits(d)) return false;
  on = static_cast<std::int64_t>(n);
  od = static_cast<std::int64_t>(d);
  return true;
}

Num from_parts(i128 n, i128 d) {
  std::int64_t a, b;
  if (make_exact(n, d, a, b)) return Num::rational(a, b);
  return Num::real(static_cast<double>(n) / static_cast<double>(d));
}

}  // namespace

Num Num::rational(std::int64_t num, std::int64_t den) {
  Num r;
  if (!make_exact(num, den, r.num_, r.den_)) {
    return real(static_cast<double>(num) / static_cast<double>(den));
  }
  r.exact_ = true;
  r.val_ = static_cast<double>(r.num_) / static_cast<double>(r.den_);
  return r;
}

Num Num::real(double v) {
  Num r;
  r.exact_ = false;
  r.val_ = v;
  return r;
}

Num Num::from_double(double v) {
  if (!std::isfinite(v)) return real(v);
  double scaled = v;
  std::int64_t den = 1;
  for (int k = 0; k <= 30; ++k) {
    if (std::fabs(scaled) < 9.0e15 && scaled == std::floor(scaled)) {
      return rational(static_cast<std::int64_t>(scaled), den);
    }
    scaled *= 2.0;
    den *= 2;
  }
  return real(v);
}

double Num::to_double() const { return val_; }

bool Num::is_zero() const { return exact_ ? num_ == 0 : val_ == 0.0; }

int Num::sign() const {
  if (exact_) return (num_ > 0) - (num_ < 0);
  return (val_ > 0) - (val_ < 0);
}

Num operator+(const Num& a, const Num& b) {
  if (a.exact_ && b.exact_) {
    return from_parts(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
  }
  return Num::real(a.to_double() + b.to_double());
}

Num operator-(const Num& a, const Num& b) {
  if (a.exact_ && b.exact_) {
    return from_parts(static_cast<i128>(a.num_) * b.den_ - static_cast<i128>(b.num_) * a.den_,
                      static_cast<i128>(a.den_) * b.den_);
  }
  return Num::real(a.to_double() - b.to_double());
}

Num operator*(const Num& a, const Num& b) {
  if (a.exact_ && b.exact_) {
    return from_parts(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
  }
  return Num::real(a.to_double() * b.to_double());
}

Num operator/(const Num& a, const Num& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.exact_ && b.exact_) {
    return from_parts(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
  }
  return Num::real(a.to_double() / b.to_double());
}

int Num::compare(const Num& a, const Num& b) {
  if (a.exact_ && b.exact_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return (l > r) - (l < r);
  }
  double x = a.to_double(), y = b.to_double();
  return (x > y) - (x < y);
}

bool Num::equal(const Num& a, const Num& b, double rel_tol) {
  if (a.exact_ && b.exact_) return compare(a, b) == 0;
  double x = a.to_double(), y = b.to_double();
  double scale = std::max(std::fabs(x), std::fabs(y));
  if (scale == 0.0) return true;
  return std::fabs(x - y) <= rel_tol * scale;
}

std::string Num::to_string() const {
  if (exact_) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", val_);
  return buf;
}

}  // namespace mixnorm
