#pragma once

#include <cstdint>
#include <string>

namespace mixnorm {

// Nonnegative-friendly scalar that stays an exact rational as long as
// every operand is one, and degrades to double otherwise.
class Num {
public:
  Num() = default;
  static Num integer(std::int64_t v) { return rational(v, 1); }
  static Num rational(std::int64_t num, std::int64_t den);
  static Num real(double v);
  // dyadic doubles (v * 2^k integral for small k) stay exact
  static Num from_double(double v);

  bool exact() const { return exact_; }
  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const;
  bool is_zero() const;
  int sign() const;

  friend Num operator+(const Num& a, const Num& b);
  friend Num operator-(const Num& a, const Num& b);
  friend Num operator*(const Num& a, const Num& b);
  friend Num operator/(const Num& a, const Num& b);

  // exact comparison for exact operands, relative tolerance otherwise
  static bool equal(const Num& a, const Num& b, double rel_tol = 1e-12);
  static int compare(const Num& a, const Num& b);

  std::string to_string() const;

private:
  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double val_ = 0.0;
};

}  // namespace mixnorm
