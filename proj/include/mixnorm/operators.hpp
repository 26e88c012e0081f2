#pragma once

#include <string>
#include <vector>

#include "mixnorm/funcrep.hpp"

namespace mixnorm {

enum class OperatorKind { T_gamma, T_gamma_inverse, L_gamma, L_gamma_inverse, I_alpha };

struct OperatorSpec {
  OperatorKind kind = OperatorKind::T_gamma;
  double gamma_or_alpha = 1.0;
  DimPair dims;
  OperatorSpec() = default;
  OperatorSpec(OperatorKind k, double g, DimPair d = {});
};

// f / (|x+y| + |x-y|)^gamma, or times it when inverse
FuncRep apply_T_gamma(const FuncRep& f, double gamma, bool inverse = false);

struct LGammaResult {
  FuncRep f;
  bool singular_slice = false;  // a grid cell straddled the diagonal x = y
};
// f / |x-y|^gamma, or times it when inverse
LGammaResult apply_L_gamma(const FuncRep& f, double gamma, bool inverse = false);

FuncRep pointwise_product(const FuncRep& f, const FuncRep& g);
FuncRep dilate(const FuncRep& f, double R);

// Nonnegative function on the real line (not necessarily even): a sum of
// segments c |x - center|^a on [x0, x1]. Step functions use a = 0.
struct Segment {
  double x0 = 0.0, x1 = 0.0;
  double c = 1.0;
  double a = 0.0;
  double center = 0.0;
  double value(double x) const;
};

class LineFunc {
public:
  LineFunc() = default;
  explicit LineFunc(std::vector<Segment> s);
  static LineFunc step(const std::vector<double>& nodes, const std::vector<double>& values);
  static LineFunc indicator(double a, double b, double c = 1.0);
  // even extension of a radial one-variable function (grids or pure power pieces)
  static LineFunc from_radial(const Func1D& f);

  const std::vector<Segment>& segments() const { return segs_; }
  bool is_step() const;
  double eval(double x) const;
  double measure_gt(double lambda) const;  // step functions only
  double strong_norm(double p) const;      // step functions only
  LineFunc scaled(double k) const;

private:
  std::vector<Segment> segs_;
};

// I_alpha f(x) = int f(y) |x - y|^{alpha - 1} dy in one dimension
double fractional_integral_1d(const LineFunc& f, double alpha, double x);
double fractional_integral_1d(const Func1D& f, double alpha, double x);

// symmetric decreasing rearrangement of a step function, as a radial grid
Func1D symmetric_rearrangement(const LineFunc& f);
Func1D symmetric_rearrangement(const Func1D& f);

// int int f(x) g(y) |x - y|^mu dx dy for step functions, mu > -1
double kernel_double_integral(const LineFunc& f, const LineFunc& g, double mu);

}  // namespace mixnorm
