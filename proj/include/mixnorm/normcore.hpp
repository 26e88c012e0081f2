#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixnorm/funcrep.hpp"

namespace mixnorm {

enum class Method { closed_form, lambda_search, grid_exact };
const char* method_name(Method m);

struct NormResult {
  double value = 0.0;
  Method method = Method::closed_form;
  double err_bound = 0.0;
  std::optional<double> maximizing_lambda;

  bool is_inf() const { return value == kInfinity; }
  static NormResult infinite(Method m) { return {kInfinity, m, kInfinity, std::nullopt}; }
};

struct SuperlevelProfile {
  std::vector<double> lambda;
  std::vector<double> phi;
  std::vector<bool> exact;
};

enum class HalfVariant { outer_strong_inner_weak, outer_weak_inner_strong };

NormResult strong_norm_1d(const Func1D& f, const Exponent& p);
NormResult weak_norm_1d(const Func1D& f, const Exponent& p);

NormResult mixed_norm(const FuncRep& f, const ExponentPair& p);
NormResult mixed_weak_norm(const FuncRep& f, const ExponentPair& p);
NormResult iterated_weak_norm(const FuncRep& f, const ExponentPair& p);
NormResult half_mixed_norm(const FuncRep& f, const ExponentPair& p, HalfVariant v);

// Phi(lambda) = || chi_{f > lambda} ||_{L^p}, lambdas sorted ascending
SuperlevelProfile distribution_curve(const FuncRep& f, const ExponentPair& p,
                                     const std::vector<double>& lambdas);

// || chi_{|f - g| > lambda} ||_{L^p}
double truncated_distance(const FuncRep& f, const FuncRep& g, double lambda, const ExponentPair& p);

// ---- exact primitives on weighted step functions

// sup_v v * (sum of weights with value >= v)^{1/p}
double weighted_weak_norm(const std::vector<double>& values, const std::vector<double>& weights,
                          const Exponent& p);
double weighted_strong_norm(const std::vector<double>& values, const std::vector<double>& weights,
                            const Exponent& p);

// grid Phi(lambda); strict uses f > lambda, otherwise f >= lambda
double grid_phi(const GridFunc& g, const ExponentPair& p, double lambda, bool strict = true);
NormResult grid_mixed_weak(const GridFunc& g, const ExponentPair& p);
NormResult grid_iterated_weak(const GridFunc& g, const ExponentPair& p);
NormResult grid_mixed_norm(const GridFunc& g, const ExponentPair& p);
NormResult grid_half_mixed(const GridFunc& g, const ExponentPair& p, HalfVariant v);

// exact grid form of f when one exists (grids, grid tensors, and their
// scalings and same-node combinations)
std::optional<GridFunc> exact_grid(const FuncRep& f);

// radial c t^a on lo <= t <= hi in R^n
double power_weak_norm(double c, double a, double lo, double hi, int n, const Exponent& p);
double power_strong_norm(double c, double a, double lo, double hi, int n, const Exponent& p);

}  // namespace mixnorm
