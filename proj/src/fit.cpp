#include <algorithm>
#include <cmath>

#include "mixnorm/verify.hpp"

namespace mixnorm {

const char* growth_model_name(GrowthModel m) {
  return m == GrowthModel::log_power ? "log_power" : "power";
}

GrowthFit fit_growth(const std::string& family, const std::vector<double>& params,
                     const std::vector<double>& values, GrowthModel model) {
  if (params.size() != values.size()) throw Error(ErrorCode::InvalidArgument, "fit: size mismatch");
  if (params.size() < 4) throw Error(ErrorCode::InvalidArgument, "fit: need at least 4 parameter values");
  for (size_t i = 0; i < params.size(); ++i) {
    if (!(params[i] > 0) || !std::isfinite(params[i]))
      throw Error(ErrorCode::InvalidArgument, "fit: parameters must be positive and finite");
    if (i > 0 && !(params[i] > params[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "fit: parameters must increase");
    if (!(values[i] > 0) || !std::isfinite(values[i]))
      throw Error(ErrorCode::InvalidArgument, "fit: values must be positive and finite");
  }
  if (params.back() / params.front() < 1e3 * (1 - 1e-12))
    throw Error(ErrorCode::InvalidArgument, "fit: parameters must span 3 decades");
  if (model == GrowthModel::log_power && !(params.front() > 1))
    throw Error(ErrorCode::InvalidArgument, "fit: log model needs N > 1");

  GrowthFit g;
  g.family = family;
  g.model = model;
  g.params = params;
  g.values = values;

  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi - *lo <= 1e-12 * *hi) {
    g.degenerate = true;
    g.log_coeff = std::log(*hi);
    return g;
  }

  const size_t k = params.size();
  std::vector<double> X(k), Y(k);
  for (size_t i = 0; i < k; ++i) {
    X[i] = model == GrowthModel::log_power ? std::log(std::log(params[i])) : std::log(params[i]);
    Y[i] = std::log(values[i]);
  }
  double mx = 0, my = 0;
  for (size_t i = 0; i < k; ++i) { mx += X[i]; my += Y[i]; }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < k; ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
  }
  g.exponent = sxy / sxx;
  g.log_coeff = my - g.exponent * mx;
  double ss = 0;
  for (size_t i = 0; i < k; ++i) {
    double d = values[i] - std::exp(g.log_coeff + g.exponent * X[i]);
    ss += d * d;
  }
  g.residual = std::sqrt(ss / k);
  return g;
}

bool growth_matches(const GrowthFit& fit, double predicted) {
  if (!std::isfinite(fit.exponent)) return false;
  if (std::fabs(fit.exponent - predicted) > 0.15 * std::fabs(predicted) + 1e-12) return false;
  auto [lo, hi] = std::minmax_element(fit.values.begin(), fit.values.end());
  double range = *hi - *lo;
  if (range <= 0) return predicted == 0.0;
  return fit.residual < 0.05 * range;
}

}  // namespace mixnorm
