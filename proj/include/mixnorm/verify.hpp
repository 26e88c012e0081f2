#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixnorm/normcore.hpp"

namespace mixnorm {

enum class GrowthModel { log_power, power };
const char* growth_model_name(GrowthModel m);

struct GrowthFit {
  std::string family;
  GrowthModel model = GrowthModel::log_power;
  std::vector<double> params;  // N_1 < ... < N_k
  std::vector<double> values;
  double exponent = 0.0;
  double log_coeff = 0.0;      // values ~ exp(log_coeff) * X^exponent
  double residual = 0.0;       // RMS deviation in value units
  bool degenerate = false;     // constant data
};

// least squares of log(value) on log(ln N) or log(N)
GrowthFit fit_growth(const std::string& family, const std::vector<double>& params,
                     const std::vector<double>& values, GrowthModel model);
// exponent within 15% of the prediction and residual under 5% of the data range
bool growth_matches(const GrowthFit& fit, double predicted);

enum class CheckKind { upper_bound, lower_bound, equality, divergence, finite, growth };
enum class Outcome { pass, fail, indeterminate };
const char* check_kind_name(CheckKind k);
const char* outcome_name(Outcome o);

struct CheckRecord {
  std::string id;
  CheckKind kind = CheckKind::upper_bound;
  NormResult lhs, rhs;
  double constant = 1.0;
  double margin = 0.0;  // (constant*rhs - lhs) / max(lhs, constant*rhs), sign per kind
  double tol_rel = 1e-9;
  Outcome outcome = Outcome::pass;
  // sweeps keep the worst sample and count the rest
  std::size_t samples = 1;
  std::size_t violations = 0;
  std::size_t indeterminate = 0;
  std::optional<GrowthFit> fit;
  double predicted = 0.0;
  std::string notes;
};

// Build a record and set margin/outcome.
CheckRecord make_check(std::string id, CheckKind kind, const NormResult& lhs, const NormResult& rhs,
                       double constant, double tol_rel, std::string notes = {});
CheckRecord make_growth_check(std::string id, const GrowthFit& fit, double predicted,
                              std::string notes = {});

struct SuiteConfig {
  std::uint64_t seed = 7;
  double tol_exact = 1e-9;
  double tol_quad = 2e-2;
  std::vector<double> Ns{1e2, 1e4, 1e6, 1e8};
  int functions = 500;        // random grids in sweeps
  int exponent_pairs = 50;
  int holder_pairs = 20;
  int holder_functions = 200;
  int hls_pairs = 100;
  int catalog_functions = 30;
};
std::string config_to_json(const SuiteConfig& c);
// missing keys keep their defaults; throws SpecParse
SuiteConfig config_from_json(const std::string& text);

struct VerificationReport {
  std::string suite;
  SuiteConfig config;
  std::vector<CheckRecord> checks;
  std::size_t passed() const;
  std::size_t failed() const;
  std::size_t indeterminate() const;
};

VerificationReport suite_norm_comparisons(const SuiteConfig& c);
VerificationReport suite_holder(const SuiteConfig& c);
VerificationReport suite_interpolation(const SuiteConfig& c);
VerificationReport suite_geometric(const SuiteConfig& c);
VerificationReport suite_convergence(const SuiteConfig& c);
VerificationReport suite_hls(const SuiteConfig& c);

const std::vector<std::string>& suite_names();
// name from suite_names() or "all"; throws UnknownSuite
VerificationReport run_suite(const std::string& name, const SuiteConfig& c);

// byte-deterministic JSON, "report_version": 1
std::string report_to_json(const VerificationReport& r);
std::string norm_result_to_json(const NormResult& r);

}  // namespace mixnorm
