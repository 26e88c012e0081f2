#pragma once

// Shared helpers for the verification suites: seeded RNG, random function
// generators, sweep aggregation, and the concurrent task runner.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixnorm/funcrep.hpp"
#include "mixnorm/verify.hpp"

namespace mixnorm::detail {

class Rng {
public:
  // independent stream per (master seed, tag)
  Rng(std::uint64_t seed, std::string_view tag);
  std::uint64_t next();
  double uniform();                    // [0, 1)
  double uniform(double a, double b);
  double log_uniform(double a, double b);
  double normal();
  int below(int n);                    // 0..n-1
  bool chance(double p) { return uniform() < p; }

private:
  std::uint64_t s_;
};

// radial nodes 0 = r_0 < r_1 < ... with r_1 in [0.05, 2] and ratios in [1.1, 3]
std::vector<double> random_nodes(Rng& rng, int cells);
// log-normal samples, some zeros, at least one positive value
std::vector<double> random_samples(Rng& rng, size_t count);
GridFunc random_grid(Rng& rng, int min_cells = 2, int max_cells = 10);
GridFunc random_grid_on(Rng& rng, const std::vector<double>& xn, const std::vector<double>& yn);
Grid1D random_grid1d(Rng& rng, int min_cells = 2, int max_cells = 10);

Exponent random_exponent(Rng& rng, bool allow_inf = true);
ExponentPair random_pair(Rng& rng, bool allow_inf = true);

// 1 to 4 power pieces with exponents in [-2, 2]
Func1D random_profile(Rng& rng);
// closed-form-capable catalog functions of several kinds
FuncRep random_catalog(Rng& rng);

// worst-case aggregation of many samples of the same inequality
class Sweep {
public:
  Sweep(std::string id, CheckKind kind, double tol) : id_(std::move(id)), kind_(kind), tol_(tol) {}
  void add(const NormResult& lhs, const NormResult& rhs, double constant, const std::string& note = {});
  void add(const CheckRecord& r);
  CheckRecord finish(const std::string& notes = {}) const;
  std::size_t samples() const { return n_; }

private:
  std::string id_;
  CheckKind kind_;
  double tol_;
  CheckRecord worst_;
  bool have_ = false;
  std::size_t n_ = 0, viol_ = 0, ind_ = 0;
};

NormResult exact_value(double v);   // closed-form style value
NormResult quad_value(double v);    // quadrature-backed value

// Tasks run concurrently; results are concatenated in task order. A task that
// throws contributes a failing record carrying the error text.
using Task = std::function<std::vector<CheckRecord>()>;
struct NamedTask {
  std::string id;
  Task run;
};
std::vector<CheckRecord> run_tasks(const std::vector<NamedTask>& tasks);
// combine partial sweep records sharing an id, keeping first-seen order
std::vector<CheckRecord> merge_by_id(const std::vector<CheckRecord>& parts);

// premise + growth fit for growing families, divergence for outright-infinite ones
std::vector<CheckRecord> family_checks(const std::string& id, const std::string& family,
                                       const std::optional<ExponentPair>& p,
                                       const std::optional<ExponentPair>& q, const std::vector<double>& Ns);

VerificationReport make_report(const std::string& suite, const SuiteConfig& c,
                               std::vector<CheckRecord> checks);

std::string fmt(double v);  // shortest round-trip, "inf" for infinity

}  // namespace mixnorm::detail
