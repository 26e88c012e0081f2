#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixnorm/verify.hpp"

namespace mixnorm {

struct FamilyInfo {
  std::string id;
  bool uses_N = true;        // false for families whose left side is infinite outright
  bool needs_p = false;
  bool needs_q = true;
  std::string description;
};
const std::vector<FamilyInfo>& counterexample_families();

struct FamilyPoint {
  double N = 0.0;            // 0 when the family has no parameter
  NormResult value;          // the quantity that blows up
  NormResult bound;          // the side that stays bounded
};

struct CounterexampleRun {
  std::string family;
  std::vector<FamilyPoint> points;
  std::optional<GrowthFit> fit;
  double predicted = 0.0;
  bool declared_infinite = false;
  std::string notes;
};

// Throws UnknownFamily, InvalidArgument (missing or bad exponents, empty Ns).
CounterexampleRun run_counterexample(const std::string& family, const std::optional<ExponentPair>& p,
                                     const std::optional<ExponentPair>& q,
                                     const std::vector<double>& Ns);

// byte-deterministic JSON, same number conventions as reports
std::string counterexample_to_json(const CounterexampleRun& r);

}  // namespace mixnorm
