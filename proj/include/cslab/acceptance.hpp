#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cslab {

struct AcceptanceOptions {
  std::uint64_t seed = 20261016;
  std::vector<int> only;  // empty runs every criterion
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values against thresholds
  double seconds = 0.0;
};

// (id, short name) for the ten criteria, in order.
const std::vector<std::pair<int, std::string>>& criterion_names();
// Accepts "7" or "isospectral"; throws InvalidParameter otherwise.
int criterion_id(const std::string& key);

CriterionResult run_criterion(int id, const AcceptanceOptions& opts);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);
std::string format_result(const CriterionResult& r);

}  // namespace cslab
