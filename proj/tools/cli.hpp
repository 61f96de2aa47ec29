#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace cslab::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kConstraint = 3, kVerification = 4 };

// Everything a run depends on; serializable so a run can be replayed from JSON.
struct RunConfig {
  std::string command;
  std::string fixture;
  std::string input;
  std::string output;  // directory; empty prints the main artifact to stdout
  std::optional<std::string> sign;
  std::optional<double> p;
  double p_im = 0.0;
  int K = 256;
  // wave
  std::string family = "pole";
  int N = 1;
  int m = 3;
  std::optional<double> alpha;
  double beta = 1.0;
  double C = 1.0;
  double theta = 0.0;
  // finitegap
  int m0 = 0;
  std::vector<std::string> poles;  // "re,im:mult"
  std::optional<std::string> a;    // "re,im"
  // evolve
  double T = 0.5;
  double dt = 1e-4;
  int record_every = 100;
  // verify
  std::uint64_t seed = 20261016;
  std::vector<std::string> only;
  // tolerance overrides
  double tol = 1e-7;
};

nlohmann::json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cslab::cli
