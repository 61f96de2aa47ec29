// Runs the ten acceptance criteria and prints one line per criterion.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "cslab/acceptance.hpp"

int main(int argc, char** argv) {
  cslab::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--only" && i + 1 < argc) {
      opts.only.push_back(cslab::criterion_id(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance_suite [--seed S] [--only NAME]...\n");
      return 2;
    }
  }
  int failed = 0;
  for (const auto& [id, name] : cslab::criterion_names()) {
    if (!opts.only.empty()) {
      bool wanted = false;
      for (int o : opts.only) wanted = wanted || o == id;
      if (!wanted) continue;
    }
    const cslab::CriterionResult r = cslab::run_criterion(id, opts);
    std::printf("%s\n", cslab::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
