#pragma once
// Experiment suites behind the CLI subcommands. Each suite reads its keys
// from the config, runs replicas through the worker pool, writes records +
// summary + manifest into the output directory, and reports pass/fail.

#include <cstdint>
#include <string>

#include "erw/config.hpp"

namespace erw {

struct SuiteIO {
  std::string out_dir = "out";
  int workers = 0;          // 0 = hardware concurrency
  bool seed_override = false;
  uint64_t seed = 0;
};

struct SuiteResult {
  bool pass = true;
  std::string summary_json;
};

// dispatches on the suite key; throws ConfigError for config problems
SuiteResult run_suite(const std::string& suite, Config& cfg, const SuiteIO& io);

// full experiment: suite + records + summary + manifest; returns the process
// exit code (0 pass, 1 suite failure, 2 config error)
int run_experiment(const std::string& suite, const std::string& config_path, const SuiteIO& io);

}  // namespace erw
