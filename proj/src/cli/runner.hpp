#pragma once

#include "cli/config.hpp"
#include "cli/report.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace casimir::cli {

constexpr const char* kToolVersion = "0.1.0";

enum ExitCode { exit_ok = 0, exit_numerical = 1, exit_config = 2 };

struct RunOptions {
  Mode mode = Mode::validate;
  std::string config_path;
  std::string out_dir = ".";
  int workers = 1;
};

struct RunOutput {
  std::string stem;  // output file name without extension
  Table table;
  nlohmann::json sidecar;
  std::vector<std::string> warnings;
  std::vector<std::string> lines;  // human-readable summary, one per row or criterion
  bool all_passed = true;          // validate mode only
};

/// Evaluates `count` independent jobs on up to `workers` threads. Results come
/// back in index order; the first failure in index order is rethrown.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& job);

/// Computes the rows of a parsed configuration. Library errors propagate.
RunOutput execute(const RunConfig& rc, int workers);

/// Full command: load, execute, write outputs, report. Returns the exit code.
int run(const RunOptions& opts, std::ostream& out, std::ostream& err);

} // namespace casimir::cli
