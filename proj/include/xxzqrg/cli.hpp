#pragma once

// Command-line front end. Every numeric default lives in RunConfig so each
// figure is reproducible from the flags alone.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace xxzqrg {

enum ExitCode : int { kExitSuccess = 0, kExitUsage = 1, kExitFailure = 2 };

struct RunConfig {
  std::string command;
  double delta_min = 0.0;
  double delta_max = 3.0;
  int points = 301;
  std::vector<int> steps;  // empty: per-command default
  std::string measure = "all";
  std::string out;  // empty: stdout
  bool derivative = false;
  double delta0 = 1.1;
  int fit_min_step = 2;
  int fit_max_step = 12;
  double bracket_low = 1.0;
  double bracket_high = 2.0;
  std::optional<double> tolerance;
};

/// Parses "0..6", "2,4,8" or mixtures like "0..3,9". Throws InvalidArgument.
std::vector<int> parse_step_list(const std::string& text);

/// Runs one invocation; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xxzqrg
