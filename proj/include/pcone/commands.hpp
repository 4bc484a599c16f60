#pragma once

// Batch commands behind the CLI. Exit codes: 0 success, 1 malformed config
// or invalid omega/nest, 2 solver did not converge, 3 internal assertion
// (corridor or containment violation).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pcone {

struct CommandOptions {
  std::string out_dir = ".";
  bool route_radial = false;
  bool route_mc = false;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::vector<int> omega;                  // bounds override
  bool omega_given = false;                // an explicit (possibly bad) omega
  bool sweep = false;                      // bounds: per-atom CSV
  std::vector<std::vector<int>> nest;      // convergence override
};

int cmd_solve(const std::string& config_path, const CommandOptions& opts);
int cmd_evaluate(const std::string& config_path, const CommandOptions& opts);
int cmd_bounds(const std::string& config_path, const CommandOptions& opts);
int cmd_convergence(const std::string& config_path, const CommandOptions& opts);

}  // namespace pcone
