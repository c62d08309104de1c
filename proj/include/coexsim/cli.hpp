#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coexsim/engine.hpp"

namespace coexsim {

// Stable exit codes shared by all subcommands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_scenario_error = 2;
inline constexpr int exit_io_error = 3;
inline constexpr int exit_invariant_error = 4;

inline constexpr long default_collision_window_slots = 2;

struct run_spec {
  std::string scenario_path;
  std::vector<sim_policy> policies;
  std::vector<std::uint64_t> seeds;
  std::vector<double> utilizations; // empty = use the scenario's grid
  std::string out_dir;
  int workers = 0; // 0 = hardware concurrency
};

/// "1..20" or "3,5,9" or a mix of both.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

/// Comma list of policy names; throws scenario_error on unknown names.
std::vector<sim_policy> parse_policy_list(const std::string& text);

/// Runs the (policy x seed x utilization) grid and persists one result set.
int cmd_run(const run_spec& spec);

/// Rebuilds summary tables, CDF exports and figures from persisted CSVs.
int cmd_report(const std::vector<std::string>& result_dirs, const std::string& out_dir,
               double utilization = -1.0);

/// Loads and validates a scenario, printing filled defaults and warnings.
int cmd_validate(const std::string& scenario_path);

} // namespace coexsim
