#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gm/config.hpp"

namespace gm {

enum class Suite { geometry, resolvent, ppa, minimax, all };

std::optional<Suite> parse_suite(const std::string& s);

/// One invariant checked over a batch of instances. With an upper bound the
/// check passes when worst <= tolerance; with a lower bound, when worst > tolerance.
struct CheckResult {
  std::string name;
  std::size_t instances = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;
  bool passed = false;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  bool passed() const;
};

std::vector<SuiteResult> run_verify(Suite suite, std::uint64_t seed);

/// Deterministic report: no timings, fixed key order.
nlohmann::ordered_json verify_json(const std::vector<SuiteResult>& suites, std::uint64_t seed);

struct SolveOutcome {
  IterateTrace trace;
  nlohmann::ordered_json summary;
};

/// Runs the configured PPA experiment. Throws invalid-config when the config
/// has no initial point, grid-too-large when its grids exceed max_evals.
SolveOutcome run_solve(const ExperimentConfig& cfg, std::uint64_t max_evals = kDefaultMaxEvals);

/// grid_minimax on the config's grids, or the problem's own when none are given.
MinimaxReport run_oracle(const ExperimentConfig& cfg, std::uint64_t max_evals = kDefaultMaxEvals);

/// GM_MAX_EVALS when set, else the default. Throws invalid-config on a value
/// that is not a positive integer.
std::uint64_t max_evals_from_env();

}  // namespace gm
