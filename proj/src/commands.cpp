#include <cmath>
#include <cstdlib>

#include "gm/harness.hpp"

namespace gm {

using nlohmann::ordered_json;

namespace {

ordered_json point_pair(const ProductPoint& z) {
  ordered_json j;
  j["x"] = z.x.coords;
  j["y"] = z.y.coords;
  return j;
}

GridSpec grid_or(const std::optional<GridSpec>& g, const GridSpec& fallback) { return g ? *g : fallback; }

}  // namespace

SolveOutcome run_solve(const ExperimentConfig& cfg, std::uint64_t max_evals) {
  if (!cfg.initial_point) throw Error(ErrorKind::invalid_config, "solve needs initial_point");
  const SaddleProblem& p = *cfg.problem;
  std::optional<ProductPoint> reference = cfg.reference;
  if (!reference && p.known_saddle) reference = p.known_saddle;

  SolveOutcome out;
  out.trace = run_ppa(p, *cfg.initial_point, cfg.schedule, cfg.stop, cfg.inner, reference);
  const IterateTrace& tr = out.trace;

  ordered_json& s = out.summary;
  s["problem"] = p.name;
  s["schedule"] = cfg.schedule.describe();
  s["initial_point"] = point_pair(*cfg.initial_point);
  s["iterations"] = tr.step_count();
  s["stop_reason"] = to_string(tr.stop);
  s["truncated"] = tr.truncated;
  if (!tr.message.empty()) s["message"] = tr.message;
  s["final_point"] = point_pair(tr.iterates.back());
  s["final_step"] = tr.steps.empty() ? ordered_json() : ordered_json(tr.steps.back());
  s["final_residual"] = tr.residuals.empty() ? ordered_json() : ordered_json(tr.residuals.back());

  const auto bv = boundedness_verdict(p.space, tr, cfg.boundedness_cap, cfg.stop.step_tol);
  s["verdict"] = to_string(bv.verdict);
  s["boundedness_cap"] = cfg.boundedness_cap;
  s["max_distance_from_start"] = bv.max_distance;
  s["tail_diameter"] = bv.tail_diameter;
  s["first_escape"] = bv.first_escape ? ordered_json(*bv.first_escape) : ordered_json();

  if (!tr.steps.empty()) {
    const auto rs = residual_series(tr);
    s["residual_series"] = {{"monotone", rs.monotone}, {"max_increase", rs.max_increase}, {"tail", rs.tail},
                            {"vanishing", rs.vanishing}};
  }
  if (reference) {
    const auto fe = fejer_check(p.space, tr, *reference);
    s["reference"] = point_pair(*reference);
    s["fejer"] = {{"passed", fe.passed}, {"max_violation", fe.max_violation}, {"slack", fe.slack}};
  }
  if (cfg.grid_x && cfg.grid_y) {
    const auto rep = grid_minimax(p, *cfg.grid_x, *cfg.grid_y, max_evals);
    const auto cmp = oracle_vs_solver(p, rep, tr, cfg.boundedness_cap);
    s["oracle"] = {{"gap", rep.gap},
                   {"maxmin", rep.maxmin},
                   {"minmax", rep.minmax},
                   {"candidate", point_pair(rep.saddle_candidate())},
                   {"distance", cmp.distance},
                   {"value_difference", cmp.value_difference}};
  }
  return out;
}

MinimaxReport run_oracle(const ExperimentConfig& cfg, std::uint64_t max_evals) {
  const SaddleProblem& p = *cfg.problem;
  return grid_minimax(p, grid_or(cfg.grid_x, p.grid_x), grid_or(cfg.grid_y, p.grid_y), max_evals);
}

std::uint64_t max_evals_from_env() {
  const char* v = std::getenv("GM_MAX_EVALS");
  if (!v || !*v) return kDefaultMaxEvals;
  char* end = nullptr;
  const double d = std::strtod(v, &end);
  // Accepts 100000000 as well as 1e8.
  if (*end != '\0' || !(d >= 1.0) || d > 1.8e19 || d != std::floor(d)) {
    throw Error(ErrorKind::invalid_config, std::string("GM_MAX_EVALS must be a positive integer, got '") + v + "'");
  }
  return static_cast<std::uint64_t>(d);
}

}  // namespace gm
