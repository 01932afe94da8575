// geodesic-minimax: verify invariants, run PPA experiments, brute-force minimax.
//
// Exit codes: 0 ok, 1 a verify check failed, 2 usage or config error,
// 3 inner solver did not converge, 4 grid too large.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "gm/format.hpp"
#include "gm/harness.hpp"
#include "gm/io.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2, no_convergence = 3, too_large = 4 };

struct Args {
  std::string suite = "all";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string config;
  std::string out = ".";
};

std::string coords(const gm::Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + gm::shortest(p[i]);
  return s + ")";
}

fs::path out_dir(const Args& a) {
  fs::path d(a.out);
  fs::create_directories(d);
  return d;
}

int cmd_verify(const Args& a) {
  const auto suite = gm::parse_suite(a.suite);
  if (!suite) {
    std::cerr << "unknown suite '" << a.suite << "' (expected geometry, resolvent, ppa, minimax or all)\n";
    return usage;
  }
  const auto results = gm::run_verify(*suite, a.seed);
  const auto report = gm::verify_json(results, a.seed);
  gm::write_atomic(out_dir(a) / "verify.json", gm::dump(report));
  for (const auto& s : results) {
    for (const auto& c : s.checks) {
      std::cout << (c.passed ? "pass " : "FAIL ") << s.name << ' ' << c.name << " worst=" << gm::shortest(c.worst)
                << (c.lower_bound ? " > " : " <= ") << gm::shortest(c.tolerance) << '\n';
    }
  }
  const bool passed = report["passed"].get<bool>();
  std::cout << (passed ? "all checks passed\n" : "some checks failed\n");
  return passed ? ok : check_failed;
}

gm::ExperimentConfig load(const Args& a) {
  if (a.config.empty()) throw gm::Error(gm::ErrorKind::invalid_config, "--config PATH is required");
  auto cfg = gm::load_config(a.config);
  if (a.seed_given) cfg.seed = a.seed;
  return cfg;
}

int cmd_solve(const Args& a) {
  const auto cfg = load(a);
  const auto max_evals = gm::max_evals_from_env();
  const auto res = gm::run_solve(cfg, max_evals);
  const fs::path dir = out_dir(a);
  gm::write_atomic(dir / cfg.output.trace, gm::trace_csv(*cfg.problem, res.trace));
  gm::write_atomic(dir / cfg.output.summary, gm::dump(res.summary));
  std::cout << "iterations " << res.trace.step_count() << ", stop " << gm::to_string(res.trace.stop) << ", verdict "
            << res.summary["verdict"].get<std::string>() << '\n';
  if (res.trace.truncated) {
    std::cerr << res.trace.message << '\n';
    return no_convergence;
  }
  return ok;
}

int cmd_oracle(const Args& a) {
  const auto cfg = load(a);
  const auto rep = gm::run_oracle(cfg, gm::max_evals_from_env());
  gm::write_atomic(out_dir(a) / cfg.output.report, gm::dump(gm::minimax_json(*cfg.problem, rep)));
  std::cout << "maxmin " << gm::shortest(rep.maxmin) << " at x=" << coords(rep.maxmin_x) << '\n'
            << "minmax " << gm::shortest(rep.minmax) << " at y=" << coords(rep.minmax_y) << '\n'
            << "gap " << gm::shortest(rep.gap) << (rep.boxed ? " (boxed grid)" : "") << '\n';
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximal point and minimax experiments on CAT(0) spaces", "geodesic-minimax"};
  app.require_subcommand(1, 1);
  Args a;
  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  auto* solve = app.add_subcommand("solve", "Run the proximal point algorithm from a config");
  auto* oracle = app.add_subcommand("oracle", "Brute-force grid minimax from a config");
  for (auto* sub : {verify, solve, oracle}) {
    sub->add_option("--seed", a.seed, "Random seed")->each([&](const std::string&) { a.seed_given = true; });
    sub->add_option("--out", a.out, "Output directory");
  }
  verify->add_option("--suite", a.suite, "geometry, resolvent, ppa, minimax or all");
  solve->add_option("--config", a.config, "Experiment config (JSON)");
  oracle->add_option("--config", a.config, "Experiment config (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (verify->parsed()) return cmd_verify(a);
    if (solve->parsed()) return cmd_solve(a);
    return cmd_oracle(a);
  } catch (const gm::Error& e) {
    std::cerr << e.what() << '\n';
    switch (e.kind()) {
      case gm::ErrorKind::grid_too_large: return too_large;
      case gm::ErrorKind::no_convergence: return no_convergence;
      default: return usage;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return usage;
  }
}
