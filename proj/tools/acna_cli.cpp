#include "acna/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <random>

namespace {

using namespace acna;

struct CommonAnaOptions {
  AnaSettings ana;
  void attach(CLI::App* cmd) {
    cmd->add_option("--step", ana.step_size, "Euler step size");
    cmd->add_option("--max-steps", ana.max_steps, "step budget per ANA run");
    cmd->add_option("--stationarity-tol", ana.stationarity_tol,
                    "velocity norm threshold for critical-point declaration");
    cmd->add_option("--stationarity-window", ana.stationarity_window,
                    "consecutive quiet steps required");
    cmd->add_option("--feasibility-tol", ana.feasibility_tol,
                    "violation treated as zero below this");
    cmd->add_option("--nu", ana.nu, "gate parameter nu in [0,1)");
    cmd->add_option("--trace-stride", ana.trace_stride,
                    "record every Nth trace sample");
  }
};

int run_solve(const std::string& game_path, std::uint64_t seed,
              const SwarmSettings& swarm_in, const CommonAnaOptions& ana_opts,
              const std::string& out_path, const std::string& trace_dir) {
  GameTensor game = load_game_file(game_path);
  SwarmSettings swarm = swarm_in;
  swarm.seed = seed;
  swarm.collect_traces = !trace_dir.empty();

  SolveReport report;
  report.seed = seed;
  report.result = run_acna(game, swarm, ana_opts.ana);

  const std::string doc = solve_report_to_json(game, report);
  if (out_path.empty()) {
    std::cout << doc;
  } else {
    write_text_file(out_path, doc);
  }
  if (!trace_dir.empty()) {
    std::filesystem::create_directories(trace_dir);
    for (size_t i = 0; i < report.result.traces.size(); ++i) {
      write_trace_file(trace_dir + "/particle_" + std::to_string(i) + ".csv",
                       report.result.traces[i], ana_opts.ana.trace_stride);
    }
  }
  return (report.result.ran && report.result.best.verdict) ? 0 : 1;
}

int run_verify(const std::string& game_path, const std::string& profile_path) {
  GameTensor game = load_game_file(game_path);
  Vector x = load_profile_file(profile_path, game.total_strategies());
  EquilibriumCertificate cert = certify(game, x);
  std::cout << certificate_to_json(game, cert);
  return cert.verdict ? 0 : 1;
}

int run_oracle(const std::string& game_path, const std::string& mode,
               int resolution) {
  GameTensor game = load_game_file(game_path);
  if (mode == "pure") {
    const auto equilibria = enumerate_pure_ne(game);
    if (equilibria.empty()) {
      std::cout << "{\n  \"pure_ne\": []\n}\n";
      std::cerr << "no pure NE\n";
      return 1;
    }
    std::cout << "{\n  \"pure_ne\": [\n";
    for (size_t k = 0; k < equilibria.size(); ++k) {
      std::cout << "    [";
      for (size_t i = 0; i < equilibria[k].size(); ++i) {
        std::cout << equilibria[k][i] << (i + 1 < equilibria[k].size() ? "," : "");
      }
      std::cout << "]" << (k + 1 < equilibria.size() ? "," : "") << "\n";
    }
    std::cout << "  ]\n}\n";
    return 0;
  }
  if (mode == "support2") {
    const auto equilibria = two_player_support_enumeration(game);
    for (const Vector& x : equilibria) {
      std::cout << certificate_to_json(game, certify(game, x));
    }
    return equilibria.empty() ? 1 : 0;
  }
  if (mode == "grid") {
    const GridScanResult best = grid_regret_scan(game, resolution);
    EquilibriumCertificate cert = certify(game, best.x);
    std::cout << certificate_to_json(game, cert);
    return cert.verdict ? 0 : 1;
  }
  std::cerr << "unknown oracle mode: " << mode << "\n";
  return 2;
}

int run_ana_command(const std::string& game_path, std::uint64_t seed,
                    const std::string& x0_path, const CommonAnaOptions& ana_opts,
                    const std::string& trace_path, double init_lo,
                    double init_hi) {
  GameTensor game = load_game_file(game_path);
  ConstraintGeometry geom(game.strategy_counts());
  Vector x0;
  if (!x0_path.empty()) {
    x0 = load_profile_file(x0_path, game.total_strategies());
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(init_lo, init_hi);
    x0.resize(game.total_strategies());
    for (int j = 0; j < x0.size(); ++j) x0[j] = dist(rng);
  }

  AnaResult run = run_to_critical(game, geom, x0, ana_opts.ana);
  if (!trace_path.empty()) {
    write_trace_file(trace_path, run.trace, ana_opts.ana.trace_stride);
  }
  EquilibriumCertificate cert = certify(game, run.x);
  std::cout << "{\n  \"converged\": " << (run.converged ? "true" : "false")
            << ",\n  \"steps\": " << run.steps
            << ",\n  \"zeta\": " << run.final_zeta << ",\n  \"entry_time\": ";
  if (run.trace.entry_time) {
    std::cout << *run.trace.entry_time;
  } else {
    std::cout << "null";
  }
  std::cout << ",\n  \"certificate\":\n" << certificate_to_json(game, cert)
            << "}\n";
  return run.converged && cert.verdict ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact mixed-strategy Nash equilibria of N-player normal-form "
               "games via an adaptive neurodynamic flow with particle-swarm "
               "multi-start"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "run the full multi-start solver");
  std::string game_path, out_path, trace_dir;
  std::uint64_t seed = 0;
  SwarmSettings swarm;
  CommonAnaOptions solve_ana;
  solve->add_option("game", game_path, "game file")->required();
  solve->add_option("--seed", seed, "master RNG seed")->required();
  solve->add_option("--out", out_path, "result document path (default stdout)");
  solve->add_option("--trace-dir", trace_dir, "write per-particle traces here");
  solve->add_option("--particles", swarm.swarm_size, "swarm size r");
  solve->add_option("--c1", swarm.c1, "cognitive weight");
  solve->add_option("--c2", swarm.c2, "social weight");
  solve->add_option("--stall-tol", swarm.stall_tol, "stall tolerance");
  solve->add_option("--stall-limit", swarm.stall_limit, "stall limit");
  solve->add_option("--max-iterations", swarm.max_iterations,
                    "outer iteration budget");
  solve->add_option("--global-tol", swarm.global_tol,
                    "early-success objective threshold");
  solve->add_option("--init-lo", swarm.init_lo, "initialization range low end");
  solve->add_option("--init-hi", swarm.init_hi, "initialization range high end");
  solve->add_flag("--update-from-raw",
                  [&swarm](std::int64_t) { swarm.update_from_critical_point = false; },
                  "feed the pre-ANA position into the velocity update");
  solve_ana.attach(solve);

  // verify
  auto* verify = app.add_subcommand("verify", "certify a candidate profile");
  std::string verify_game, verify_profile;
  verify->add_option("game", verify_game, "game file")->required();
  verify->add_option("profile", verify_profile, "candidate profile file")
      ->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "ground-truth checks on small games");
  std::string oracle_game, oracle_mode;
  int resolution = 1;
  oracle->add_option("game", oracle_game, "game file")->required();
  oracle->add_option("--mode", oracle_mode, "pure | support2 | grid")->required();
  oracle->add_option("--resolution", resolution, "grid resolution (grid mode)");

  // ana
  auto* ana = app.add_subcommand("ana", "single neurodynamic run with trace");
  std::string ana_game, ana_x0, ana_trace;
  std::uint64_t ana_seed = 0;
  double ana_lo = -10.0, ana_hi = 10.0;
  CommonAnaOptions ana_opts;
  ana->add_option("game", ana_game, "game file")->required();
  ana->add_option("--seed", ana_seed, "seed for the random start")->required();
  ana->add_option("--x0", ana_x0, "profile file with the start point");
  ana->add_option("--trace", ana_trace, "trace CSV output path");
  ana->add_option("--init-lo", ana_lo, "random start range low end");
  ana->add_option("--init-hi", ana_hi, "random start range high end");
  ana_opts.attach(ana);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      return run_solve(game_path, seed, swarm, solve_ana, out_path, trace_dir);
    }
    if (verify->parsed()) return run_verify(verify_game, verify_profile);
    if (oracle->parsed()) return run_oracle(oracle_game, oracle_mode, resolution);
    if (ana->parsed()) {
      return run_ana_command(ana_game, ana_seed, ana_x0, ana_opts, ana_trace,
                             ana_lo, ana_hi);
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
