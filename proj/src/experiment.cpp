#include "mgraal/experiment.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mgraal/errors.hpp"
#include "mgraal/graph.hpp"
#include "mgraal/logreg.hpp"
#include "mgraal/matrix_game.hpp"

namespace mgraal {

GammaSchedule game_gamma_defaults() { return {0.0007, 7.5, 1.1}; }
GammaSchedule logreg_gamma_defaults() { return {0.0001, 7.2, 1.01}; }

void ExperimentConfig::validate() const {
  if (algorithms.empty()) throw ConfigError("no algorithms requested");
  if (!(tol > 0.0)) throw ConfigError("--tol must be positive");
  if (max_iter < 1) throw ConfigError("--max-iter must be at least 1");
  if (!(eta1 > 0.0 && eta1 < eta0 && eta0 < kGoldenRatio / 2.0)) {
    throw ConfigError("need 0 < eta1 < eta0 < phi/2 (phi/2 = 0.809...)");
  }
  gamma.validate();
  if (problem == ProblemKind::Game && !graph_path) {
    if (k < 2) throw ConfigError("--k must be at least 2");
    if (!(edge_prob > 0.0 && edge_prob <= 1.0)) {
      throw ConfigError("--edge-prob must lie in (0, 1]");
    }
  }
  if (problem == ProblemKind::LogReg && data_path.empty()) {
    throw ConfigError("logreg needs --data <path>");
  }
}

SolverConfig ExperimentConfig::solver_config(Algorithm algorithm) const {
  SolverConfig sc;
  sc.algorithm = algorithm;
  sc.tol = tol;
  sc.max_iter = max_iter;
  sc.seed = seed;
  sc.eta0 = eta0;
  sc.eta1 = eta1;
  sc.gamma = gamma;
  return sc;
}

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

void write_csv(const RunResult& run, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const RunRecord& r : run.records) {
    out << r.iter << ',' << format_real(r.elapsed_seconds) << ',' << format_real(r.lambda)
        << ',' << format_real(r.residual_norm) << ',' << format_real(r.merit) << '\n';
  }
}

void write_branch_trace(const RunResult& run, std::ostream& out) {
  out << "iter,branch\n";
  for (std::size_t i = 0; i < run.branches.size() && i < run.records.size(); ++i) {
    out << run.records[i].iter << ','
        << (run.branches[i] == StepBranch::Decrease ? "decrease" : "increase") << '\n';
  }
}

void print_defaults(std::ostream& out) {
  out << "# modified golden-ratio method\n"
         "eta1=0.75 # published experiment setting\n"
         "eta0=0.8 # published experiment setting\n"
         "lambda0=phi/2*|w1-w0|/|A(w1)-A(w0)| # published experiment setting\n"
         "perturbation=1e-9 # published setting (w1 = w0 + 1e-9 random)\n"
         "gamma.r=0.0007 # published matrix-game setting\n"
         "gamma.s=7.5 # published matrix-game setting\n"
         "gamma.t=1.1 # published matrix-game setting\n"
         "logreg.gamma.r=0.0001 # published ijcnn1/a9a setting\n"
         "logreg.gamma.s=7.2 # published ijcnn1/a9a setting\n"
         "logreg.gamma.t=1.01 # published ijcnn1/a9a setting\n"
         "logreg.duke.gamma.r=0.0005 # published duke setting\n"
         "logreg.duke.gamma.s=7 # published duke setting\n"
         "logreg.duke.gamma.t=1.1 # published duke setting\n"
         "logreg.beta_bar=0.005*|C^T c|_inf # published experiment setting\n"
         "# fixed-step B-GRAAL\n"
         "bgraal.lambda=phi/(2L) # published experiment setting\n"
         "# adaptive baseline (opt-in)\n"
         "agraal.phi=1.5 # published experiment setting\n"
         "agraal.rho=1/phi+1/phi^2 # published experiment setting\n"
         "agraal.lambda_max=1e6 # published experiment setting\n"
         "# harness\n"
         "tol=1e-6 # harness default\n"
         "max_iter=100000 # harness default\n"
         "game.k=10 # harness default\n"
         "game.edge_prob=0.3 # harness default (graph model not published)\n"
         "seed=0 # harness default\n";
}

namespace {

Problem build_problem(const ExperimentConfig& config) {
  if (config.problem == ProblemKind::Game) {
    Graph g;
    if (config.graph_path) {
      std::ifstream in(*config.graph_path);
      if (!in) throw std::runtime_error("cannot open '" + *config.graph_path + "'");
      g = read_edge_list(in);
    } else {
      g = random_connected_graph(config.k, config.edge_prob, config.seed);
    }
    return make_problem(MatrixGame(graph_distance_matrix(g)));
  }
  return make_problem(LogRegModel(read_libsvm_file(config.data_path)));
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  body(f);
  if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config, std::ostream& out,
                                 std::ostream& err) {
  ExperimentOutcome outcome;
  std::optional<Problem> problem;
  try {
    config.validate();
    problem.emplace(build_problem(config));
    std::filesystem::create_directories(config.output_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    outcome.status = 2;
    return outcome;
  }

  for (Algorithm algo : config.algorithms) {
    RunResult result;
    try {
      result = run(*problem, config.solver_config(algo));
      const std::filesystem::path dir(config.output_path);
      const auto csv = dir / (std::string(to_string(algo)) + ".csv");
      write_file(csv, [&](std::ostream& f) { write_csv(result, f); });
      outcome.csv_paths.push_back(csv.string());
      if (config.trace_branches && algo == Algorithm::Modified) {
        write_file(dir / (std::string(to_string(algo)) + "_branches.csv"),
                   [&](std::ostream& f) { write_branch_trace(result, f); });
      }
    } catch (const std::exception& e) {
      err << "error: " << to_string(algo) << ": " << e.what() << '\n';
      outcome.status = 2;
      return outcome;
    }
    const double final_residual =
        result.records.empty() ? 0.0 : result.records.back().residual_norm;
    out << to_string(algo) << ": iterations=" << result.records.size()
        << " residual=" << format_real(final_residual)
        << " seconds=" << format_real(result.total_seconds)
        << " converged=" << (result.converged() ? "yes" : "no");
    if (!result.failure.empty()) out << " failure=\"" << result.failure << '"';
    out << '\n';
    if (!result.converged()) outcome.status = std::max(outcome.status, 1);
    outcome.runs.push_back(std::move(result));
  }
  return outcome;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Golden-ratio solvers for mixed variational inequalities"};
  app.require_subcommand(1);

  ExperimentConfig config;
  std::string algos = "modified,bgraal";
  double gamma_r = 0.0;
  double gamma_s = 0.0;
  double gamma_t = 0.0;
  std::string graph_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Seed for instance generation and w1");
    sub->add_option("--algos", algos, "Comma list of modified,bgraal,agraal");
    sub->add_option("--tol", config.tol, "Stop when |J_k| <= tol");
    sub->add_option("--max-iter", config.max_iter, "Iteration cap");
    sub->add_option("--eta0", config.eta0, "Step-size test threshold");
    sub->add_option("--eta1", config.eta1, "Step-size decrease factor");
    sub->add_option("--gamma-r", gamma_r, "gamma_k numerator scale");
    sub->add_option("--gamma-s", gamma_s, "gamma_k log exponent");
    sub->add_option("--gamma-t", gamma_t, "gamma_k decay exponent");
    sub->add_option("--out", config.output_path, "Directory for the CSV traces");
    sub->add_flag("--trace-branches", config.trace_branches,
                  "Also write the step-size branch taken per iteration");
  };

  CLI::App* game = app.add_subcommand("game", "Server-placement matrix game");
  add_common(game);
  game->add_option("--k", config.k, "Number of graph vertices");
  game->add_option("--edge-prob", config.edge_prob, "Extra-edge probability");
  game->add_option("--graph", graph_path, "Edge-list file (u v per line, 0-based)");

  CLI::App* logreg = app.add_subcommand("logreg", "Sparse logistic regression");
  add_common(logreg);
  logreg->add_option("--data", config.data_path, "Plain-text LIBSVM file")->required();

  CLI::App* defaults = app.add_subcommand("defaults", "Print default parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 2;
  }

  if (defaults->parsed()) {
    print_defaults(out);
    return 0;
  }

  config.problem = logreg->parsed() ? ProblemKind::LogReg : ProblemKind::Game;
  config.gamma = config.problem == ProblemKind::Game ? game_gamma_defaults()
                                                     : logreg_gamma_defaults();
  const CLI::App* active = logreg->parsed() ? logreg : game;
  if (active->get_option("--gamma-r")->count()) config.gamma.r = gamma_r;
  if (active->get_option("--gamma-s")->count()) config.gamma.s = gamma_s;
  if (active->get_option("--gamma-t")->count()) config.gamma.t = gamma_t;
  if (!graph_path.empty()) config.graph_path = graph_path;

  config.algorithms.clear();
  std::stringstream ss(algos);
  for (std::string name; std::getline(ss, name, ',');) {
    const auto algo = parse_algorithm(name);
    if (!algo) {
      err << "error: unknown algorithm '" << name << "'\n";
      return 2;
    }
    config.algorithms.push_back(*algo);
  }
  return run_experiment(config, out, err).status;
}

}  // namespace mgraal
