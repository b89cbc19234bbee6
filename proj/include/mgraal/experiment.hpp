#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mgraal/solver.hpp"

namespace mgraal {

enum class ProblemKind { Game, LogReg };

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::Game;
  // game
  std::size_t k = 10;
  double edge_prob = 0.3;
  std::optional<std::string> graph_path;
  // logreg
  std::string data_path;

  std::vector<Algorithm> algorithms{Algorithm::Modified, Algorithm::BGraal};
  double tol = 1e-6;
  long max_iter = 100000;
  double eta0 = 0.80;
  double eta1 = 0.75;
  GammaSchedule gamma;
  std::uint64_t seed = 0;
  std::string output_path = ".";
  bool trace_branches = false;

  void validate() const;
  SolverConfig solver_config(Algorithm algorithm) const;
};

// Schedules used by the reference experiments.
GammaSchedule game_gamma_defaults();
GammaSchedule logreg_gamma_defaults();

struct ExperimentOutcome {
  // 0 all runs converged, 1 some run hit max_iter, 2 bad config or input.
  int status = 0;
  std::vector<RunResult> runs;
  std::vector<std::string> csv_paths;
};

// Builds the problem, runs each requested algorithm, writes
// <output_path>/<algo>.csv (and <algo>_branches.csv when tracing) and
// prints one summary line per algorithm to `out`. Errors go to `err`.
ExperimentOutcome run_experiment(const ExperimentConfig& config, std::ostream& out,
                                 std::ostream& err);

inline constexpr const char* kCsvHeader = "iter,elapsed_seconds,lambda,residual_norm,merit";

// Shortest decimal text that parses back to the same double.
std::string format_real(double v);

void write_csv(const RunResult& run, std::ostream& out);
void write_branch_trace(const RunResult& run, std::ostream& out);

void print_defaults(std::ostream& out);

// Command-line entry point shared by the mgraal_bench tool and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mgraal
