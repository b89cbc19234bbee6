#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgraal/geometry.hpp"
#include "mgraal/problem.hpp"

namespace mgraal {

inline constexpr double kGoldenRatio = 1.6180339887498948482;

/// gamma_k = r (log(k+1))^s / (k+1)^t, summable for t > 1.
struct GammaSchedule {
  double r = 0.0007;
  double s = 7.5;
  double t = 1.1;

  void validate() const;
};

double gamma(const GammaSchedule& params, long k);

enum class StepBranch { Decrease, Increase };

/// Step-size rule of the modified golden-ratio method. Starting from
/// lambda_0, each update() produces lambda_k from lambda_{k-1}:
///
///   |A(w_k) - A(w_{k-1})| > eta0 alpha / lambda_{k-1} |w_k - w_{k-1}|
///       => lambda_k = eta1 alpha |w_k - w_{k-1}| / |A(w_k) - A(w_{k-1})|
///   otherwise
///       => lambda_k = (1 + gamma_{k-1}) lambda_{k-1}
///
/// The comparison is strict, so stationary iterates (0 > 0 fails) take the
/// increase branch and no division by zero occurs. gamma_0 is taken equal
/// to gamma_1.
class StepSizeController {
 public:
  StepSizeController(double lambda0, double eta0, double eta1,
                     GammaSchedule schedule, double alpha);

  double update(double dw_norm, double da_norm);

  double lambda() const noexcept { return lambda_; }
  double lambda_prev() const noexcept { return lambda_prev_; }
  double lambda0() const noexcept { return lambda0_; }
  // Index of lambda(): 0 before the first update.
  long k() const noexcept { return k_; }
  StepBranch last_branch() const noexcept { return last_branch_; }
  double eta0() const noexcept { return eta0_; }
  double eta1() const noexcept { return eta1_; }
  double alpha() const noexcept { return alpha_; }
  const GammaSchedule& schedule() const noexcept { return schedule_; }

 private:
  double lambda_;
  double lambda_prev_;
  double lambda0_;
  double eta0_;
  double eta1_;
  GammaSchedule schedule_;
  double alpha_;
  long k_ = 0;
  StepBranch last_branch_ = StepBranch::Increase;
};

double step_size_update(StepSizeController& ctrl, std::span<const double> w_k,
                        std::span<const double> w_prev,
                        std::span<const double> a_k,
                        std::span<const double> a_prev);

// (grad h)^{-1}(((phi - 1) grad h(w_k) + grad h(w_bar_prev)) / phi)
std::vector<double> bar_update(const Geometry& geo, std::span<const double> w_k,
                               std::span<const double> w_bar_prev,
                               double phi = kGoldenRatio);

struct Residual {
  std::vector<double> value;
  double norm = 0.0;
};

// J_k = (grad h(w_bar_k) - grad h(w_next)) / lambda + A(w_next) - A(w_k),
// an element of A(w_next) + dg(w_next).
Residual residual(const Geometry& geo, double lambda,
                  std::span<const double> w_bar_k, std::span<const double> w_next,
                  std::span<const double> a_wk, std::span<const double> a_wnext);

enum class Algorithm { Modified, BGraal, AGraal };

const char* to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(const std::string& name);

/// Adaptive golden-ratio baseline. Opt-in only.
struct AGraalParams {
  double phi = 1.5;
  double lambda_max = 1e6;

  double rho() const noexcept { return 1.0 / phi + 1.0 / (phi * phi); }
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::Modified;
  double tol = 1e-6;
  long max_iter = 100000;
  std::uint64_t seed = 0;
  double eta0 = 0.80;
  double eta1 = 0.75;
  GammaSchedule gamma;
  // Magnitude of the seeded perturbation that produces w_1 from w_0.
  double perturbation = 1e-9;
  // Fixed step for B-GRAAL; phi / (2 L) when unset.
  std::optional<double> bgraal_lambda;
  AGraalParams agraal;

  void validate() const;
};

struct SolverState {
  std::vector<double> w;         // w_k
  std::vector<double> w_prev;    // w_{k-1}
  std::vector<double> w_bar;     // w_bar_{k-1} before an iteration, w_bar_k after
  std::vector<double> a_w;       // A(w_k)
  std::vector<double> a_w_prev;  // A(w_{k-1})
  StepSizeController controller;
  long k = 1;
  // Step used by the last completed iteration (lambda_0 before any).
  double lambda = 0.0;
  // Residual of the last completed iteration.
  Residual residual;
  // Adaptive baseline only.
  double theta = 1.0;
};

// State at k = 1 with w_bar_0 = w_0 and caller-supplied w_1, lambda_0.
SolverState make_state(const Problem& problem, std::vector<double> w0,
                       std::vector<double> w1, double lambda0,
                       const SolverConfig& config = {});

// w_1 from the seeded perturbation of the problem's initial point and
// lambda_0 = (phi/2) |w_1 - w_0| / |A(w_1) - A(w_0)|. Makes exactly two
// operator evaluations unless A(w_1) = A(w_0), in which case the
// perturbation grows tenfold up to five times before a ConfigError.
SolverState initialize(const Problem& problem, const SolverConfig& config);

SolverState& iterate_modified(const Problem& problem, SolverState& state);
SolverState& iterate_bgraal_fixed(const Problem& problem, SolverState& state,
                                  double lambda_fixed);
SolverState& iterate_agraal(const Problem& problem, SolverState& state,
                            const AGraalParams& params);

struct RunRecord {
  long iter = 0;
  double elapsed_seconds = 0.0;
  double lambda = 0.0;
  double residual_norm = 0.0;
  double merit = 0.0;
};

enum class StopReason { Converged, MaxIterations, NumericalFailure };

struct RunResult {
  Algorithm algorithm = Algorithm::Modified;
  std::vector<RunRecord> records;
  // Step-size branch per iteration (modified method only).
  std::vector<StepBranch> branches;
  StopReason stop = StopReason::MaxIterations;
  std::string failure;
  double lambda0 = 0.0;
  std::vector<double> solution;
  double total_seconds = 0.0;

  bool converged() const noexcept { return stop == StopReason::Converged; }
};

using IterationObserver = std::function<void(const SolverState&)>;

RunResult run(const Problem& problem, const SolverConfig& config,
              const IterationObserver& observer = {});

}  // namespace mgraal
