#include "mgraal/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "mgraal/errors.hpp"
#include "mgraal/linalg.hpp"
#include "mgraal/proximal.hpp"

namespace mgraal {

void GammaSchedule::validate() const {
  if (!(r > 0.0) || !(s > 0.0) || !(t > 1.0) || !std::isfinite(r) ||
      !std::isfinite(s) || !std::isfinite(t)) {
    throw ConfigError("gamma schedule needs r > 0, s > 0, t > 1");
  }
}

double gamma(const GammaSchedule& params, long k) {
  params.validate();
  if (k < 1) throw ConfigError("gamma index must be >= 1");
  const double kp1 = static_cast<double>(k) + 1.0;
  return params.r * std::pow(std::log(kp1), params.s) / std::pow(kp1, params.t);
}

StepSizeController::StepSizeController(double lambda0, double eta0, double eta1,
                                       GammaSchedule schedule, double alpha)
    : lambda_(lambda0),
      lambda_prev_(lambda0),
      lambda0_(lambda0),
      eta0_(eta0),
      eta1_(eta1),
      schedule_(schedule),
      alpha_(alpha) {
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) {
    throw ConfigError("lambda_0 must be positive and finite");
  }
  if (!(eta1 > 0.0 && eta1 < eta0 && eta0 < kGoldenRatio / 2.0)) {
    throw ConfigError("step-size parameters need 0 < eta1 < eta0 < phi/2");
  }
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  schedule_.validate();
}

double StepSizeController::update(double dw_norm, double da_norm) {
  lambda_prev_ = lambda_;
  ++k_;
  if (da_norm > eta0_ * alpha_ / lambda_prev_ * dw_norm) {
    lambda_ = eta1_ * alpha_ * dw_norm / da_norm;
    last_branch_ = StepBranch::Decrease;
  } else {
    lambda_ = (1.0 + gamma(schedule_, std::max<long>(k_ - 1, 1))) * lambda_prev_;
    last_branch_ = StepBranch::Increase;
  }
  return lambda_;
}

double step_size_update(StepSizeController& ctrl, std::span<const double> w_k,
                        std::span<const double> w_prev,
                        std::span<const double> a_k,
                        std::span<const double> a_prev) {
  return ctrl.update(distance2(w_k, w_prev), distance2(a_k, a_prev));
}

std::vector<double> bar_update(const Geometry& geo, std::span<const double> w_k,
                               std::span<const double> w_bar_prev, double phi) {
  std::vector<double> gw = geo.grad(w_k);
  const std::vector<double> gb = geo.grad(w_bar_prev);
  for (std::size_t i = 0; i < gw.size(); ++i) {
    gw[i] = ((phi - 1.0) * gw[i] + gb[i]) / phi;
  }
  return geo.grad_inv(gw);
}

Residual residual(const Geometry& geo, double lambda,
                  std::span<const double> w_bar_k, std::span<const double> w_next,
                  std::span<const double> a_wk, std::span<const double> a_wnext) {
  check_dimension(geo.dimension(), a_wk.size(), "residual a_wk");
  check_dimension(geo.dimension(), a_wnext.size(), "residual a_wnext");
  Residual r;
  r.value = geo.grad(w_bar_k);
  const std::vector<double> gn = geo.grad(w_next);
  for (std::size_t i = 0; i < r.value.size(); ++i) {
    r.value[i] = (r.value[i] - gn[i]) / lambda + a_wnext[i] - a_wk[i];
  }
  r.norm = norm2(r.value);
  return r;
}

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Modified:
      return "modified";
    case Algorithm::BGraal:
      return "bgraal";
    case Algorithm::AGraal:
      return "agraal";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "modified") return Algorithm::Modified;
  if (name == "bgraal") return Algorithm::BGraal;
  if (name == "agraal") return Algorithm::AGraal;
  return std::nullopt;
}

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (!(eta1 > 0.0 && eta1 < eta0 && eta0 < kGoldenRatio / 2.0)) {
    throw ConfigError("step-size parameters need 0 < eta1 < eta0 < phi/2");
  }
  gamma.validate();
  if (!(perturbation > 0.0)) throw ConfigError("perturbation must be positive");
  if (bgraal_lambda && !(*bgraal_lambda > 0.0)) {
    throw ConfigError("B-GRAAL step must be positive");
  }
  if (!(agraal.phi > 1.0 && agraal.phi <= kGoldenRatio)) {
    throw ConfigError("adaptive baseline needs 1 < phi <= golden ratio");
  }
  if (!(agraal.lambda_max > 0.0)) throw ConfigError("lambda_max must be positive");
}

SolverState make_state(const Problem& problem, std::vector<double> w0,
                       std::vector<double> w1, double lambda0,
                       const SolverConfig& config) {
  const Geometry& geo = problem.geometry();
  geo.require_interior(w0, "initial w0");
  geo.require_interior(w1, "initial w1");
  std::vector<double> a0 = problem.apply(w0);
  std::vector<double> a1 = problem.apply(w1);
  SolverState state{
      .w = std::move(w1),
      .w_prev = w0,
      .w_bar = std::move(w0),
      .a_w = std::move(a1),
      .a_w_prev = std::move(a0),
      .controller = StepSizeController(lambda0, config.eta0, config.eta1,
                                       config.gamma, geo.alpha()),
      .k = 1,
      .lambda = lambda0,
      .residual = {},
      .theta = 1.0,
  };
  return state;
}

namespace {

bool is_simplex_problem(const Problem& problem) {
  return problem.regularizer().kind() == RegularizerKind::SimplexIndicator;
}

std::vector<double> perturb(const Problem& problem, std::span<const double> w0,
                            double magnitude, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> w1(w0.begin(), w0.end());
  for (double& x : w1) x += magnitude * unif(rng);
  if (is_simplex_problem(problem)) {
    for (const Block& b : problem.regularizer().blocks()) {
      double sum = 0.0;
      for (std::size_t i = b.begin; i < b.begin + b.size; ++i) sum += w1[i];
      for (std::size_t i = b.begin; i < b.begin + b.size; ++i) w1[i] /= sum;
    }
  }
  return w1;
}

// Step 2 of every golden-ratio variant plus the residual bookkeeping.
void advance(const Problem& problem, SolverState& s, double lambda, double phi) {
  const Geometry& geo = problem.geometry();
  s.w_bar = bar_update(geo, s.w, s.w_bar, phi);
  std::vector<double> w_next =
      graal_prox_step(geo, problem.regularizer(), lambda, s.w_bar, s.a_w);
  std::vector<double> a_next = problem.apply(w_next);
  s.residual = residual(geo, lambda, s.w_bar, w_next, s.a_w, a_next);
  s.lambda = lambda;
  s.w_prev = std::move(s.w);
  s.w = std::move(w_next);
  s.a_w_prev = std::move(s.a_w);
  s.a_w = std::move(a_next);
  ++s.k;
}

double default_bgraal_step(const Problem& problem, const SolverConfig& config) {
  if (config.bgraal_lambda) return *config.bgraal_lambda;
  if (!problem.lipschitz()) {
    throw ConfigError("B-GRAAL needs a known Lipschitz constant for '" +
                      problem.name() + "'");
  }
  return kGoldenRatio / (2.0 * *problem.lipschitz());
}

}  // namespace

SolverState initialize(const Problem& problem, const SolverConfig& config) {
  config.validate();
  const std::vector<double>& w0 = problem.initial_point();
  const std::vector<double> a0 = problem.apply(w0);
  std::mt19937_64 rng(config.seed);
  double magnitude = config.perturbation;
  for (int attempt = 0; attempt <= 5; ++attempt, magnitude *= 10.0) {
    std::vector<double> w1 = perturb(problem, w0, magnitude, rng);
    std::vector<double> a1 = problem.apply(w1);
    const double da = distance2(a1, a0);
    if (da > 0.0) {
      const double phi = config.algorithm == Algorithm::AGraal ? config.agraal.phi
                                                               : kGoldenRatio;
      const double lambda0 = phi / 2.0 * distance2(w1, w0) / da;
      SolverState state{
          .w = std::move(w1),
          .w_prev = w0,
          .w_bar = w0,
          .a_w = std::move(a1),
          .a_w_prev = a0,
          .controller = StepSizeController(lambda0, config.eta0, config.eta1,
                                           config.gamma,
                                           problem.geometry().alpha()),
          .k = 1,
          .lambda = lambda0,
          .residual = {},
          .theta = 1.0,
      };
      return state;
    }
  }
  throw ConfigError("A(w_1) = A(w_0) for every perturbation of the initial point");
}

SolverState& iterate_modified(const Problem& problem, SolverState& state) {
  const double lambda =
      step_size_update(state.controller, state.w, state.w_prev, state.a_w, state.a_w_prev);
  advance(problem, state, lambda, kGoldenRatio);
  return state;
}

SolverState& iterate_bgraal_fixed(const Problem& problem, SolverState& state,
                                  double lambda_fixed) {
  if (!problem.lipschitz()) {
    throw ConfigError("B-GRAAL needs a known Lipschitz constant for '" +
                      problem.name() + "'");
  }
  if (!(lambda_fixed > 0.0)) throw ConfigError("B-GRAAL step must be positive");
  advance(problem, state, lambda_fixed, kGoldenRatio);
  return state;
}

SolverState& iterate_agraal(const Problem& problem, SolverState& state,
                            const AGraalParams& params) {
  const double alpha = problem.geometry().alpha();
  const double dw = distance2(state.w, state.w_prev);
  const double da = distance2(state.a_w, state.a_w_prev);
  const double prev = state.lambda;
  double lambda = std::min(params.rho() * prev, params.lambda_max);
  if (da > 0.0) {
    const double local = alpha * alpha * params.phi * state.theta * dw * dw /
                         (4.0 * prev * da * da);
    lambda = std::min(lambda, local);
  }
  advance(problem, state, lambda, params.phi);
  state.theta = params.phi * lambda / prev;
  return state;
}

RunResult run(const Problem& problem, const SolverConfig& config,
              const IterationObserver& observer) {
  config.validate();
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();

  RunResult result;
  result.algorithm = config.algorithm;
  const double lambda_fixed = config.algorithm == Algorithm::BGraal
                                  ? default_bgraal_step(problem, config)
                                  : 0.0;
  SolverState state = initialize(problem, config);
  result.lambda0 = config.algorithm == Algorithm::BGraal ? lambda_fixed : state.lambda;
  result.records.reserve(static_cast<std::size_t>(std::min<long>(config.max_iter, 1 << 20)));

  for (long it = 0; it < config.max_iter; ++it) {
    const long k = state.k;
    try {
      switch (config.algorithm) {
        case Algorithm::Modified:
          iterate_modified(problem, state);
          result.branches.push_back(state.controller.last_branch());
          break;
        case Algorithm::BGraal:
          iterate_bgraal_fixed(problem, state, lambda_fixed);
          break;
        case Algorithm::AGraal:
          iterate_agraal(problem, state, config.agraal);
          break;
      }
    } catch (const DomainError& e) {
      result.stop = StopReason::NumericalFailure;
      result.failure = e.what();
      break;
    }
    const double norm = state.residual.norm;
    RunRecord rec;
    rec.iter = k;
    rec.lambda = state.lambda;
    rec.residual_norm = norm;
    rec.merit = problem.has_merit() ? problem.merit(state.w) : norm;
    rec.elapsed_seconds = std::chrono::duration<double>(clock::now() - start).count();
    result.records.push_back(rec);
    if (observer) observer(state);
    if (!std::isfinite(norm)) {
      result.stop = StopReason::NumericalFailure;
      result.failure = "non-finite residual";
      break;
    }
    if (norm <= config.tol) {
      result.stop = StopReason::Converged;
      break;
    }
  }
  result.solution = state.w;
  result.total_seconds = std::chrono::duration<double>(clock::now() - start).count();
  return result;
}

}  // namespace mgraal
