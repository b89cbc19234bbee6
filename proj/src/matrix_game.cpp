#include "mgraal/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "mgraal/errors.hpp"

namespace mgraal {

namespace {

void require_simplex(std::span<const double> x, const char* what) {
  double sum = 0.0;
  for (double xi : x) {
    if (!(xi >= 0.0)) throw DomainError(std::string(what) + " has a negative entry");
    sum += xi;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DomainError(std::string(what) + " does not sum to one");
  }
}

}  // namespace

MatrixGame::MatrixGame(DenseMatrix p, kernels::Backend backend)
    : p_(std::move(p)),
      lipschitz_(0.0),
      geometry_(Geometry::negative_entropy(2 * std::max<std::size_t>(p_.rows, 1))),
      regularizer_(Regularizer::simplex_blocks(2, std::max<std::size_t>(p_.rows, 1))),
      backend_(backend) {
  if (p_.rows == 0 || p_.rows != p_.cols) {
    throw DimensionError("payoff matrix must be square and nonempty");
  }
  lipschitz_ = spectral_norm(p_);
}

void MatrixGame::apply(std::span<const double> w, std::span<double> out) const {
  const std::size_t n = k();
  check_dimension(2 * n, w.size(), "game operator w");
  check_dimension(2 * n, out.size(), "game operator out");
  const auto x = w.first(n);
  const auto y = w.subspan(n);
  kernels::gemv_t(backend_, p_, y, out.first(n));
  const auto lower = out.subspan(n);
  kernels::gemv(backend_, p_, x, lower);
  for (double& v : lower) v = -v;
}

std::vector<double> game_operator(const MatrixGame& game, std::span<const double> w) {
  std::vector<double> out(w.size());
  game.apply(w, out);
  return out;
}

double duality_gap(const MatrixGame& game, std::span<const double> x,
                   std::span<const double> y) {
  const std::size_t n = game.k();
  check_dimension(n, x.size(), "duality_gap x");
  check_dimension(n, y.size(), "duality_gap y");
  require_simplex(x, "duality_gap x");
  require_simplex(y, "duality_gap y");
  std::vector<double> px(n);
  std::vector<double> pty(n);
  kernels::gemv(game.backend(), game.payoff(), x, px);
  kernels::gemv_t(game.backend(), game.payoff(), y, pty);
  return *std::max_element(px.begin(), px.end()) -
         *std::min_element(pty.begin(), pty.end());
}

Problem make_problem(const MatrixGame& game) {
  auto shared = std::make_shared<const MatrixGame>(game);
  const std::size_t n = game.k();
  Problem problem(
      "matrix-game-k" + std::to_string(n), game.geometry(), game.regularizer(),
      [shared](std::span<const double> w, std::span<double> out) { shared->apply(w, out); },
      std::vector<double>(2 * n, 1.0 / static_cast<double>(n)));
  problem.with_lipschitz(game.lipschitz());
  problem.with_merit([shared, n](std::span<const double> w) {
    return duality_gap(*shared, w.first(n), w.subspan(n));
  });
  return problem;
}

}  // namespace mgraal
