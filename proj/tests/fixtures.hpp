#pragma once

#include <algorithm>
#include <memory>
#include <span>
#include <vector>

#include "mgraal/graph.hpp"
#include "mgraal/matrix_game.hpp"
#include "mgraal/problem.hpp"

namespace fixtures {

// A(w) = w with g = beta |.|_1 (or g = 0 when beta is zero), Euclidean.
inline mgraal::Problem identity_problem(std::vector<double> w0, double beta = 0.0) {
  const std::size_t n = w0.size();
  mgraal::Problem p(
      "identity", mgraal::Geometry::euclidean(n),
      beta > 0.0 ? mgraal::Regularizer::l1(beta) : mgraal::Regularizer::zero(),
      [](std::span<const double> w, std::span<double> out) {
        std::copy(w.begin(), w.end(), out.begin());
      },
      std::move(w0));
  p.with_lipschitz(1.0);
  return p;
}

inline mgraal::Problem zero_operator_problem(mgraal::Geometry geo, std::vector<double> w0) {
  mgraal::Problem p(
      "zero", std::move(geo), mgraal::Regularizer::zero(),
      [](std::span<const double>, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
      },
      std::move(w0));
  p.with_lipschitz(1.0);
  return p;
}

inline mgraal::MatrixGame two_node_game() {
  return mgraal::MatrixGame(mgraal::DenseMatrix(2, 2, {0, 1, 1, 0}));
}

inline mgraal::MatrixGame graph_game(std::size_t k, double edge_prob, std::uint64_t seed) {
  return mgraal::MatrixGame(
      mgraal::graph_distance_matrix(mgraal::random_connected_graph(k, edge_prob, seed)));
}

// Cycle graph C_k: the distance matrix is circulant, so the uniform profile
// is a fully mixed equilibrium. Started from a skewed interior point.
inline mgraal::Graph cycle_graph(std::size_t k) {
  mgraal::Graph g;
  g.k = k;
  for (std::size_t i = 0; i + 1 < k; ++i) g.edges.emplace_back(i, i + 1);
  g.edges.emplace_back(0, k - 1);
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

inline mgraal::Problem skewed_cycle_game(std::size_t k) {
  auto game = std::make_shared<mgraal::MatrixGame>(
      mgraal::graph_distance_matrix(cycle_graph(k)));
  std::vector<double> w0(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    w0[i] = static_cast<double>(i + 1);
    w0[k + i] = static_cast<double>((k - i) * (k - i));
  }
  for (std::size_t b = 0; b < 2; ++b) {
    const auto block = std::span(w0).subspan(b * k, k);
    double sum = 0.0;
    for (double v : block) sum += v;
    for (double& v : block) v /= sum;
  }
  mgraal::Problem p("cycle-game", game->geometry(), game->regularizer(),
                    [game](std::span<const double> w, std::span<double> out) {
                      game->apply(w, out);
                    },
                    std::move(w0));
  p.with_lipschitz(game->lipschitz());
  p.with_merit([game, k](std::span<const double> w) {
    return mgraal::duality_gap(*game, w.first(k), w.subspan(k));
  });
  return p;
}

// Wraps a problem's operator with a shared call counter.
inline mgraal::Problem counting(const mgraal::Problem& base, std::shared_ptr<long> calls) {
  auto inner = std::make_shared<mgraal::Problem>(base);
  mgraal::Problem p(
      base.name() + "-counted", base.geometry(), base.regularizer(),
      [inner, calls](std::span<const double> w, std::span<double> out) {
        ++*calls;
        inner->apply(w, out);
      },
      base.initial_point());
  if (base.lipschitz()) p.with_lipschitz(*base.lipschitz());
  if (base.has_merit()) {
    p.with_merit([inner](std::span<const double> w) { return inner->merit(w); });
  }
  return p;
}

}  // namespace fixtures
