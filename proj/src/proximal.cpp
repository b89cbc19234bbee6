#include "mgraal/proximal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "mgraal/errors.hpp"

namespace mgraal {

namespace {

void require_step(double lambda, const char* what) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError(std::string(what) + ": step size must be positive and finite");
  }
}

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

[[noreturn]] void unsupported(const Geometry& geo, const Regularizer& g) {
  throw UnsupportedPairing(std::string("no closed-form Bregman prox for ") +
                           to_string(g.kind()) + " under " +
                           to_string(geo.kind()) + " geometry");
}

}  // namespace

Regularizer::Regularizer(RegularizerKind kind, double weight,
                         std::vector<Block> blocks)
    : kind_(kind), weight_(weight), blocks_(std::move(blocks)) {}

Regularizer Regularizer::zero() {
  return Regularizer(RegularizerKind::Zero, 0.0, {});
}

Regularizer Regularizer::l1(double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw ConfigError("L1 weight must be finite and nonnegative");
  }
  return Regularizer(RegularizerKind::L1, weight, {});
}

Regularizer Regularizer::simplex(std::vector<Block> blocks,
                                 std::size_t dimension) {
  if (blocks.empty()) throw ConfigError("simplex indicator needs at least one block");
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.begin < b.begin; });
  std::size_t next = 0;
  for (const Block& b : blocks) {
    if (b.size == 0) throw ConfigError("simplex blocks must be nonempty");
    if (b.begin != next) {
      throw ConfigError("simplex blocks must partition the coordinates");
    }
    next = b.begin + b.size;
  }
  if (next != dimension) {
    throw ConfigError("simplex blocks must cover all " +
                      std::to_string(dimension) + " coordinates");
  }
  return Regularizer(RegularizerKind::SimplexIndicator, 0.0, std::move(blocks));
}

Regularizer Regularizer::simplex_blocks(std::size_t count,
                                        std::size_t block_size) {
  std::vector<Block> blocks;
  for (std::size_t b = 0; b < count; ++b) blocks.push_back({b * block_size, block_size});
  return simplex(std::move(blocks), count * block_size);
}

double Regularizer::value(std::span<const double> x) const {
  switch (kind_) {
    case RegularizerKind::Zero:
      return 0.0;
    case RegularizerKind::L1: {
      double s = 0.0;
      for (double xi : x) s += std::abs(xi);
      return weight_ * s;
    }
    case RegularizerKind::SimplexIndicator: {
      const double inf = std::numeric_limits<double>::infinity();
      for (const Block& b : blocks_) {
        if (b.begin + b.size > x.size()) return inf;
        double sum = 0.0;
        for (std::size_t i = b.begin; i < b.begin + b.size; ++i) {
          if (x[i] < 0.0) return inf;
          sum += x[i];
        }
        if (std::abs(sum - 1.0) > 1e-9) return inf;
      }
      return 0.0;
    }
  }
  return 0.0;
}

const char* to_string(RegularizerKind kind) {
  switch (kind) {
    case RegularizerKind::Zero:
      return "zero";
    case RegularizerKind::L1:
      return "l1";
    case RegularizerKind::SimplexIndicator:
      return "simplex-indicator";
  }
  return "unknown";
}

std::vector<double> mirror_step(const Geometry& geo,
                                std::span<const double> w_bar, double lambda,
                                std::span<const double> a) {
  require_step(lambda, "mirror_step");
  geo.require_interior(w_bar, "mirror_step w_bar");
  check_dimension(geo.dimension(), a.size(), "mirror_step a");
  std::vector<double> dual = geo.grad(w_bar);
  for (std::size_t i = 0; i < dual.size(); ++i) dual[i] -= lambda * a[i];
  return geo.grad_inv(dual);
}

void project_unit_simplex(std::span<double> v) {
  if (v.empty()) return;
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumsum += sorted[j];
    const double candidate = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) theta = candidate;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
}

std::vector<double> prox(const Geometry& geo, const Regularizer& g,
                         double lambda, std::span<const double> v) {
  require_step(lambda, "prox");
  check_dimension(geo.dimension(), v.size(), "prox v");
  std::vector<double> x(v.begin(), v.end());

  switch (g.kind()) {
    case RegularizerKind::Zero:
      geo.require_interior(v, "prox v");
      return x;

    case RegularizerKind::L1: {
      const double t = lambda * g.weight();
      if (geo.kind() == GeometryKind::Euclidean) {
        for (double& xi : x) xi = soft_threshold(xi, t);
      } else if (geo.kind() == GeometryKind::Mahalanobis) {
        const auto q = geo.weights();
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = soft_threshold(x[i], t / q[i]);
      } else {
        unsupported(geo, g);
      }
      return x;
    }

    case RegularizerKind::SimplexIndicator:
      if (geo.kind() == GeometryKind::NegativeEntropy) {
        geo.require_interior(v, "prox v");
        for (const Block& b : g.blocks()) {
          const auto block = std::span<double>(x).subspan(b.begin, b.size);
          double sum = 0.0;
          for (double xi : block) sum += xi;
          for (double& xi : block) xi /= sum;
        }
      } else if (geo.kind() == GeometryKind::Euclidean) {
        for (const Block& b : g.blocks()) {
          project_unit_simplex(std::span<double>(x).subspan(b.begin, b.size));
        }
      } else {
        unsupported(geo, g);
      }
      return x;
  }
  return x;
}

std::vector<double> graal_prox_step(const Geometry& geo, const Regularizer& g,
                                    double lambda,
                                    std::span<const double> w_bar,
                                    std::span<const double> a) {
  if (geo.kind() != GeometryKind::NegativeEntropy ||
      g.kind() != RegularizerKind::SimplexIndicator) {
    return prox(geo, g, lambda, mirror_step(geo, w_bar, lambda, a));
  }

  require_step(lambda, "graal_prox_step");
  geo.require_interior(w_bar, "graal_prox_step w_bar");
  check_dimension(geo.dimension(), a.size(), "graal_prox_step a");

  std::vector<double> x(w_bar.size());
  for (const Block& b : g.blocks()) {
    const std::size_t end = b.begin + b.size;
    double shift = -std::numeric_limits<double>::infinity();
    for (std::size_t i = b.begin; i < end; ++i) {
      x[i] = std::log(w_bar[i]) - lambda * a[i];
      shift = std::max(shift, x[i]);
    }
    double sum = 0.0;
    for (std::size_t i = b.begin; i < end; ++i) {
      x[i] = std::exp(x[i] - shift);
      sum += x[i];
    }
    for (std::size_t i = b.begin; i < end; ++i) x[i] /= sum;
  }
  return x;
}

}  // namespace mgraal
