#include "mgraal/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mgraal/errors.hpp"

namespace mgraal {

namespace {

// log(max finite double); exp above this would overflow.
const double kMaxExpArg = std::log(std::numeric_limits<double>::max());

void require_positive(std::span<const double> x, const char* what) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > kEntropyFloor)) {
      throw DomainError(std::string(what) + ": entry " + std::to_string(i) +
                        " = " + std::to_string(x[i]) +
                        " outside the entropy domain");
    }
  }
}

void require_nonnegative(std::span<const double> x, const char* what) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0)) {
      throw DomainError(std::string(what) + ": entry " + std::to_string(i) +
                        " is negative");
    }
  }
}

}  // namespace

Geometry::Geometry(GeometryKind kind, std::size_t dimension, double alpha,
                   std::vector<double> q)
    : kind_(kind), dimension_(dimension), alpha_(alpha), q_(std::move(q)) {
  if (dimension_ == 0) throw ConfigError("geometry dimension must be positive");
}

Geometry Geometry::euclidean(std::size_t dimension) {
  return Geometry(GeometryKind::Euclidean, dimension, 1.0, {});
}

Geometry Geometry::negative_entropy(std::size_t dimension) {
  return Geometry(GeometryKind::NegativeEntropy, dimension, 1.0, {});
}

Geometry Geometry::mahalanobis(std::vector<double> q) {
  if (q.empty()) throw ConfigError("Mahalanobis weights must be nonempty");
  for (double qi : q) {
    if (!(qi > 0.0) || !std::isfinite(qi)) {
      throw ConfigError("Mahalanobis weights must be finite and positive");
    }
  }
  const double alpha = *std::min_element(q.begin(), q.end());
  const std::size_t dim = q.size();
  return Geometry(GeometryKind::Mahalanobis, dim, alpha, std::move(q));
}

void Geometry::require_interior(std::span<const double> x,
                                const char* what) const {
  check_dimension(dimension_, x.size(), what);
  if (kind_ == GeometryKind::NegativeEntropy) require_positive(x, what);
}

double Geometry::value(std::span<const double> x) const {
  require_interior(x, "Geometry::value");
  double sum = 0.0;
  switch (kind_) {
    case GeometryKind::Euclidean:
      for (double xi : x) sum += xi * xi;
      return 0.5 * sum;
    case GeometryKind::NegativeEntropy:
      for (double xi : x) sum += xi * std::log(xi);
      return sum;
    case GeometryKind::Mahalanobis:
      for (std::size_t i = 0; i < x.size(); ++i) sum += q_[i] * x[i] * x[i];
      return 0.5 * sum;
  }
  return sum;
}

void Geometry::grad(std::span<const double> x, std::span<double> out) const {
  require_interior(x, "Geometry::grad");
  check_dimension(dimension_, out.size(), "Geometry::grad output");
  switch (kind_) {
    case GeometryKind::Euclidean:
      std::copy(x.begin(), x.end(), out.begin());
      break;
    case GeometryKind::NegativeEntropy:
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = 1.0 + std::log(x[i]);
      break;
    case GeometryKind::Mahalanobis:
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = q_[i] * x[i];
      break;
  }
}

std::vector<double> Geometry::grad(std::span<const double> x) const {
  std::vector<double> out(x.size());
  grad(x, out);
  return out;
}

void Geometry::grad_inv(std::span<const double> v,
                        std::span<double> out) const {
  check_dimension(dimension_, v.size(), "Geometry::grad_inv");
  check_dimension(dimension_, out.size(), "Geometry::grad_inv output");
  switch (kind_) {
    case GeometryKind::Euclidean:
      std::copy(v.begin(), v.end(), out.begin());
      break;
    case GeometryKind::NegativeEntropy:
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double arg = v[i] - 1.0;
        out[i] = arg >= kMaxExpArg ? std::numeric_limits<double>::max()
                                   : std::exp(arg);
      }
      break;
    case GeometryKind::Mahalanobis:
      for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / q_[i];
      break;
  }
}

std::vector<double> Geometry::grad_inv(std::span<const double> v) const {
  std::vector<double> out(v.size());
  grad_inv(v, out);
  return out;
}

double Geometry::bregman(std::span<const double> x,
                         std::span<const double> y) const {
  check_dimension(dimension_, x.size(), "Geometry::bregman x");
  require_interior(y, "Geometry::bregman y");
  double sum = 0.0;
  switch (kind_) {
    case GeometryKind::Euclidean:
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sum += d * d;
      }
      return 0.5 * sum;
    case GeometryKind::NegativeEntropy:
      require_nonnegative(x, "Geometry::bregman x");
      // sum x log(x/y) - x + y, with 0 log 0 = 0.
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        const double yi = y[i];
        sum += (xi > 0.0 ? xi * std::log(xi / yi) : 0.0) - xi + yi;
      }
      return std::max(sum, 0.0);
    case GeometryKind::Mahalanobis:
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sum += q_[i] * d * d;
      }
      return 0.5 * sum;
  }
  return sum;
}

const char* to_string(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::Euclidean:
      return "euclidean";
    case GeometryKind::NegativeEntropy:
      return "negative-entropy";
    case GeometryKind::Mahalanobis:
      return "mahalanobis";
  }
  return "unknown";
}

}  // namespace mgraal
