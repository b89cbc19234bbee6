#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mgraal {

enum class GeometryKind { Euclidean, NegativeEntropy, Mahalanobis };

/// Distance-generating (Legendre) function h together with its gradient
/// map, the inverse gradient map and the induced Bregman divergence
///
///   B_h(x, y) = h(x) - h(y) - <grad h(y), x - y>.
///
/// Three generators are built in:
///   Euclidean        h(x) = 1/2 |x|^2                  alpha = 1
///   NegativeEntropy  h(x) = sum x_i log x_i            alpha = 1 (on the unit simplex)
///   Mahalanobis(q)   h(x) = 1/2 sum q_i x_i^2          alpha = min q_i
///
/// The dimension is fixed at construction and every operation validates it.
/// Values are immutable and may be shared between threads.
class Geometry {
 public:
  static Geometry euclidean(std::size_t dimension);
  static Geometry negative_entropy(std::size_t dimension);
  static Geometry mahalanobis(std::vector<double> q);

  GeometryKind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return dimension_; }
  // Strong-convexity modulus of h with respect to the Euclidean norm.
  double alpha() const noexcept { return alpha_; }
  // Diagonal of Q; empty unless kind() == Mahalanobis.
  std::span<const double> weights() const noexcept { return q_; }

  double value(std::span<const double> x) const;

  void grad(std::span<const double> x, std::span<double> out) const;
  std::vector<double> grad(std::span<const double> x) const;

  // Total map: under NegativeEntropy exp(v - 1) saturates at the largest
  // finite double instead of overflowing to infinity.
  void grad_inv(std::span<const double> v, std::span<double> out) const;
  std::vector<double> grad_inv(std::span<const double> v) const;

  // x may lie on the boundary of dom h (zeros allowed under NegativeEntropy),
  // y must be interior.
  double bregman(std::span<const double> x, std::span<const double> y) const;

  // Throws DomainError unless every entry of x is in the interior of dom h.
  void require_interior(std::span<const double> x, const char* what) const;

 private:
  Geometry(GeometryKind kind, std::size_t dimension, double alpha,
           std::vector<double> q);

  GeometryKind kind_;
  std::size_t dimension_;
  double alpha_;
  std::vector<double> q_;
};

// Entries at or below this value are outside int dom h for NegativeEntropy.
inline constexpr double kEntropyFloor = 1e-300;

const char* to_string(GeometryKind kind);

}  // namespace mgraal
