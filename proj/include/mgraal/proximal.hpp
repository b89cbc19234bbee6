#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgraal/geometry.hpp"

namespace mgraal {

enum class RegularizerKind { Zero, L1, SimplexIndicator };

// Contiguous coordinate range [begin, begin + size).
struct Block {
  std::size_t begin = 0;
  std::size_t size = 0;
};

/// The nonsmooth convex term g of the mixed variational inequality.
class Regularizer {
 public:
  static Regularizer zero();
  static Regularizer l1(double weight);
  // Indicator of a product of unit simplices. The blocks must partition
  // [0, dimension) and be nonempty.
  static Regularizer simplex(std::vector<Block> blocks, std::size_t dimension);
  // Convenience: `count` equal blocks of size `block_size`.
  static Regularizer simplex_blocks(std::size_t count, std::size_t block_size);

  RegularizerKind kind() const noexcept { return kind_; }
  double weight() const noexcept { return weight_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  // g(x); +infinity outside the simplex product (sum tolerance 1e-9).
  double value(std::span<const double> x) const;

 private:
  Regularizer(RegularizerKind kind, double weight, std::vector<Block> blocks);

  RegularizerKind kind_;
  double weight_;
  std::vector<Block> blocks_;
};

const char* to_string(RegularizerKind kind);

// (grad h)^{-1}(grad h(w_bar) - lambda * a). Under NegativeEntropy this is
// w_bar_i * exp(-lambda * a_i).
std::vector<double> mirror_step(const Geometry& geo,
                                std::span<const double> w_bar, double lambda,
                                std::span<const double> a);

// argmin_x { lambda * g(x) + B_h(x, v) } for the closed-form pairings:
//   Zero             any geometry      identity
//   L1               Euclidean         soft-threshold at lambda * weight
//   L1               Mahalanobis(q)    soft-threshold at lambda * weight / q_i
//   SimplexIndicator NegativeEntropy   per-block normalization
//   SimplexIndicator Euclidean         per-block sort-and-pivot projection
// Any other pairing throws UnsupportedPairing.
std::vector<double> prox(const Geometry& geo, const Regularizer& g,
                         double lambda, std::span<const double> v);

// One golden-ratio proximal update
//   argmin_w { <a, w> + g(w) + B_h(w, w_bar) / lambda }
//     = prox(lambda g, mirror_step(w_bar, lambda, a)).
// The entropic-simplex case is evaluated blockwise in log space with a
// max-shift so that large lambda * |a| neither overflows nor underflows
// before normalization.
std::vector<double> graal_prox_step(const Geometry& geo, const Regularizer& g,
                                    double lambda,
                                    std::span<const double> w_bar,
                                    std::span<const double> a);

// Euclidean projection of v onto the unit simplex, in place.
void project_unit_simplex(std::span<double> v);

}  // namespace mgraal
