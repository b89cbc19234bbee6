#pragma once

#include <span>
#include <vector>

#include "mgraal/geometry.hpp"
#include "mgraal/kernels.hpp"
#include "mgraal/linalg.hpp"
#include "mgraal/problem.hpp"
#include "mgraal/proximal.hpp"

namespace mgraal {

/// min_{x in simplex} max_{y in simplex} <P x, y> as a variational
/// inequality over w = (x, y) with A(w) = (P^T y, -P x), solved in the
/// entropic geometry over two simplex blocks.
class MatrixGame {
 public:
  explicit MatrixGame(DenseMatrix p,
                      kernels::Backend backend = kernels::default_backend());

  const DenseMatrix& payoff() const noexcept { return p_; }
  std::size_t k() const noexcept { return p_.rows; }
  // |P|_2, the Lipschitz constant of A.
  double lipschitz() const noexcept { return lipschitz_; }
  const Geometry& geometry() const noexcept { return geometry_; }
  const Regularizer& regularizer() const noexcept { return regularizer_; }
  kernels::Backend backend() const noexcept { return backend_; }

  void apply(std::span<const double> w, std::span<double> out) const;

 private:
  DenseMatrix p_;
  double lipschitz_;
  Geometry geometry_;
  Regularizer regularizer_;
  kernels::Backend backend_;
};

std::vector<double> game_operator(const MatrixGame& game, std::span<const double> w);

// max_i (P x)_i - min_j (P^T y)_j. Throws DomainError unless x and y lie
// on the simplex (sum tolerance 1e-9).
double duality_gap(const MatrixGame& game, std::span<const double> x,
                   std::span<const double> y);

// Uniform start, duality-gap merit, known Lipschitz constant.
Problem make_problem(const MatrixGame& game);

}  // namespace mgraal
