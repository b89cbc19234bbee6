#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <vector>

#include "mgraal/kernels.hpp"
#include "mgraal/linalg.hpp"
#include "mgraal/problem.hpp"

namespace mgraal {

/// Labelled sparse observations (c_i, d_i) for
///   k(x) = sum_i log(1 + exp(-c_i <d_i, x>)) + beta_bar |x|_1.
/// Row i of `features` is d_i (0-based columns).
struct LogRegDataset {
  std::vector<double> labels;  // each +1 or -1
  CsrMatrix features;
  double beta_bar = 0.0;

  std::size_t m() const noexcept { return features.rows; }
  std::size_t n() const noexcept { return features.cols; }
};

struct LibsvmOptions {
  // Feature dimension; the largest index seen when unset.
  std::optional<std::size_t> n;
  // Fill beta_bar with regularization_weight().
  bool auto_beta = true;
};

// "label idx:val idx:val ..." per line, 1-based strictly increasing indices.
// Labels {0, 1} and {-1, +1} map to {-1, +1}. Blank lines are skipped.
LogRegDataset parse_libsvm(std::istream& in, const LibsvmOptions& options = {});
LogRegDataset read_libsvm_file(const std::string& path,
                               const LibsvmOptions& options = {});

// 0.005 |C^T c|_inf
double regularization_weight(const LogRegDataset& ds);

/// Operator and objective evaluator; caches the transposed design matrix so
/// that A(x) = C^T coef(C x) runs as two row-parallel sparse products.
class LogRegModel {
 public:
  explicit LogRegModel(LogRegDataset ds,
                       kernels::Backend backend = kernels::default_backend());

  const LogRegDataset& dataset() const noexcept { return ds_; }
  std::size_t dimension() const noexcept { return ds_.n(); }

  // sum_i -c_i d_i sigmoid(-c_i <d_i, x>)
  void gradient(std::span<const double> x, std::span<double> out) const;
  double objective(std::span<const double> x) const;
  // |C|_2^2 / 4, the Lipschitz constant of the loss gradient.
  double lipschitz() const;

 private:
  LogRegDataset ds_;
  CsrMatrix transposed_;
  kernels::Backend backend_;
};

std::vector<double> logreg_operator(const LogRegDataset& ds, std::span<const double> x);
double logreg_objective(const LogRegDataset& ds, std::span<const double> x);

// Euclidean geometry, g = beta_bar |.|_1, zero start, objective merit.
Problem make_problem(const LogRegModel& model);

// Gaussian features, labels from a random hyperplane with a fraction
// `flip` of them flipped.
LogRegDataset make_synthetic_logreg(std::size_t m, std::size_t n, std::uint64_t seed,
                                    double flip = 0.05);

}  // namespace mgraal
