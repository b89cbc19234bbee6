#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mgraal {

/// Row-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}
  DenseMatrix(std::size_t r, std::size_t c, std::vector<double> values);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data).subspan(i * cols, cols);
  }
};

/// Compressed sparse rows, 0-based column indices, strictly increasing
/// within each row.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col_idx;
  std::vector<double> values;

  std::size_t nnz() const noexcept { return values.size(); }
  CsrMatrix transpose() const;
};

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);
// |x - y|_2
double distance2(std::span<const double> x, std::span<const double> y);

/// Largest singular value of a linear map M : R^cols -> R^rows given by its
/// action and the action of its transpose. Power iteration on M^T M from a
/// seeded random start; stops when successive estimates agree to
/// `rel_tol` or after `max_iter` iterations.
struct PowerIterationOptions {
  double rel_tol = 1e-8;
  int max_iter = 10000;
  std::uint64_t seed = 0x5eed;
};

using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

double spectral_norm(const LinearMap& apply, const LinearMap& apply_transpose,
                     std::size_t rows, std::size_t cols,
                     const PowerIterationOptions& options = {});

double spectral_norm(const DenseMatrix& p, const PowerIterationOptions& options = {});
double spectral_norm(const CsrMatrix& c, const PowerIterationOptions& options = {});

}  // namespace mgraal
