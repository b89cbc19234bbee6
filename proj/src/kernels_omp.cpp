#include <algorithm>
#include <vector>

#include "mgraal/errors.hpp"
#include "mgraal/kernels.hpp"

#ifdef MGRAAL_HAVE_OPENMP
#include <omp.h>
#endif

namespace mgraal::kernels {

bool openmp_available() noexcept {
#ifdef MGRAAL_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

Backend default_backend() noexcept {
  return openmp_available() ? Backend::OpenMP : Backend::Serial;
}

int max_threads() noexcept {
#ifdef MGRAAL_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace omp {

// Below these sizes the fork/join costs more than the loop.
constexpr std::size_t kMinParallelWork = 1 << 14;

void gemv(const DenseMatrix& a, std::span<const double> x, std::span<double> y) {
  check_dimension(a.cols, x.size(), "gemv x");
  check_dimension(a.rows, y.size(), "gemv y");
  const auto rows = static_cast<std::ptrdiff_t>(a.rows);
  const std::size_t cols = a.cols;
  const double* data = a.data.data();
#pragma omp parallel for schedule(static) if (a.rows * a.cols >= kMinParallelWork)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const double* row = data + static_cast<std::size_t>(i) * cols;
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
    y[static_cast<std::size_t>(i)] = s;
  }
}

void gemv_t(const DenseMatrix& a, std::span<const double> x, std::span<double> y) {
  check_dimension(a.rows, x.size(), "gemv_t x");
  check_dimension(a.cols, y.size(), "gemv_t y");
  const auto cols = static_cast<std::ptrdiff_t>(a.cols);
  const std::size_t rows = a.rows;
  const std::size_t stride = a.cols;
  const double* data = a.data.data();
  // One output column per iteration: each sum keeps the serial row order.
#pragma omp parallel for schedule(static) if (a.rows * a.cols >= kMinParallelWork)
  for (std::ptrdiff_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      s += data[i * stride + static_cast<std::size_t>(j)] * x[i];
    }
    y[static_cast<std::size_t>(j)] = s;
  }
}

void csr_gemv(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  check_dimension(a.cols, x.size(), "csr_gemv x");
  check_dimension(a.rows, y.size(), "csr_gemv y");
  const auto rows = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static) if (a.nnz() >= kMinParallelWork)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double s = 0.0;
    for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) {
      s += a.values[p] * x[a.col_idx[p]];
    }
    y[i] = s;
  }
}

void logistic_coefficients(std::span<const double> z, std::span<const double> labels,
                           std::span<double> coef) {
  check_dimension(z.size(), labels.size(), "logistic_coefficients labels");
  check_dimension(z.size(), coef.size(), "logistic_coefficients coef");
  const auto m = static_cast<std::ptrdiff_t>(z.size());
#pragma omp parallel for schedule(static) if (z.size() >= kMinParallelWork)
  for (std::ptrdiff_t ii = 0; ii < m; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    coef[i] = -labels[i] * sigmoid(-labels[i] * z[i]);
  }
}

double softplus_sum(std::span<const double> z, std::span<const double> labels) {
  check_dimension(z.size(), labels.size(), "softplus_sum labels");
  const std::size_t n = z.size();
  const std::size_t chunks = (n + kReductionChunk - 1) / kReductionChunk;
  std::vector<double> partial(chunks, 0.0);
  const auto nchunks = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static) if (n >= kMinParallelWork)
  for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
    const std::size_t begin = static_cast<std::size_t>(c) * kReductionChunk;
    const std::size_t end = std::min(n, begin + kReductionChunk);
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += softplus(-labels[i] * z[i]);
    partial[static_cast<std::size_t>(c)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace omp
}  // namespace mgraal::kernels
