#include <cmath>

#include "mgraal/errors.hpp"
#include "mgraal/kernels.hpp"

namespace mgraal::kernels {

double sigmoid(double u) noexcept {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

double softplus(double u) noexcept {
  return std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u)));
}

namespace serial {

void gemv(const DenseMatrix& a, std::span<const double> x, std::span<double> y) {
  check_dimension(a.cols, x.size(), "gemv x");
  check_dimension(a.rows, y.size(), "gemv y");
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* row = a.data.data() + i * a.cols;
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void gemv_t(const DenseMatrix& a, std::span<const double> x, std::span<double> y) {
  check_dimension(a.rows, x.size(), "gemv_t x");
  check_dimension(a.cols, y.size(), "gemv_t y");
  for (std::size_t j = 0; j < a.cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) s += a.data[i * a.cols + j] * x[i];
    y[j] = s;
  }
}

void csr_gemv(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  check_dimension(a.cols, x.size(), "csr_gemv x");
  check_dimension(a.rows, y.size(), "csr_gemv y");
  for (std::size_t i = 0; i < a.rows; ++i) {
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
  for (std::size_t i = 0; i < z.size(); ++i) {
    coef[i] = -labels[i] * sigmoid(-labels[i] * z[i]);
  }
}

double softplus_sum(std::span<const double> z, std::span<const double> labels) {
  check_dimension(z.size(), labels.size(), "softplus_sum labels");
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += softplus(-labels[i] * z[i]);
  return s;
}

}  // namespace serial

void gemv(Backend b, const DenseMatrix& a, std::span<const double> x, std::span<double> y) {
  b == Backend::OpenMP ? omp::gemv(a, x, y) : serial::gemv(a, x, y);
}

void gemv_t(Backend b, const DenseMatrix& a, std::span<const double> x, std::span<double> y) {
  b == Backend::OpenMP ? omp::gemv_t(a, x, y) : serial::gemv_t(a, x, y);
}

void csr_gemv(Backend b, const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  b == Backend::OpenMP ? omp::csr_gemv(a, x, y) : serial::csr_gemv(a, x, y);
}

void logistic_coefficients(Backend b, std::span<const double> z,
                           std::span<const double> labels, std::span<double> coef) {
  b == Backend::OpenMP ? omp::logistic_coefficients(z, labels, coef)
                       : serial::logistic_coefficients(z, labels, coef);
}

double softplus_sum(Backend b, std::span<const double> z, std::span<const double> labels) {
  return b == Backend::OpenMP ? omp::softplus_sum(z, labels)
                              : serial::softplus_sum(z, labels);
}

}  // namespace mgraal::kernels
