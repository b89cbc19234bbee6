#pragma once

// Data-parallel inner loops of the operator evaluations. Each kernel has a
// serial reference in `kernels::serial` and an OpenMP version in
// `kernels::omp`; the OpenMP versions produce bit-identical results for any
// thread count (fixed partitioning, ordered reductions).

#include <span>

#include "mgraal/linalg.hpp"

namespace mgraal::kernels {

enum class Backend { Serial, OpenMP };

bool openmp_available() noexcept;
// OpenMP when compiled in, Serial otherwise.
Backend default_backend() noexcept;
int max_threads() noexcept;

// Rows per chunk in the ordered reductions.
inline constexpr std::size_t kReductionChunk = 4096;

namespace serial {
void gemv(const DenseMatrix& a, std::span<const double> x, std::span<double> y);
void gemv_t(const DenseMatrix& a, std::span<const double> x, std::span<double> y);
void csr_gemv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
// coef_i = -c_i * sigmoid(-c_i z_i)
void logistic_coefficients(std::span<const double> z, std::span<const double> labels,
                           std::span<double> coef);
// sum_i log(1 + exp(-c_i z_i))
double softplus_sum(std::span<const double> z, std::span<const double> labels);
}  // namespace serial

namespace omp {
void gemv(const DenseMatrix& a, std::span<const double> x, std::span<double> y);
void gemv_t(const DenseMatrix& a, std::span<const double> x, std::span<double> y);
void csr_gemv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
void logistic_coefficients(std::span<const double> z, std::span<const double> labels,
                           std::span<double> coef);
double softplus_sum(std::span<const double> z, std::span<const double> labels);
}  // namespace omp

void gemv(Backend b, const DenseMatrix& a, std::span<const double> x, std::span<double> y);
void gemv_t(Backend b, const DenseMatrix& a, std::span<const double> x, std::span<double> y);
void csr_gemv(Backend b, const CsrMatrix& a, std::span<const double> x, std::span<double> y);
void logistic_coefficients(Backend b, std::span<const double> z,
                           std::span<const double> labels, std::span<double> coef);
double softplus_sum(Backend b, std::span<const double> z, std::span<const double> labels);

// Overflow-safe scalar helpers shared by both backends.
double sigmoid(double u) noexcept;
double softplus(double u) noexcept;

}  // namespace mgraal::kernels
