#include "mgraal/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mgraal/errors.hpp"
#include "mgraal/kernels.hpp"

namespace mgraal {

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c, std::vector<double> values)
    : rows(r), cols(c), data(std::move(values)) {
  check_dimension(r * c, data.size(), "DenseMatrix values");
}

CsrMatrix CsrMatrix::transpose() const {
  CsrMatrix t;
  t.rows = cols;
  t.cols = rows;
  t.row_ptr.assign(cols + 1, 0);
  for (std::size_t j : col_idx) ++t.row_ptr[j + 1];
  for (std::size_t j = 0; j < cols; ++j) t.row_ptr[j + 1] += t.row_ptr[j];
  t.col_idx.resize(nnz());
  t.values.resize(nnz());
  std::vector<std::size_t> cursor(t.row_ptr.begin(), t.row_ptr.end() - 1);
  // Row-major sweep keeps the transposed column indices sorted.
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      const std::size_t dst = cursor[col_idx[p]]++;
      t.col_idx[dst] = i;
      t.values[dst] = values[p];
    }
  }
  return t;
}

double dot(std::span<const double> x, std::span<const double> y) {
  check_dimension(x.size(), y.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) {
  // Scaled accumulation; iterate differences can be ~1e-200 on entropic runs.
  double scale = 0.0;
  for (double xi : x) scale = std::max(scale, std::abs(xi));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (double xi : x) {
    const double r = xi / scale;
    s += r * r;
  }
  return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double xi : x) m = std::max(m, std::abs(xi));
  return m;
}

double distance2(std::span<const double> x, std::span<const double> y) {
  check_dimension(x.size(), y.size(), "distance2");
  std::vector<double> d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return norm2(d);
}

double spectral_norm(const LinearMap& apply, const LinearMap& apply_transpose,
                     std::size_t rows, std::size_t cols,
                     const PowerIterationOptions& options) {
  if (rows == 0 || cols == 0) throw ConfigError("spectral_norm: empty operator");
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> v(cols);
  for (double& vi : v) vi = unif(rng);
  std::vector<double> mv(rows);
  std::vector<double> mtmv(cols);

  auto normalize = [](std::vector<double>& x) {
    const double n = norm2(x);
    for (double& xi : x) xi /= n;
    return n;
  };
  normalize(v);

  double sigma = 0.0;
  for (int it = 0; it < options.max_iter; ++it) {
    apply(v, mv);
    apply_transpose(mv, mtmv);
    // v is a unit vector, so |M^T M v| estimates sigma^2.
    const double lambda = norm2(mtmv);
    if (lambda == 0.0) {
      if (it == 0) {
        // Random start orthogonal to the row space is measure-zero; a zero
        // image means M = 0.
        throw ConfigError("spectral_norm: zero operator");
      }
      break;
    }
    const double next = std::sqrt(lambda);
    v = mtmv;
    normalize(v);
    if (it > 0 && std::abs(next - sigma) <= options.rel_tol * next) {
      sigma = next;
      break;
    }
    sigma = next;
  }
  return sigma;
}

double spectral_norm(const DenseMatrix& p, const PowerIterationOptions& options) {
  return spectral_norm(
      [&p](std::span<const double> x, std::span<double> y) { kernels::serial::gemv(p, x, y); },
      [&p](std::span<const double> x, std::span<double> y) { kernels::serial::gemv_t(p, x, y); },
      p.rows, p.cols, options);
}

double spectral_norm(const CsrMatrix& c, const PowerIterationOptions& options) {
  const CsrMatrix ct = c.transpose();
  return spectral_norm(
      [&c](std::span<const double> x, std::span<double> y) { kernels::serial::csr_gemv(c, x, y); },
      [&ct](std::span<const double> x, std::span<double> y) { kernels::serial::csr_gemv(ct, x, y); },
      c.rows, c.cols, options);
}

}  // namespace mgraal
