#include "mgraal/logreg.hpp"

#include <cmath>
#include <memory>
#include <random>

#include "mgraal/errors.hpp"
#include "mgraal/geometry.hpp"
#include "mgraal/proximal.hpp"

namespace mgraal {

double regularization_weight(const LogRegDataset& ds) {
  if (ds.m() == 0) throw ConfigError("regularization weight of an empty dataset");
  check_dimension(ds.m(), ds.labels.size(), "regularization_weight labels");
  std::vector<double> ctc(ds.n(), 0.0);
  const CsrMatrix& c = ds.features;
  for (std::size_t i = 0; i < c.rows; ++i) {
    for (std::size_t p = c.row_ptr[i]; p < c.row_ptr[i + 1]; ++p) {
      ctc[c.col_idx[p]] += c.values[p] * ds.labels[i];
    }
  }
  return 0.005 * norm_inf(ctc);
}

LogRegModel::LogRegModel(LogRegDataset ds, kernels::Backend backend)
    : ds_(std::move(ds)), transposed_(ds_.features.transpose()), backend_(backend) {
  check_dimension(ds_.m(), ds_.labels.size(), "LogRegModel labels");
  if (ds_.m() == 0 || ds_.n() == 0) throw ConfigError("empty logistic-regression dataset");
  for (double c : ds_.labels) {
    if (c != 1.0 && c != -1.0) throw ConfigError("labels must be +1 or -1");
  }
}

void LogRegModel::gradient(std::span<const double> x, std::span<double> out) const {
  check_dimension(ds_.n(), x.size(), "logreg_operator x");
  check_dimension(ds_.n(), out.size(), "logreg_operator out");
  std::vector<double> z(ds_.m());
  kernels::csr_gemv(backend_, ds_.features, x, z);
  kernels::logistic_coefficients(backend_, z, ds_.labels, z);
  kernels::csr_gemv(backend_, transposed_, z, out);
}

double LogRegModel::objective(std::span<const double> x) const {
  check_dimension(ds_.n(), x.size(), "logreg_objective x");
  std::vector<double> z(ds_.m());
  kernels::csr_gemv(backend_, ds_.features, x, z);
  double l1 = 0.0;
  for (double xi : x) l1 += std::abs(xi);
  return kernels::softplus_sum(backend_, z, ds_.labels) + ds_.beta_bar * l1;
}

double LogRegModel::lipschitz() const {
  const double s = spectral_norm(ds_.features);
  return 0.25 * s * s;
}

std::vector<double> logreg_operator(const LogRegDataset& ds, std::span<const double> x) {
  const LogRegModel model(ds);
  std::vector<double> out(ds.n());
  model.gradient(x, out);
  return out;
}

double logreg_objective(const LogRegDataset& ds, std::span<const double> x) {
  return LogRegModel(ds).objective(x);
}

Problem make_problem(const LogRegModel& model) {
  auto shared = std::make_shared<const LogRegModel>(model);
  const std::size_t n = model.dimension();
  Problem problem(
      "logreg-m" + std::to_string(model.dataset().m()) + "-n" + std::to_string(n),
      Geometry::euclidean(n), Regularizer::l1(model.dataset().beta_bar),
      [shared](std::span<const double> x, std::span<double> out) { shared->gradient(x, out); },
      std::vector<double>(n, 0.0));
  problem.with_lipschitz(model.lipschitz());
  problem.with_merit([shared](std::span<const double> x) { return shared->objective(x); });
  return problem;
}

LogRegDataset make_synthetic_logreg(std::size_t m, std::size_t n, std::uint64_t seed,
                                    double flip) {
  if (m == 0 || n == 0) throw ConfigError("synthetic dataset needs m, n > 0");
  if (!(flip >= 0.0 && flip <= 1.0)) throw ConfigError("flip fraction must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(flip);
  std::vector<double> hyperplane(n);
  for (double& h : hyperplane) h = normal(rng);

  LogRegDataset ds;
  CsrMatrix& c = ds.features;
  c.rows = m;
  c.cols = n;
  for (std::size_t i = 0; i < m; ++i) {
    double margin = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = normal(rng);
      c.col_idx.push_back(j);
      c.values.push_back(v);
      margin += v * hyperplane[j];
    }
    c.row_ptr.push_back(c.values.size());
    double label = margin >= 0.0 ? 1.0 : -1.0;
    if (coin(rng)) label = -label;
    ds.labels.push_back(label);
  }
  ds.beta_bar = regularization_weight(ds);
  return ds;
}

}  // namespace mgraal
