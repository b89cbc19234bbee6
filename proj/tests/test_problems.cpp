#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "mgraal/errors.hpp"
#include "mgraal/graph.hpp"
#include "mgraal/linalg.hpp"
#include "mgraal/logreg.hpp"
#include "mgraal/matrix_game.hpp"
#include "oracles.hpp"

using namespace mgraal;
using doctest::Approx;

namespace {

std::vector<double> concat(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

double eigen_sigma_max(const DenseMatrix& p) {
  Eigen::MatrixXd m(p.rows, p.cols);
  for (std::size_t i = 0; i < p.rows; ++i)
    for (std::size_t j = 0; j < p.cols; ++j) m(i, j) = p(i, j);
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

LogRegDataset parse(const std::string& text, const LibsvmOptions& opts = {}) {
  std::istringstream in(text);
  return parse_libsvm(in, opts);
}

long parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return static_cast<long>(e.line());
  }
  return -1;
}

}  // namespace

TEST_CASE("random_connected_graph") {
  const Graph two = random_connected_graph(2, 0.5, 7);
  REQUIRE(two.edges.size() == 1);
  CHECK(two.edges[0] == std::pair<std::size_t, std::size_t>{0, 1});

  CHECK(random_connected_graph(10, 0.3, 11).edges == random_connected_graph(10, 0.3, 11).edges);
  CHECK(random_connected_graph(10, 0.3, 11).edges != random_connected_graph(10, 0.3, 12).edges);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t k = 2 + seed % 40;
    const double p = 0.01 + 0.005 * static_cast<double>(seed % 100);
    const Graph g = random_connected_graph(k, p, seed);
    CHECK(g.k == k);
    CHECK(g.edges.size() >= k - 1);
    CHECK(is_connected(g));
    // Floyd-Warshall reaches every pair.
    const auto d = oracle::floyd_warshall(k, g.edges);
    for (const auto& row : d)
      for (double x : row) CHECK(std::isfinite(x));
    for (const auto& [u, v] : g.edges) CHECK(u < v);
    CHECK(std::set(g.edges.begin(), g.edges.end()).size() == g.edges.size());
  }
  // p = 1 gives the complete graph.
  CHECK(random_connected_graph(6, 1.0, 0).edges.size() == 15);

  CHECK_THROWS_AS(random_connected_graph(1, 0.5, 0), ConfigError);
  CHECK_THROWS_AS(random_connected_graph(5, 0.0, 0), ConfigError);
  CHECK_THROWS_AS(random_connected_graph(5, 1.5, 0), ConfigError);
}

TEST_CASE("graph_distance_matrix") {
  Graph edge{2, {{0, 1}}};
  const DenseMatrix d2 = graph_distance_matrix(edge);
  CHECK(d2.data == std::vector<double>{0, 1, 1, 0});

  Graph path{3, {{0, 1}, {1, 2}}};
  CHECK(graph_distance_matrix(path).data == std::vector<double>{0, 1, 2, 1, 0, 1, 2, 1, 0});

  Graph split{4, {{0, 1}, {2, 3}}};
  CHECK_FALSE(is_connected(split));
  CHECK_THROWS_AS(graph_distance_matrix(split), ConfigError);

  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = random_connected_graph(3 + seed % 30, 0.15, seed);
    const DenseMatrix d = graph_distance_matrix(g);
    const auto fw = oracle::floyd_warshall(g.k, g.edges);
    bool same = true;
    for (std::size_t i = 0; i < g.k; ++i)
      for (std::size_t j = 0; j < g.k; ++j) same = same && d(i, j) == fw[i][j];
    CHECK(same);
    std::uniform_int_distribution<std::size_t> pick(0, g.k - 1);
    for (int t = 0; t < 200; ++t) {
      const std::size_t i = pick(rng), j = pick(rng), l = pick(rng);
      CHECK(d(i, j) <= d(i, l) + d(l, j));
      CHECK(d(i, j) == d(j, i));
    }
    for (std::size_t i = 0; i < g.k; ++i) CHECK(d(i, i) == 0.0);
  }
}

TEST_CASE("read_edge_list") {
  std::istringstream in("# ring\n0 1\n\n1 2\n2 0  \n");
  const Graph g = read_edge_list(in);
  CHECK(g.k == 3);
  CHECK(g.edges.size() == 3);
  CHECK(graph_distance_matrix(g).data == std::vector<double>{0, 1, 1, 1, 0, 1, 1, 1, 0});

  std::istringstream bad("0 1\n1 x\n");
  try {
    read_edge_list(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream self_loop("0 0\n");
  CHECK_THROWS_AS(read_edge_list(self_loop), ParseError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(read_edge_list(empty), ParseError);
}

TEST_CASE("spectral_norm") {
  CHECK(spectral_norm(DenseMatrix(2, 2, {0, 1, 1, 0})) == Approx(1.0).epsilon(1e-8));
  CHECK(spectral_norm(DenseMatrix(2, 2, {1, 1, 1, 1})) == Approx(2.0).epsilon(1e-8));
  CHECK(spectral_norm(DenseMatrix(2, 2, {3, 0, 0, 4})) == Approx(4.0).epsilon(1e-8));
  CHECK_THROWS_AS(spectral_norm(DenseMatrix(3, 3, 0.0)), ConfigError);

  std::mt19937_64 rng(9);
  for (int t = 0; t < 40; ++t) {
    const std::size_t r = 1 + rng() % 25, c = 1 + rng() % 25;
    DenseMatrix m(r, c);
    for (double& x : m.data) x = oracle::random_vector(1, -2, 2, rng)[0];
    CHECK(spectral_norm(m) == Approx(eigen_sigma_max(m)).epsilon(1e-6));
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DenseMatrix p = graph_distance_matrix(random_connected_graph(20, 0.2, seed));
    CHECK(spectral_norm(p) == Approx(eigen_sigma_max(p)).epsilon(1e-6));
  }

  CsrMatrix c;
  c.rows = 2;
  c.cols = 3;
  c.row_ptr = {0, 2, 3};
  c.col_idx = {0, 2, 1};
  c.values = {3, 4, 2};
  CHECK(spectral_norm(c) == Approx(5.0).epsilon(1e-8));
}

TEST_CASE("game operator") {
  const MatrixGame g(DenseMatrix(2, 2, {0, 1, 1, 0}));
  const auto a = game_operator(g, std::vector<double>{0.5, 0.5, 0.5, 0.5});
  CHECK(a == std::vector<double>{0.5, 0.5, -0.5, -0.5});

  // P = 0 has no Lipschitz constant to report.
  CHECK_THROWS_AS(MatrixGame(DenseMatrix(3, 3, 0.0)), ConfigError);

  // Asymmetric P pins the transpose placement.
  const MatrixGame asym(DenseMatrix(2, 2, {1, 2, 3, 4}));
  const auto b = game_operator(asym, std::vector<double>{1, 0, 0, 1});
  CHECK(b == std::vector<double>{3, 4, -1, -3});

  CHECK_THROWS_AS(game_operator(g, std::vector<double>{0.5, 0.5, 1}), DimensionError);
  CHECK_THROWS_AS(MatrixGame(DenseMatrix(2, 3, 1.0)), DimensionError);

  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t k = 2 + seed % 15;
    const MatrixGame game(graph_distance_matrix(random_connected_graph(k, 0.3, seed)));
    CHECK(game.lipschitz() == Approx(eigen_sigma_max(game.payoff())).epsilon(1e-6));
    for (int t = 0; t < 50; ++t) {
      const auto w = concat(oracle::random_simplex_point(k, rng), oracle::random_simplex_point(k, rng));
      const auto v = concat(oracle::random_simplex_point(k, rng), oracle::random_simplex_point(k, rng));
      const auto aw = game_operator(game, w);
      const auto av = game_operator(game, v);
      std::vector<double> da(aw.size()), dw(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) {
        da[i] = aw[i] - av[i];
        dw[i] = w[i] - v[i];
      }
      CHECK(std::abs(dot(da, dw)) <= 1e-10);
      CHECK(norm2(da) <= (game.lipschitz() + 1e-6) * norm2(dw));
    }
  }
}

TEST_CASE("duality_gap") {
  const MatrixGame g(DenseMatrix(2, 2, {0, 1, 1, 0}));
  const std::vector<double> half{0.5, 0.5};
  CHECK(duality_gap(g, half, half) == Approx(0.0));
  CHECK(duality_gap(g, std::vector<double>{1, 0}, half) == Approx(0.5));
  CHECK_THROWS_AS(duality_gap(g, std::vector<double>{1, 1}, half), DomainError);
  CHECK_THROWS_AS(duality_gap(g, std::vector<double>{1.5, -0.5}, half), DomainError);

  std::mt19937_64 rng(8);
  const MatrixGame game(graph_distance_matrix(random_connected_graph(12, 0.3, 1)));
  for (int t = 0; t < 1000; ++t) {
    CHECK(duality_gap(game, oracle::random_simplex_point(12, rng),
                      oracle::random_simplex_point(12, rng)) >= -1e-12);
  }

  const Problem p = make_problem(g);
  CHECK(p.initial_point() == std::vector<double>{0.5, 0.5, 0.5, 0.5});
  CHECK(p.lipschitz().value() == Approx(1.0));
  CHECK(p.merit(std::vector<double>{1, 0, 0.5, 0.5}) == Approx(0.5));
}

TEST_CASE("parse_libsvm") {
  const auto ds = parse("+1 1:0.5 3:2\n-1 2:1\n");
  CHECK(ds.m() == 2);
  CHECK(ds.n() == 3);
  CHECK(ds.labels == std::vector<double>{1, -1});
  CHECK(ds.features.row_ptr == std::vector<std::size_t>{0, 2, 3});
  CHECK(ds.features.col_idx == std::vector<std::size_t>{0, 2, 1});
  CHECK(ds.features.values == std::vector<double>{0.5, 2, 1});
  CHECK(ds.beta_bar == Approx(0.005 * 2.0));

  CHECK(parse("0 1:1\n1 1:2\n").labels == std::vector<double>{-1, 1});
  CHECK(parse("1 1:1\n", {.n = 5}).n() == 5);
  CHECK(parse("1 1:1\n", {.n = std::nullopt, .auto_beta = false}).beta_bar == 0.0);
  CHECK(parse("\n1 2:1e-3\n\n").m() == 1);
  // A label with no features is a valid all-zero row.
  CHECK(parse("1 2:1\n-1\n").features.row_ptr == std::vector<std::size_t>{0, 1, 1});

  CHECK(parse_error_line("+1 3:1 2:1\n") == 1);
  CHECK(parse_error_line("1 1:1\n1 1:1 1:2\n") == 2);
  CHECK(parse_error_line("1 1:1\n1 a:1\n") == 2);
  CHECK(parse_error_line("1 1:1\n\n1 1:x\n") == 3);
  CHECK(parse_error_line("1 0:1\n") == 1);
  CHECK(parse_error_line("2 1:1\n") == 1);
  CHECK(parse_error_line("one 1:1\n") == 1);
  CHECK(parse_error_line("1 1\n") == 1);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("1 4:1\n", {.n = 3}), ParseError);
  CHECK_THROWS_AS(read_libsvm_file("/nonexistent/data.libsvm"), std::runtime_error);
}

TEST_CASE("regularization_weight") {
  CHECK(regularization_weight(parse("1 1:1\n-1 1:-1\n")) == Approx(0.01));
  CHECK(regularization_weight(parse("1\n-1\n", {.n = 2})) == 0.0);
  CHECK(regularization_weight(parse("1 1:2\n", {.n = 2})) == Approx(0.01));
}

TEST_CASE("logreg operator and objective") {
  const auto single = parse("1 1:1\n", {.n = std::nullopt, .auto_beta = false});
  CHECK(logreg_operator(single, std::vector<double>{0.0})[0] == Approx(-0.5));
  CHECK(logreg_objective(single, std::vector<double>{0.0}) == Approx(std::log(2.0)));
  // Saturated margins.
  CHECK(std::abs(logreg_operator(single, std::vector<double>{800.0})[0]) < 1e-300);
  CHECK(logreg_objective(single, std::vector<double>{800.0}) == 0.0);
  CHECK(logreg_objective(single, std::vector<double>{-800.0}) == Approx(800.0));
  CHECK(logreg_operator(single, std::vector<double>{-800.0})[0] == Approx(-1.0));
  CHECK_THROWS_AS(logreg_operator(single, std::vector<double>{0, 0}), DimensionError);

  const auto ds = make_synthetic_logreg(50, 8, 21);
  CHECK(ds.m() == 50);
  CHECK(ds.n() == 8);
  for (double c : ds.labels) CHECK((c == 1.0 || c == -1.0));
  CHECK(ds.beta_bar == Approx(regularization_weight(ds)));
  CHECK(logreg_objective(ds, std::vector<double>(8, 0.0)) == Approx(50 * std::log(2.0)));

  const LogRegModel model(ds);
  CHECK(model.lipschitz() == Approx(std::pow(spectral_norm(ds.features), 2) / 4.0));

  LogRegDataset plain = ds;
  plain.beta_bar = 0.0;
  const auto loss = [&](std::span<const double> x) { return logreg_objective(plain, x); };

  std::mt19937_64 rng(17);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto x = oracle::random_vector(8, -1, 1, rng);
    const auto g = logreg_operator(ds, x);
    const auto fd = oracle::central_gradient(loss, x);
    std::vector<double> diff(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) diff[i] = g[i] - fd[i];
    worst = std::max(worst, norm2(diff) / std::max(1.0, norm2(g)));

    CHECK(logreg_objective(ds, x) ==
          Approx(oracle::logistic_loss_direct(ds.features, ds.labels, x, ds.beta_bar))
              .epsilon(1e-10));

    const auto y = oracle::random_vector(8, -3, 3, rng);
    const auto gy = logreg_operator(ds, y);
    double mono = 0.0;
    for (std::size_t i = 0; i < 8; ++i) mono += (g[i] - gy[i]) * (x[i] - y[i]);
    CHECK(mono >= -1e-10);
  }
  CHECK(worst <= 1e-6);

  const Problem p = make_problem(model);
  CHECK(p.initial_point() == std::vector<double>(8, 0.0));
  CHECK(p.regularizer().kind() == RegularizerKind::L1);
  CHECK(p.geometry().kind() == GeometryKind::Euclidean);
  CHECK(p.merit(std::vector<double>(8, 0.0)) == Approx(50 * std::log(2.0)));
}

TEST_CASE("logreg objective on separable data decreases toward zero") {
  const auto ds = parse("1 1:1\n-1 1:-1\n1 1:2\n", {.n = std::nullopt, .auto_beta = false});
  double prev = logreg_objective(ds, std::vector<double>{0.0});
  for (double s : {1.0, 10.0, 100.0, 1000.0}) {
    const double v = logreg_objective(ds, std::vector<double>{s});
    CHECK(v < prev);
    CHECK(v >= 0.0);
    prev = v;
  }
  CHECK(prev < 1e-300);
}
