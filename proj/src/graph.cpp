#include "mgraal/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "mgraal/errors.hpp"

namespace mgraal {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> bfs(const std::vector<std::vector<std::size_t>>& adj,
                             std::size_t source) {
  std::vector<std::size_t> dist(adj.size(), kUnreached);
  std::queue<std::size_t> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v : adj[u]) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<std::vector<std::size_t>> Graph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(k);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

Graph random_connected_graph(std::size_t k, double edge_prob, std::uint64_t seed) {
  if (k < 2) throw ConfigError("random graph needs k >= 2");
  if (!(edge_prob > 0.0 && edge_prob <= 1.0)) {
    throw ConfigError("edge probability must lie in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);

  std::set<std::pair<std::size_t, std::size_t>> edges;
  auto add = [&edges](std::size_t a, std::size_t b) {
    edges.emplace(std::min(a, b), std::max(a, b));
  };
  for (std::size_t i = 1; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    add(perm[i], perm[pick(rng)]);
  }
  std::bernoulli_distribution coin(edge_prob);
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = u + 1; v < k; ++v) {
      if (coin(rng)) add(u, v);
    }
  }
  Graph g;
  g.k = k;
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

Graph read_edge_list(std::istream& in) {
  std::set<std::pair<std::size_t, std::size_t>> edges;
  std::size_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    long long u = 0;
    long long v = 0;
    if (!(ss >> u)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError(lineno, "expected two vertex ids");
    }
    if (!(ss >> v)) throw ParseError(lineno, "expected two vertex ids");
    std::string rest;
    if (ss >> rest) throw ParseError(lineno, "trailing token '" + rest + "'");
    if (u < 0 || v < 0) throw ParseError(lineno, "vertex ids must be nonnegative");
    if (u == v) throw ParseError(lineno, "self-loop");
    const auto a = static_cast<std::size_t>(u);
    const auto b = static_cast<std::size_t>(v);
    edges.emplace(std::min(a, b), std::max(a, b));
    max_id = std::max({max_id, a, b});
    any = true;
  }
  if (!any) throw ParseError(0, "edge list is empty");
  Graph g;
  g.k = max_id + 1;
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

bool is_connected(const Graph& g) {
  if (g.k == 0) return false;
  const auto dist = bfs(g.adjacency(), 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::size_t d) { return d == kUnreached; });
}

DenseMatrix graph_distance_matrix(const Graph& g) {
  const auto adj = g.adjacency();
  DenseMatrix p(g.k, g.k);
  for (std::size_t s = 0; s < g.k; ++s) {
    const auto dist = bfs(adj, s);
    for (std::size_t t = 0; t < g.k; ++t) {
      if (dist[t] == kUnreached) {
        throw ConfigError("graph is disconnected: vertex " + std::to_string(t) +
                          " unreachable from " + std::to_string(s));
      }
      p(s, t) = static_cast<double>(dist[t]);
    }
  }
  return p;
}

}  // namespace mgraal
