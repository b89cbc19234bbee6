#pragma once

#include <cstdint>
#include <istream>
#include <utility>
#include <vector>

#include "mgraal/linalg.hpp"

namespace mgraal {

/// Simple undirected graph on vertices 0..k-1.
struct Graph {
  std::size_t k = 0;
  // Sorted (u < v) pairs, no duplicates.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::vector<std::vector<std::size_t>> adjacency() const;
};

// Random spanning tree over a seeded vertex permutation, plus every other
// pair independently with probability edge_prob. Connected by construction.
Graph random_connected_graph(std::size_t k, double edge_prob, std::uint64_t seed);

// "u v" per line, 0-based ids; blank lines and '#' comments are skipped.
// The vertex count is max id + 1.
Graph read_edge_list(std::istream& in);

bool is_connected(const Graph& g);

// All-pairs hop distances by breadth-first search. Throws ConfigError on a
// disconnected graph.
DenseMatrix graph_distance_matrix(const Graph& g);

}  // namespace mgraal
