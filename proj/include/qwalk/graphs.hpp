#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/core.hpp"

namespace qwalk::graphs {

using VertexId = std::size_t;
using CoinLabel = std::size_t;

struct BasisLabel {
  CoinLabel coin;
  VertexId vertex;
  bool operator==(const BasisLabel&) const = default;
};

/// Coin-major flattening, fixed project-wide: flat = coin*N + vertex.
inline std::size_t flat_index(CoinLabel coin, VertexId vertex, std::size_t num_vertices) {
  return coin * num_vertices + vertex;
}
inline BasisLabel unflatten(std::size_t flat, std::size_t num_vertices) {
  return {flat / num_vertices, flat % num_vertices};
}

enum class PairingMode { edge_colored, flip_flop };

const char* to_string(PairingMode mode);

/// d-regular graph given as an adjacency-respecting involution on the
/// (coin, vertex) basis labels. pairing[flat(i,v)] = flat(j(i,v), v(i)).
struct ColoredGraph {
  std::size_t num_vertices = 0;  // N
  std::size_t degree = 0;        // d
  std::vector<std::size_t> pairing;
  std::string name;
  PairingMode mode = PairingMode::edge_colored;

  std::size_t dim() const { return num_vertices * degree; }
  std::size_t pair(std::size_t flat) const { return pairing[flat]; }
};

/// side x side periodic grid, d = 4. side must be even.
ColoredGraph build_torus(std::size_t side, PairingMode mode);
/// even cycle, d = 2, edges {2k,2k+1} color 0 and {2k+1,2k+2} color 1.
ColoredGraph build_cycle(std::size_t n);
/// 2^dim vertices, d = dim, pairing(i,v) = (i, v XOR e_i).
ColoredGraph build_hypercube(std::size_t dim);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const ColoredGraph& g);

std::string graph_to_json(const ColoredGraph& g);
/// validate_on_load=false defers invariant checking to the caller (the CLI
/// validate command reports violations instead of throwing).
ColoredGraph graph_from_json(const std::string& text, bool validate_on_load = true);

/// Graph on arbitrary node ids with a node -> vertex grouping map. Used both
/// for the coined graph G' (nodes are basis labels) and for quotient graphs
/// (nodes are orbit states).
struct CoinedGraph {
  std::size_t node_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // first < second, sorted
  std::vector<std::size_t> grouping;                       // node -> vertex id
};

/// The self-loop-free graph on which the limit Hamiltonian S+F-2I is local:
/// shift edges from the pairing, coin edges from nonzero off-diagonal coin
/// entries at each vertex.
CoinedGraph derive_coined_graph(const ColoredGraph& g, const operators::CoinSpec& spec);

std::size_t node_degree(const CoinedGraph& g, std::size_t node);

}  // namespace qwalk::graphs
