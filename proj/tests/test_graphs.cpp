#include "doctest.h"

#include <algorithm>
#include <set>

#include "qwalk/graphs.hpp"
#include "qwalk/operators.hpp"

using namespace qwalk;
using namespace qwalk::graphs;

TEST_SUITE_BEGIN("graphs");

namespace {

std::vector<ColoredGraph> builder_menagerie() {
  return {build_cycle(4),
          build_cycle(8),
          build_torus(2, PairingMode::flip_flop),
          build_torus(4, PairingMode::flip_flop),
          build_torus(4, PairingMode::edge_colored),
          build_torus(6, PairingMode::edge_colored),
          build_hypercube(1),
          build_hypercube(3),
          build_hypercube(4)};
}

}  // namespace

TEST_CASE("torus flip-flop pairing reverses the direction") {
  const ColoredGraph g = build_torus(2, PairingMode::flip_flop);
  const std::size_t n = g.num_vertices;
  // pairing(+x, (0,0)) = (-x, (1,0))
  CHECK(g.pair(flat_index(0, 0, n)) == flat_index(1, 1, n));
  CHECK(g.pair(flat_index(1, 1, n)) == flat_index(0, 0, n));
}

TEST_CASE("torus edge-colored pairing keeps the color") {
  const ColoredGraph g = build_torus(4, PairingMode::edge_colored);
  const std::size_t n = g.num_vertices;
  CHECK(g.pair(flat_index(0, 0, n)) == flat_index(0, 1, n));
  CHECK(g.pair(flat_index(0, 1, n)) == flat_index(0, 0, n));
  for (std::size_t l = 0; l < g.dim(); ++l) {
    CHECK(unflatten(g.pair(l), n).coin == unflatten(l, n).coin);
  }
}

TEST_CASE("odd torus side is rejected with the evenness rule") {
  CHECK_THROWS_WITH_AS(build_torus(3, PairingMode::flip_flop),
                       doctest::Contains("must be even"), std::invalid_argument);
}

TEST_CASE("cycle neighbor colors") {
  const ColoredGraph g = build_cycle(4);
  CHECK(g.pair(flat_index(0, 1, 4)) == flat_index(0, 0, 4));
  CHECK(g.pair(flat_index(1, 1, 4)) == flat_index(1, 2, 4));
  for (std::size_t l = 0; l < 8; ++l) {
    CHECK(g.pair(g.pair(l)) == l);
  }
}

TEST_CASE("cycle(6) has 12 valid pairing entries") {
  const ColoredGraph g = build_cycle(6);
  CHECK(g.dim() == 12);
  CHECK(validate(g).ok());
  for (std::size_t l = 0; l < g.dim(); ++l) {
    CHECK(g.pair(g.pair(l)) == l);
    CHECK(unflatten(g.pair(l), 6).vertex != unflatten(l, 6).vertex);
  }
}

TEST_CASE("odd cycle is rejected") {
  CHECK_THROWS_AS(build_cycle(5), std::invalid_argument);
}

TEST_CASE("hypercube pairing flips the indexed bit") {
  const ColoredGraph g = build_hypercube(3);
  CHECK(g.pair(flat_index(1, 0b000, 8)) == flat_index(1, 0b010, 8));

  const ColoredGraph tiny = build_hypercube(1);
  CHECK(tiny.num_vertices == 2);
  CHECK(tiny.pair(tiny.pair(0)) == 0);
}

TEST_CASE("hypercube(3) is 3-regular with 12 edges, by enumeration") {
  const ColoredGraph g = build_hypercube(3);
  std::set<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::set<std::size_t>> neighbors(g.num_vertices);
  for (std::size_t l = 0; l < g.dim(); ++l) {
    const std::size_t v = unflatten(l, g.num_vertices).vertex;
    const std::size_t w = unflatten(g.pair(l), g.num_vertices).vertex;
    edges.insert({std::min(v, w), std::max(v, w)});
    neighbors[v].insert(w);
  }
  CHECK(edges.size() == 12);
  for (const auto& nb : neighbors) {
    CHECK(nb.size() == 3);
  }
}

TEST_CASE("builder graphs pass validate and the pairing is an involution") {
  for (const ColoredGraph& g : builder_menagerie()) {
    CAPTURE(g.name);
    CHECK(validate(g).ok());
    for (std::size_t l = 0; l < g.dim(); ++l) {
      CHECK(g.pair(g.pair(l)) == l);
      CHECK(unflatten(g.pair(l), g.num_vertices).vertex != unflatten(l, g.num_vertices).vertex);
    }
  }
}

TEST_CASE("validate reports hand-built violations") {
  ColoredGraph g = build_cycle(4);
  g.pairing[flat_index(0, 0, 4)] = flat_index(0, 0, 4);
  const ValidationReport report = validate(g);
  CHECK(!report.ok());
  bool self_loop = false;
  bool involution = false;
  for (const auto& v : report.violations) {
    self_loop = self_loop || v.find("self-loop") != std::string::npos;
    involution = involution || v.find("involution") != std::string::npos;
  }
  CHECK(self_loop);
  CHECK(involution);  // pairing(0,1) still points at (0,0), which no longer returns
}

TEST_CASE("json round trip") {
  for (const ColoredGraph& g : builder_menagerie()) {
    const ColoredGraph back = graph_from_json(graph_to_json(g));
    CHECK(back.name == g.name);
    CHECK(back.num_vertices == g.num_vertices);
    CHECK(back.degree == g.degree);
    CHECK(back.mode == g.mode);
    CHECK(back.pairing == g.pairing);
  }
}

TEST_CASE("coined graph of the square with a Hadamard coin is an 8-cycle") {
  const CoinedGraph gp = derive_coined_graph(build_cycle(4), operators::CoinSpec::hadamard());
  CHECK(gp.node_count == 8);
  CHECK(gp.edges.size() == 8);
  for (std::size_t node = 0; node < 8; ++node) {
    CHECK(node_degree(gp, node) == 2);
  }
  // single cycle: walk it
  std::vector<std::vector<std::size_t>> adj(8);
  for (const auto& [a, b] : gp.edges) {
    CHECK(a != b);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::size_t prev = 0;
  std::size_t cur = adj[0][0];
  std::size_t length = 1;
  while (cur != 0) {
    const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = next;
    ++length;
    REQUIRE(length <= 8);
  }
  CHECK(length == 8);
}

TEST_CASE("coined torus with the Grover coin has degree 4 everywhere") {
  const CoinedGraph gp = derive_coined_graph(build_torus(4, PairingMode::flip_flop),
                                             operators::CoinSpec::grover());
  CHECK(gp.node_count == 64);
  for (std::size_t node = 0; node < gp.node_count; ++node) {
    CHECK(node_degree(gp, node) == 4);  // 1 shift edge + 3 coin edges
  }
  CHECK(gp.grouping[flat_index(2, 5, 16)] == 5);
}

TEST_CASE("diagonal Hermitian-unitary coin produces no coin edges") {
  const std::vector<Complex> diag = {Complex{1, 0}, Complex{0, 0}, Complex{0, 0},
                                     Complex{-1, 0}};
  const CoinedGraph gp =
      derive_coined_graph(build_cycle(4), operators::CoinSpec::custom(diag));
  CHECK(gp.edges.size() == 4);  // shift edges only
}

TEST_CASE("invalid coins are rejected") {
  const std::vector<Complex> not_unitary = {Complex{1, 0}, Complex{1, 0}, Complex{1, 0},
                                            Complex{1, 0}};
  CHECK_THROWS_AS(derive_coined_graph(build_cycle(4), operators::CoinSpec::custom(not_unitary)),
                  std::invalid_argument);
  const std::vector<Complex> not_hermitian = {Complex{0, 0}, Complex{0, 1}, Complex{0, 1},
                                              Complex{0, 0}};
  CHECK_THROWS_AS(
      derive_coined_graph(build_cycle(4), operators::CoinSpec::custom(not_hermitian)),
      std::invalid_argument);
}

TEST_CASE("coined graphs never contain self-loops") {
  for (const ColoredGraph& g : builder_menagerie()) {
    const auto spec = g.degree == 2 ? operators::CoinSpec::hadamard()
                                    : operators::CoinSpec::grover();
    const CoinedGraph gp = derive_coined_graph(g, spec);
    for (const auto& [a, b] : gp.edges) {
      CHECK(a != b);
    }
  }
}

TEST_SUITE_END();
