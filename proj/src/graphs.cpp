#include "qwalk/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qwalk::graphs {

namespace {

using json = nlohmann::json;

void require_even(std::size_t n, const char* what) {
  if (n % 2 != 0) {
    std::ostringstream oss;
    oss << what << " must be even (got " << n
        << "): odd sizes admit no proper edge coloring compatible with an order-2 shift";
    throw std::invalid_argument(oss.str());
  }
}

}  // namespace

const char* to_string(PairingMode mode) {
  return mode == PairingMode::edge_colored ? "edge_colored" : "flip_flop";
}

ColoredGraph build_torus(std::size_t side, PairingMode mode) {
  if (side < 2) {
    throw std::invalid_argument("torus side must be >= 2");
  }
  require_even(side, "torus side");

  const std::size_t n = side * side;
  ColoredGraph g;
  g.num_vertices = n;
  g.degree = 4;
  g.mode = mode;
  g.pairing.resize(4 * n);
  {
    std::ostringstream oss;
    oss << "torus:" << side << ":" << to_string(mode);
    g.name = oss.str();
  }

  // vertex = y*side + x
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      const std::size_t v = y * side + x;
      const std::size_t xp = y * side + (x + 1) % side;
      const std::size_t xm = y * side + (x + side - 1) % side;
      const std::size_t yp = ((y + 1) % side) * side + x;
      const std::size_t ym = ((y + side - 1) % side) * side + x;
      if (mode == PairingMode::flip_flop) {
        // coins {0,1,2,3} = {+x,-x,+y,-y}; the direction label reverses on moving
        g.pairing[flat_index(0, v, n)] = flat_index(1, xp, n);
        g.pairing[flat_index(1, v, n)] = flat_index(0, xm, n);
        g.pairing[flat_index(2, v, n)] = flat_index(3, yp, n);
        g.pairing[flat_index(3, v, n)] = flat_index(2, ym, n);
      } else {
        // x-edges colored {0,1} by parity of the left endpoint's x coordinate,
        // y-edges colored {2,3} by parity of the lower endpoint's y coordinate
        const bool xe = (x % 2 == 0);
        g.pairing[flat_index(0, v, n)] = flat_index(0, xe ? xp : xm, n);
        g.pairing[flat_index(1, v, n)] = flat_index(1, xe ? xm : xp, n);
        const bool ye = (y % 2 == 0);
        g.pairing[flat_index(2, v, n)] = flat_index(2, ye ? yp : ym, n);
        g.pairing[flat_index(3, v, n)] = flat_index(3, ye ? ym : yp, n);
      }
    }
  }
  return g;
}

ColoredGraph build_cycle(std::size_t n) {
  if (n < 4) {
    throw std::invalid_argument("cycle size must be >= 4");
  }
  require_even(n, "cycle size");

  ColoredGraph g;
  g.num_vertices = n;
  g.degree = 2;
  g.mode = PairingMode::edge_colored;
  g.pairing.resize(2 * n);
  g.name = "cycle:" + std::to_string(n);

  // edges {2k,2k+1} carry color 0, edges {2k+1,2k+2} carry color 1
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t fwd = (v + 1) % n;
    const std::size_t bwd = (v + n - 1) % n;
    if (v % 2 == 0) {
      g.pairing[flat_index(0, v, n)] = flat_index(0, fwd, n);
      g.pairing[flat_index(1, v, n)] = flat_index(1, bwd, n);
    } else {
      g.pairing[flat_index(0, v, n)] = flat_index(0, bwd, n);
      g.pairing[flat_index(1, v, n)] = flat_index(1, fwd, n);
    }
  }
  return g;
}

ColoredGraph build_hypercube(std::size_t dim) {
  if (dim < 1) {
    throw std::invalid_argument("hypercube dimension must be >= 1");
  }
  if (dim > 20) {
    throw std::invalid_argument("hypercube dimension too large");
  }
  const std::size_t n = std::size_t{1} << dim;
  ColoredGraph g;
  g.num_vertices = n;
  g.degree = dim;
  g.mode = PairingMode::edge_colored;
  g.pairing.resize(dim * n);
  g.name = "hypercube:" + std::to_string(dim);

  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t v = 0; v < n; ++v) {
      g.pairing[flat_index(i, v, n)] = flat_index(i, v ^ (std::size_t{1} << i), n);
    }
  }
  return g;
}

ValidationReport validate(const ColoredGraph& g) {
  ValidationReport report;
  const std::size_t dim = g.dim();
  if (g.pairing.size() != dim) {
    report.violations.push_back("pairing size != d*N");
    return report;
  }
  for (std::size_t l = 0; l < dim; ++l) {
    const std::size_t p = g.pairing[l];
    const BasisLabel a = unflatten(l, g.num_vertices);
    if (p >= dim) {
      std::ostringstream oss;
      oss << "pairing out of range at (" << a.coin << "," << a.vertex << ")";
      report.violations.push_back(oss.str());
      continue;
    }
    const BasisLabel b = unflatten(p, g.num_vertices);
    if (b.vertex == a.vertex) {
      std::ostringstream oss;
      oss << "self-loop at (" << a.coin << "," << a.vertex << ")";
      report.violations.push_back(oss.str());
    }
    if (g.pairing[p] != l) {
      std::ostringstream oss;
      oss << "involution violated at (" << a.coin << "," << a.vertex << ")";
      report.violations.push_back(oss.str());
    }
    if (g.mode == PairingMode::edge_colored && b.coin != a.coin) {
      std::ostringstream oss;
      oss << "colored pairing must keep the coin label, violated at (" << a.coin << ","
          << a.vertex << ")";
      report.violations.push_back(oss.str());
    }
  }
  return report;
}

std::string graph_to_json(const ColoredGraph& g) {
  json j;
  j["name"] = g.name;
  j["N"] = g.num_vertices;
  j["d"] = g.degree;
  j["mode"] = to_string(g.mode);
  j["pairing"] = g.pairing;
  return j.dump();
}

ColoredGraph graph_from_json(const std::string& text, bool validate_on_load) {
  const json j = json::parse(text);
  ColoredGraph g;
  g.name = j.at("name").get<std::string>();
  g.num_vertices = j.at("N").get<std::size_t>();
  g.degree = j.at("d").get<std::size_t>();
  g.mode = j.at("mode").get<std::string>() == "flip_flop" ? PairingMode::flip_flop
                                                          : PairingMode::edge_colored;
  g.pairing = j.at("pairing").get<std::vector<std::size_t>>();
  if (validate_on_load) {
    const ValidationReport report = validate(g);
    if (!report.ok()) {
      throw std::invalid_argument("graph_from_json: " + report.violations.front());
    }
  }
  return g;
}

CoinedGraph derive_coined_graph(const ColoredGraph& g, const operators::CoinSpec& spec) {
  const ValidationReport report = validate(g);
  if (!report.ok()) {
    throw std::invalid_argument("derive_coined_graph: invalid graph: " +
                                report.violations.front());
  }
  operators::validate_coin(spec, g.degree);

  const std::size_t n = g.num_vertices;
  const std::size_t d = g.degree;
  const std::vector<Complex> c0 = operators::coin_matrix(spec, d);
  const std::vector<Complex> c1 = operators::marked_coin_matrix(spec, d);

  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t l = 0; l < g.dim(); ++l) {
    const std::size_t p = g.pairing[l];
    edges.insert({std::min(l, p), std::max(l, p)});
  }
  for (std::size_t v = 0; v < n; ++v) {
    const bool is_marked = spec.marked && spec.marked->vertex == v;
    const std::vector<Complex>& c = is_marked ? c1 : c0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t ip = i + 1; ip < d; ++ip) {
        if (std::abs(c[ip * d + i]) > 1e-12) {
          edges.insert({flat_index(i, v, n), flat_index(ip, v, n)});
        }
      }
    }
  }

  CoinedGraph out;
  out.node_count = g.dim();
  out.edges.assign(edges.begin(), edges.end());
  out.grouping.resize(g.dim());
  for (std::size_t l = 0; l < g.dim(); ++l) {
    out.grouping[l] = unflatten(l, n).vertex;
  }
  return out;
}

std::size_t node_degree(const CoinedGraph& g, std::size_t node) {
  std::size_t deg = 0;
  for (const auto& [a, b] : g.edges) {
    deg += (a == node) + (b == node);
  }
  return deg;
}

}  // namespace qwalk::graphs
