#include "qwalk/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qwalk/kernels.hpp"
#include "qwalk/walks.hpp"

namespace qwalk::symmetry {

bool Permutation::is_bijection() const {
  std::vector<char> seen(image.size(), 0);
  for (const std::size_t target : image) {
    if (target >= image.size() || seen[target]) {
      return false;
    }
    seen[target] = 1;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.image.resize(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    inv.image[image[i]] = i;
  }
  return inv;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (image.size() != other.image.size()) {
    throw std::invalid_argument("Permutation::compose: size mismatch");
  }
  Permutation out;
  out.image.resize(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    out.image[i] = image[other.image[i]];
  }
  return out;
}

Permutation identity_permutation(std::size_t n) {
  Permutation p;
  p.image.resize(n);
  std::iota(p.image.begin(), p.image.end(), std::size_t{0});
  return p;
}

Permutation lift_label_permutation(const std::vector<std::size_t>& vertex_map,
                                   const std::vector<std::size_t>& coin_map,
                                   std::size_t num_vertices) {
  if (vertex_map.size() != num_vertices) {
    throw std::invalid_argument("lift_label_permutation: vertex map size mismatch");
  }
  const std::size_t degree = coin_map.size();
  Permutation p;
  p.image.resize(degree * num_vertices);
  for (std::size_t i = 0; i < degree; ++i) {
    for (std::size_t v = 0; v < num_vertices; ++v) {
      p.image[i * num_vertices + v] = coin_map[i] * num_vertices + vertex_map[v];
    }
  }
  if (!p.is_bijection()) {
    throw std::invalid_argument("lift_label_permutation: maps are not bijections");
  }
  return p;
}

std::vector<Permutation> group_closure(const std::vector<Permutation>& generators,
                                       std::size_t cap) {
  if (generators.empty()) {
    return {};
  }
  const std::size_t n = generators.front().size();
  for (const auto& g : generators) {
    if (g.size() != n || !g.is_bijection()) {
      throw std::invalid_argument("group_closure: generators must be bijections of equal size");
    }
  }
  std::set<std::vector<std::size_t>> seen;
  std::vector<Permutation> order;
  std::deque<Permutation> frontier;
  const Permutation id = identity_permutation(n);
  seen.insert(id.image);
  order.push_back(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    const Permutation current = frontier.front();
    frontier.pop_front();
    for (const auto& g : generators) {
      Permutation next = g.compose(current);
      if (seen.insert(next.image).second) {
        if (order.size() + 1 > cap) {
          throw std::runtime_error("group_closure: group order exceeds the cap");
        }
        order.push_back(next);
        frontier.push_back(std::move(next));
      }
    }
  }
  return order;
}

namespace {

/// max entry of sigma A - A sigma, computed on sparse triplets.
double commutator_residual(const Permutation& sigma, const SparseOperator& a) {
  const Permutation inv = sigma.inverse();
  std::vector<Triplet> left;   // sigma A: entry (r,c,v) -> (sigma(r), c, v)
  std::vector<Triplet> right;  // A sigma: entry (r,c,v) -> (r, inv(c), v)
  left.reserve(a.nnz());
  right.reserve(a.nnz());
  for (std::size_t r = 0; r < a.dim; ++r) {
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      left.push_back({sigma(r), a.col[k], a.val[k]});
      right.push_back({r, inv(a.col[k]), a.val[k]});
    }
  }
  return max_abs_diff(sparse_from_triplets(a.dim, std::move(left)),
                      sparse_from_triplets(a.dim, std::move(right)));
}

}  // namespace

SymmetryReport check_symmetry(const Permutation& sigma, const SparseOperator& shift,
                              const SparseOperator& coin_flip) {
  if (sigma.size() != shift.dim || shift.dim != coin_flip.dim) {
    throw std::invalid_argument("check_symmetry: dimension mismatch");
  }
  if (!sigma.is_bijection()) {
    throw std::invalid_argument("check_symmetry: image is not a bijection");
  }
  SymmetryReport report;
  report.shift_residual = commutator_residual(sigma, shift);
  report.coin_residual = commutator_residual(sigma, coin_flip);
  report.step_residual = commutator_residual(sigma, sparse_multiply(shift, coin_flip));
  return report;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    const std::size_t ra = find(a);
    const std::size_t rb = find(b);
    if (ra != rb) {
      parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }
};

}  // namespace

OrbitBasis build_orbit_basis(const std::vector<Permutation>& generators, std::size_t dim,
                             std::size_t num_vertices) {
  if (num_vertices == 0 || dim % num_vertices != 0) {
    throw std::invalid_argument("build_orbit_basis: dim must be a multiple of N");
  }
  for (const auto& g : generators) {
    if (g.size() != dim || !g.is_bijection()) {
      throw std::invalid_argument("build_orbit_basis: generators must be bijections on the labels");
    }
  }

  UnionFind uf(dim);
  for (const auto& g : generators) {
    for (std::size_t l = 0; l < dim; ++l) {
      uf.unite(l, g(l));
    }
  }

  OrbitBasis basis;
  basis.dim = dim;
  basis.num_vertices = num_vertices;
  basis.orbit_of.assign(dim, dim);
  std::map<std::size_t, std::size_t> root_to_orbit;
  for (std::size_t l = 0; l < dim; ++l) {
    const std::size_t root = uf.find(l);
    auto [it, inserted] = root_to_orbit.try_emplace(root, basis.orbits.size());
    if (inserted) {
      basis.orbits.emplace_back();
    }
    basis.orbit_of[l] = it->second;
    basis.orbits[it->second].push_back(l);
  }

  // orbits sharing a vertex support share a quotient vertex
  std::map<std::vector<std::size_t>, std::size_t> support_to_vertex;
  basis.vertex_grouping.resize(basis.orbits.size());
  for (std::size_t k = 0; k < basis.orbits.size(); ++k) {
    std::vector<std::size_t> support;
    for (const std::size_t l : basis.orbits[k]) {
      support.push_back(l % num_vertices);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const auto [it, inserted] = support_to_vertex.try_emplace(std::move(support),
                                                              support_to_vertex.size());
    basis.vertex_grouping[k] = it->second;
  }
  return basis;
}

StateVector OrbitBasis::orbit_state(std::size_t k) const {
  StateVector psi(dim);
  const double a = 1.0 / std::sqrt(static_cast<double>(orbits[k].size()));
  for (const std::size_t l : orbits[k]) {
    psi[l] = Complex{a, 0.0};
  }
  return psi;
}

std::vector<Complex> OrbitBasis::project(const StateVector& psi) const {
  if (psi.size() != dim) {
    throw std::invalid_argument("OrbitBasis::project: dimension mismatch");
  }
  std::vector<Complex> coeff(orbits.size());
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    Complex acc{0.0, 0.0};
    for (const std::size_t l : orbits[k]) {
      acc += psi[l];
    }
    coeff[k] = acc / std::sqrt(static_cast<double>(orbits[k].size()));
  }
  return coeff;
}

StateVector OrbitBasis::lift(const std::vector<Complex>& coefficients) const {
  if (coefficients.size() != orbits.size()) {
    throw std::invalid_argument("OrbitBasis::lift: coefficient count mismatch");
  }
  StateVector psi(dim);
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    const Complex a = coefficients[k] / std::sqrt(static_cast<double>(orbits[k].size()));
    for (const std::size_t l : orbits[k]) {
      psi[l] = a;
    }
  }
  return psi;
}

double OrbitBasis::out_of_span_residual(const StateVector& psi) const {
  return distance(psi, lift(project(psi)));
}

ReducedOperator reduce_operator(const SparseOperator& a, const OrbitBasis& basis,
                                double leak_tol) {
  if (a.dim != basis.dim) {
    throw std::invalid_argument("reduce_operator: dimension mismatch");
  }
  const std::size_t m = basis.size();
  ReducedOperator reduced;
  reduced.dim = m;
  reduced.matrix.assign(m * m, Complex{0.0, 0.0});

  StateVector image(a.dim);
  for (std::size_t x = 0; x < m; ++x) {
    const StateVector state = basis.orbit_state(x);
    kernels::spmv(a, state.data(), image.data());
    const std::vector<Complex> column = basis.project(image);
    for (std::size_t y = 0; y < m; ++y) {
      reduced.matrix[y * m + x] = column[y];
    }
    const StateVector back = basis.lift(column);
    for (std::size_t l = 0; l < a.dim; ++l) {
      reduced.span_leak = std::max(reduced.span_leak, std::abs(image[l] - back[l]));
    }
  }
  if (reduced.span_leak > leak_tol) {
    std::ostringstream oss;
    oss << "reduce_operator: operator leaks out of the orbit span (max entry "
        << reduced.span_leak << "); it does not commute with the group";
    throw std::runtime_error(oss.str());
  }
  return reduced;
}

SparseOperator ReducedOperator::to_sparse(double drop_tol) const {
  std::vector<Triplet> entries;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const Complex v = matrix[r * dim + c];
      if (std::abs(v) > drop_tol) {
        entries.push_back({r, c, v});
      }
    }
  }
  return sparse_from_triplets(dim, std::move(entries));
}

graphs::CoinedGraph quotient_graph(const OrbitBasis& basis, const ReducedOperator& h_reduced) {
  if (basis.size() != h_reduced.dim) {
    throw std::invalid_argument("quotient_graph: basis and operator sizes differ");
  }
  graphs::CoinedGraph g;
  g.node_count = basis.size();
  g.grouping = basis.vertex_grouping;
  for (std::size_t x = 0; x < basis.size(); ++x) {
    for (std::size_t y = x + 1; y < basis.size(); ++y) {
      if (std::abs(h_reduced.entry(y, x)) > 1e-12) {
        g.edges.push_back({x, y});
      }
    }
  }
  return g;
}

EquivalenceReport reduction_equivalence_check(const SparseOperator& shift,
                                              const SparseOperator& coin_flip,
                                              const OrbitBasis& basis,
                                              const StateVector& psi0,
                                              const std::vector<double>& t_values,
                                              const std::vector<double>& s_values) {
  const double span_residual = basis.out_of_span_residual(psi0);
  if (span_residual > 1e-10) {
    std::ostringstream oss;
    oss << "reduction_equivalence_check: psi0 lies outside the orbit span (residual "
        << span_residual << ")";
    throw std::invalid_argument(oss.str());
  }

  const ReducedOperator s_red = reduce_operator(shift, basis);
  const ReducedOperator f_red = reduce_operator(coin_flip, basis);
  SparseOperator s_red_sp = s_red.to_sparse();
  SparseOperator f_red_sp = f_red.to_sparse();
  s_red_sp.tags = {true, true, true};
  f_red_sp.tags = {true, true, true};
  verify_tags(s_red_sp, 1e-10);
  verify_tags(f_red_sp, 1e-10);

  SparseOperator h_full = sparse_add(sparse_add(shift, coin_flip), sparse_identity(shift.dim),
                                     1.0, -2.0);
  h_full.tags.hermitian = true;
  SparseOperator h_red = sparse_add(sparse_add(s_red_sp, f_red_sp),
                                    sparse_identity(s_red_sp.dim), 1.0, -2.0);
  h_red.tags.hermitian = true;

  const linalg::Propagator prop_full(h_full);
  const linalg::Propagator prop_red(h_red);

  StateVector c0(basis.size());
  {
    const std::vector<Complex> coeff = basis.project(psi0);
    std::copy(coeff.begin(), coeff.end(), c0.amp.begin());
  }

  EquivalenceReport report;
  for (const double t : t_values) {
    const StateVector full = prop_full.apply(psi0, t, 1e-12);
    const StateVector red = prop_red.apply(c0, t, 1e-12);
    const double dev = distance(full, basis.lift(red.amp));
    report.rows.push_back({false, t, dev});
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  for (const double s : s_values) {
    const StateVector full = walks::family_step(s, shift, coin_flip, psi0);
    const StateVector red = walks::family_step(s, s_red_sp, f_red_sp, c0);
    const double dev = distance(full, basis.lift(red.amp));
    report.rows.push_back({true, s, dev});
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  return report;
}

}  // namespace qwalk::symmetry
