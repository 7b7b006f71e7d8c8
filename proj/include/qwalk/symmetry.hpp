#pragma once

#include <cstddef>
#include <vector>

#include "qwalk/graphs.hpp"
#include "qwalk/linalg.hpp"
#include "qwalk/sparse.hpp"
#include "qwalk/state.hpp"

namespace qwalk::symmetry {

/// Permutation of basis labels; image[l] is where label l goes.
struct Permutation {
  std::vector<std::size_t> image;

  std::size_t size() const { return image.size(); }
  std::size_t operator()(std::size_t label) const { return image[label]; }
  bool is_bijection() const;
  Permutation inverse() const;
  Permutation compose(const Permutation& other) const;  // this after other
  bool operator==(const Permutation&) const = default;
};

Permutation identity_permutation(std::size_t n);

/// Lifts a vertex permutation and a coin permutation to the coin-major labels:
/// (i, v) -> (coin_map[i], vertex_map[v]).
Permutation lift_label_permutation(const std::vector<std::size_t>& vertex_map,
                                   const std::vector<std::size_t>& coin_map,
                                   std::size_t num_vertices);

/// BFS closure of the generated group; throws if the order would exceed cap.
std::vector<Permutation> group_closure(const std::vector<Permutation>& generators,
                                       std::size_t cap = 1000000);

struct SymmetryReport {
  double shift_residual = 0.0;    // max |sigma S - S sigma|
  double coin_residual = 0.0;     // max |sigma F - F sigma|
  double step_residual = 0.0;     // max |sigma SF - SF sigma|
  bool passed(double tol = 1e-12) const {
    return shift_residual <= tol && coin_residual <= tol && step_residual <= tol;
  }
};

SymmetryReport check_symmetry(const Permutation& sigma, const SparseOperator& shift,
                              const SparseOperator& coin_flip);

/// Orbits of the group generated by the given permutations, the orbit
/// superposition states |O_x|^{-1/2} sum |label>, and the quotient-vertex
/// grouping (orbits with the same vertex support share a quotient vertex).
struct OrbitBasis {
  std::size_t dim = 0;           // full space dimension
  std::size_t num_vertices = 0;  // N of the underlying graph
  std::vector<std::vector<std::size_t>> orbits;  // labels ascending; orbits by min label
  std::vector<std::size_t> orbit_of;             // label -> orbit index
  std::vector<std::size_t> vertex_grouping;      // orbit -> quotient vertex id

  std::size_t size() const { return orbits.size(); }
  StateVector orbit_state(std::size_t k) const;
  /// Coefficients <O_x|psi> for all x.
  std::vector<Complex> project(const StateVector& psi) const;
  StateVector lift(const std::vector<Complex>& coefficients) const;
  double out_of_span_residual(const StateVector& psi) const;
};

/// Empty generator list gives dim singleton orbits.
OrbitBasis build_orbit_basis(const std::vector<Permutation>& generators,
                             std::size_t dim, std::size_t num_vertices);

/// Dense matrix <O_y|A|O_x> on the orbit span. span_leak is the largest entry
/// of (I-P) A P; reduction is rejected above leak_tol.
struct ReducedOperator {
  std::size_t dim = 0;
  std::vector<Complex> matrix;  // row-major
  double span_leak = 0.0;

  Complex entry(std::size_t row, std::size_t col) const { return matrix[row * dim + col]; }
  SparseOperator to_sparse(double drop_tol = 0.0) const;
};

ReducedOperator reduce_operator(const SparseOperator& a, const OrbitBasis& basis,
                                double leak_tol = 1e-10);

/// Quotient graph: one node per orbit state, edges where the reduced operator
/// has off-diagonal entries above 1e-12, grouping from the orbit basis.
graphs::CoinedGraph quotient_graph(const OrbitBasis& basis, const ReducedOperator& h_reduced);

struct EquivalenceRow {
  bool is_family = false;  // false: e^{-iHt}, true: one U(s) application
  double parameter = 0.0;  // t or s
  double deviation = 0.0;
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  double max_deviation = 0.0;
  bool passed(double tol = 1e-9) const { return max_deviation <= tol; }
};

/// Full vs reduced dynamics: e^{-iHt} (H = S+F-2I) for each t, and one U(s)
/// application for each s, compared after lifting back to the full space.
EquivalenceReport reduction_equivalence_check(const SparseOperator& shift,
                                              const SparseOperator& coin_flip,
                                              const OrbitBasis& basis,
                                              const StateVector& psi0,
                                              const std::vector<double>& t_values,
                                              const std::vector<double>& s_values);

}  // namespace qwalk::symmetry
