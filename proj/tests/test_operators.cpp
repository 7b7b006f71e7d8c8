#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "qwalk/graphs.hpp"
#include "qwalk/linalg.hpp"
#include "qwalk/operators.hpp"

using namespace qwalk;
using namespace qwalk::graphs;
using namespace qwalk::operators;

TEST_SUITE_BEGIN("operators");

TEST_CASE("cycle(4) shift is a symmetric permutation with zero diagonal") {
  const SparseOperator s = build_shift(build_cycle(4));
  CHECK(s.dim == 8);
  CHECK(s.max_row_nnz() == 1);
  for (std::size_t r = 0; r < s.dim; ++r) {
    CHECK(s.row_ptr[r + 1] - s.row_ptr[r] == 1);
    CHECK(s.col[s.row_ptr[r]] != r);
    CHECK(s.val[s.row_ptr[r]] == Complex{1.0, 0.0});
  }
  CHECK(hermitian_deviation(s) == 0.0);
  // S^2 = I to 0 ulp: permutation composition
  CHECK(max_abs_diff(sparse_multiply(s, s), sparse_identity(8)) == 0.0);
}

TEST_CASE("flip-flop shift moves +x to -x on the moved vertex") {
  const ColoredGraph g = build_torus(2, PairingMode::flip_flop);
  const SparseOperator s = build_shift(g);
  const StateVector image =
      linalg::matvec(s, basis_state(g.dim(), flat_index(0, 0, g.num_vertices)));
  for (std::size_t l = 0; l < g.dim(); ++l) {
    const Complex expect =
        l == flat_index(1, 1, g.num_vertices) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    CHECK(image[l] == expect);
  }
}

TEST_CASE("builder shifts are Hermitian unitary involutions at 1e-12") {
  for (const auto& g : {build_cycle(8), build_torus(4, PairingMode::flip_flop),
                        build_hypercube(3)}) {
    const SparseOperator s = build_shift(g);
    CHECK(hermitian_deviation(s) <= 1e-12);
    CHECK(unitary_deviation(s) <= 1e-12);
    CHECK(involution_deviation(s) <= 1e-12);
  }
}

TEST_CASE("grover(4) blocks: diagonal -1/2, off-diagonal +1/2") {
  const ColoredGraph g = build_torus(4, PairingMode::flip_flop);
  const SparseOperator f = build_coin_flip(g, CoinSpec::grover());
  const std::size_t n = g.num_vertices;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex v = sparse_entry(f, flat_index(i, 7, n), flat_index(j, 7, n));
      CHECK(v == (i == j ? Complex{-0.5, 0.0} : Complex{0.5, 0.0}));
    }
  }
  CHECK(f.max_row_nnz() == 4);
}

TEST_CASE("marked block equals C1 = -I, everywhere else C0, exactly") {
  const ColoredGraph g = build_torus(4, PairingMode::flip_flop);
  const std::size_t n = g.num_vertices;
  const std::size_t x = 5;
  const SparseOperator f = build_coin_flip(g, CoinSpec::grover().with_marked(x));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        const Complex got = sparse_entry(f, flat_index(i, v, n), flat_index(j, v, n));
        const Complex want = v == x ? (i == j ? Complex{-1.0, 0.0} : Complex{0.0, 0.0})
                                    : (i == j ? Complex{-0.5, 0.0} : Complex{0.5, 0.0});
        CHECK(got == want);
      }
    }
  }
}

TEST_CASE("hadamard coin flip squares to the identity") {
  const SparseOperator f = build_coin_flip(build_cycle(4), CoinSpec::hadamard());
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(sparse_entry(f, flat_index(0, 2, 4), flat_index(0, 2, 4)) == Complex{h, 0.0});
  CHECK(sparse_entry(f, flat_index(1, 2, 4), flat_index(1, 2, 4)) == Complex{-h, 0.0});
  CHECK(sparse_entry(f, flat_index(0, 2, 4), flat_index(1, 2, 4)) == Complex{h, 0.0});
  CHECK(involution_deviation(f) <= 1e-12);
  CHECK(unitary_deviation(f) <= 1e-12);
}

TEST_CASE("a non-Hermitian-unitary custom coin is rejected with the deviation") {
  const std::vector<Complex> bad = {Complex{1, 0}, Complex{0.5, 0}, Complex{0.5, 0},
                                    Complex{1, 0}};
  CHECK_THROWS_WITH_AS(build_coin_flip(build_cycle(4), CoinSpec::custom(bad)),
                       doctest::Contains("max deviation"), std::invalid_argument);
}

TEST_CASE("hamiltonian with F = S is the zero operator") {
  const SparseOperator s = build_shift(build_cycle(4));
  const SparseOperator h = build_hamiltonian(s, s, HamiltonianForm::s_minus_f);
  CHECK(h.nnz() == 0);
}

TEST_CASE("s_plus_f_minus_2i differs from S+F by exactly -2I") {
  const ColoredGraph g = build_torus(2, PairingMode::flip_flop);
  const SparseOperator s = build_shift(g);
  const SparseOperator f = build_coin_flip(g, CoinSpec::grover());
  const SparseOperator h = build_hamiltonian(s, f, HamiltonianForm::s_plus_f_minus_2i);
  const SparseOperator shifted = sparse_add(h, sparse_identity(h.dim), 1.0, 2.0);
  CHECK(max_abs_diff(shifted, sparse_add(s, f)) == 0.0);
}

TEST_CASE("torus(4) S-F spectral radius is at most 2, by the Jacobi oracle") {
  const ColoredGraph g = build_torus(4, PairingMode::flip_flop);
  const SparseOperator s = build_shift(g);
  const SparseOperator f = build_coin_flip(g, CoinSpec::grover().with_marked(0));
  const SparseOperator h = build_hamiltonian(s, f, HamiltonianForm::s_minus_f);
  CHECK(h.max_row_nnz() <= 5);  // d + 1
  const std::vector<double> lam = oracles::jacobi_eigenvalues(oracles::dense_from_sparse(h));
  CHECK(lam.front() >= -2.0 - 1e-9);
  CHECK(lam.back() <= 2.0 + 1e-9);
}

TEST_CASE("hamiltonian forms reject dimension mismatches") {
  const SparseOperator s4 = build_shift(build_cycle(4));
  const SparseOperator s6 = build_shift(build_cycle(6));
  CHECK_THROWS_AS(build_hamiltonian(s4, s6, HamiltonianForm::s_minus_f),
                  std::invalid_argument);
}

TEST_CASE("coordinate text export") {
  const SparseOperator s = build_shift(build_cycle(4));
  const std::string text = to_coordinate_text(s);
  CHECK(text.rfind("8 8 8\n", 0) == 0);
  CHECK(text.find("\n0 1 1 0\n") != std::string::npos);  // S(0, pairing(0)) with pairing(0,0)=(0,1)
}

TEST_SUITE_END();
