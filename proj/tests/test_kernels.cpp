#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "qwalk/kernels.hpp"
#include "qwalk/sparse.hpp"
#include "qwalk/state.hpp"

using namespace qwalk;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("spmv matches the serial reference bitwise") {
  const SparseOperator a = oracles::random_hermitian_sparse(257, 4, 11);
  const StateVector x = oracles::random_state(a.dim, 5);
  StateVector y_par(a.dim);
  StateVector y_ser(a.dim);
  kernels::spmv(a, x.data(), y_par.data());
  kernels::spmv_serial(a, x.data(), y_ser.data());
  for (std::size_t i = 0; i < a.dim; ++i) {
    CHECK(y_par[i] == y_ser[i]);
  }
}

TEST_CASE("axpby and chebyshev_update match their serial references") {
  const std::size_t n = 1003;
  const StateVector x = oracles::random_state(n, 1);
  StateVector y1 = oracles::random_state(n, 2);
  StateVector y2 = y1;
  kernels::axpby(Complex{0.3, -0.2}, x.data(), Complex{1.1, 0.4}, y1.data(), n);
  kernels::axpby_serial(Complex{0.3, -0.2}, x.data(), Complex{1.1, 0.4}, y2.data(), n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(y1[i] == y2[i]);
  }

  const StateVector w = oracles::random_state(n, 3);
  const StateVector tc = oracles::random_state(n, 4);
  StateVector tp1 = oracles::random_state(n, 6);
  StateVector tp2 = tp1;
  StateVector acc1(n);
  StateVector acc2(n);
  kernels::chebyshev_update(w.data(), tc.data(), tp1.data(), acc1.data(), 1.7, -0.3,
                            Complex{0.2, 0.9}, n);
  kernels::chebyshev_update_serial(w.data(), tc.data(), tp2.data(), acc2.data(), 1.7, -0.3,
                                   Complex{0.2, 0.9}, n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(tp1[i] == tp2[i]);
    CHECK(acc1[i] == acc2[i]);
  }
}

TEST_CASE("dot and nrm2") {
  const StateVector x = oracles::random_state(64, 7);
  const StateVector y = oracles::random_state(64, 8);
  Complex expect{0.0, 0.0};
  double n2 = 0.0;
  for (std::size_t i = 0; i < 64; ++i) {
    expect += std::conj(x[i]) * y[i];
    n2 += std::norm(x[i]);
  }
  CHECK(std::abs(kernels::dot(x.data(), y.data(), 64) - expect) < 1e-14);
  CHECK(kernels::nrm2(x.data(), 64) == doctest::Approx(std::sqrt(n2)).epsilon(1e-14));
}

TEST_CASE("sparse_from_triplets merges duplicates and sorts columns") {
  const SparseOperator a = sparse_from_triplets(
      3, {{0, 2, Complex{1, 0}}, {0, 0, Complex{2, 0}}, {0, 2, Complex{0, 1}},
          {2, 1, Complex{-1, 0}}});
  CHECK(a.nnz() == 3);
  CHECK(a.col[0] == 0);
  CHECK(a.col[1] == 2);
  CHECK(sparse_entry(a, 0, 2) == Complex{1, 1});
  CHECK(sparse_entry(a, 1, 1) == Complex{0, 0});
}

TEST_CASE("sparse algebra identities") {
  const SparseOperator a = oracles::random_hermitian_sparse(40, 3, 21);
  const SparseOperator id = sparse_identity(40);
  CHECK(max_abs_diff(sparse_multiply(a, id), a) == 0.0);
  CHECK(hermitian_deviation(a) == 0.0);
  const SparseOperator diff = sparse_add(a, a, 1.0, -1.0);
  CHECK(diff.nnz() == 0);
}

TEST_CASE("verify_tags rejects a false claim") {
  SparseOperator a = sparse_from_triplets(2, {{0, 0, Complex{0, 1}}, {1, 1, Complex{1, 0}}});
  a.tags.hermitian = true;
  CHECK_THROWS_AS(verify_tags(a), std::runtime_error);
}

TEST_CASE("gershgorin bounds enclose the spectrum of S-F-like data") {
  const SparseOperator a = sparse_from_triplets(
      2, {{0, 0, Complex{1.0, 0}}, {0, 1, Complex{0.5, 0}}, {1, 0, Complex{0.5, 0}},
          {1, 1, Complex{-1.0, 0}}});
  const auto [lo, hi] = gershgorin_bounds(a);
  CHECK(lo == doctest::Approx(-1.5));
  CHECK(hi == doctest::Approx(1.5));
}

TEST_SUITE_END();
