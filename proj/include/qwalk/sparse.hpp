#pragma once

#include <cstddef>
#include <vector>

#include "qwalk/core.hpp"

namespace qwalk {

/// Row-compressed sparse complex matrix with deterministic (sorted) column
/// order per row. Tags are claims that builders verify at 1e-12 before set.
struct SparseOperator {
  std::size_t dim = 0;
  std::vector<std::size_t> row_ptr;  // size dim+1
  std::vector<std::size_t> col;      // ascending within each row
  std::vector<Complex> val;

  struct Tags {
    bool hermitian = false;
    bool unitary = false;
    bool involution = false;
  } tags;

  std::size_t nnz() const { return val.size(); }
  std::size_t max_row_nnz() const;
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  Complex value;
};

/// Sorts, merges duplicates, drops entries below `drop_tol` in magnitude.
SparseOperator sparse_from_triplets(std::size_t dim, std::vector<Triplet> entries,
                                    double drop_tol = 0.0);

SparseOperator sparse_identity(std::size_t dim);
SparseOperator sparse_adjoint(const SparseOperator& a);
SparseOperator sparse_scale(const SparseOperator& a, Complex factor);
/// alpha*A + beta*B
SparseOperator sparse_add(const SparseOperator& a, const SparseOperator& b,
                          Complex alpha = 1.0, Complex beta = 1.0);
SparseOperator sparse_multiply(const SparseOperator& a, const SparseOperator& b);

Complex sparse_entry(const SparseOperator& a, std::size_t row, std::size_t col);
double max_abs_diff(const SparseOperator& a, const SparseOperator& b);

double hermitian_deviation(const SparseOperator& a);   // max|A - A^dag|
double unitary_deviation(const SparseOperator& a);     // max|A^dag A - I|
double involution_deviation(const SparseOperator& a);  // max|A^2 - I|

/// Verifies every claimed tag at `tol`; throws std::runtime_error on failure.
void verify_tags(const SparseOperator& a, double tol = kOperatorTol);

/// Spectral enclosure from Gershgorin discs (real diagonal assumed; valid for
/// hermitian-tagged operators).
std::pair<double, double> gershgorin_bounds(const SparseOperator& a);

}  // namespace qwalk
