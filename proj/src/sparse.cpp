#include "qwalk/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qwalk {

std::size_t SparseOperator::max_row_nnz() const {
  std::size_t best = 0;
  for (std::size_t r = 0; r < dim; ++r) {
    best = std::max(best, row_ptr[r + 1] - row_ptr[r]);
  }
  return best;
}

SparseOperator sparse_from_triplets(std::size_t dim, std::vector<Triplet> entries,
                                    double drop_tol) {
  for (const auto& e : entries) {
    if (e.row >= dim || e.col >= dim) {
      throw std::invalid_argument("sparse_from_triplets: index out of range");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseOperator out;
  out.dim = dim;
  out.row_ptr.assign(dim + 1, 0);
  out.col.reserve(entries.size());
  out.val.reserve(entries.size());

  std::size_t i = 0;
  for (std::size_t r = 0; r < dim; ++r) {
    while (i < entries.size() && entries[i].row == r) {
      Complex v = entries[i].value;
      const std::size_t c = entries[i].col;
      ++i;
      while (i < entries.size() && entries[i].row == r && entries[i].col == c) {
        v += entries[i].value;
        ++i;
      }
      if (std::abs(v) > drop_tol) {
        out.col.push_back(c);
        out.val.push_back(v);
      }
    }
    out.row_ptr[r + 1] = out.col.size();
  }
  return out;
}

SparseOperator sparse_identity(std::size_t dim) {
  SparseOperator out;
  out.dim = dim;
  out.row_ptr.resize(dim + 1);
  out.col.resize(dim);
  out.val.assign(dim, Complex{1.0, 0.0});
  for (std::size_t i = 0; i < dim; ++i) {
    out.row_ptr[i] = i;
    out.col[i] = i;
  }
  out.row_ptr[dim] = dim;
  out.tags = {true, true, true};
  return out;
}

SparseOperator sparse_adjoint(const SparseOperator& a) {
  std::vector<Triplet> entries;
  entries.reserve(a.nnz());
  for (std::size_t r = 0; r < a.dim; ++r) {
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      entries.push_back({a.col[k], r, std::conj(a.val[k])});
    }
  }
  SparseOperator out = sparse_from_triplets(a.dim, std::move(entries));
  out.tags = a.tags;
  return out;
}

SparseOperator sparse_scale(const SparseOperator& a, Complex factor) {
  SparseOperator out = a;
  for (auto& v : out.val) {
    v *= factor;
  }
  out.tags = {};
  return out;
}

SparseOperator sparse_add(const SparseOperator& a, const SparseOperator& b,
                          Complex alpha, Complex beta) {
  if (a.dim != b.dim) {
    throw std::invalid_argument("sparse_add: dimension mismatch");
  }
  std::vector<Triplet> entries;
  entries.reserve(a.nnz() + b.nnz());
  for (std::size_t r = 0; r < a.dim; ++r) {
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      entries.push_back({r, a.col[k], alpha * a.val[k]});
    }
    for (std::size_t k = b.row_ptr[r]; k < b.row_ptr[r + 1]; ++k) {
      entries.push_back({r, b.col[k], beta * b.val[k]});
    }
  }
  return sparse_from_triplets(a.dim, std::move(entries));
}

SparseOperator sparse_multiply(const SparseOperator& a, const SparseOperator& b) {
  if (a.dim != b.dim) {
    throw std::invalid_argument("sparse_multiply: dimension mismatch");
  }
  std::vector<Triplet> entries;
  for (std::size_t r = 0; r < a.dim; ++r) {
    for (std::size_t ka = a.row_ptr[r]; ka < a.row_ptr[r + 1]; ++ka) {
      const std::size_t m = a.col[ka];
      const Complex av = a.val[ka];
      for (std::size_t kb = b.row_ptr[m]; kb < b.row_ptr[m + 1]; ++kb) {
        entries.push_back({r, b.col[kb], av * b.val[kb]});
      }
    }
  }
  return sparse_from_triplets(a.dim, std::move(entries));
}

Complex sparse_entry(const SparseOperator& a, std::size_t row, std::size_t col) {
  for (std::size_t k = a.row_ptr[row]; k < a.row_ptr[row + 1]; ++k) {
    if (a.col[k] == col) {
      return a.val[k];
    }
  }
  return Complex{0.0, 0.0};
}

double max_abs_diff(const SparseOperator& a, const SparseOperator& b) {
  const SparseOperator d = sparse_add(a, b, 1.0, -1.0);
  double best = 0.0;
  for (const auto& v : d.val) {
    best = std::max(best, std::abs(v));
  }
  return best;
}

double hermitian_deviation(const SparseOperator& a) {
  return max_abs_diff(a, sparse_adjoint(a));
}

double unitary_deviation(const SparseOperator& a) {
  return max_abs_diff(sparse_multiply(sparse_adjoint(a), a), sparse_identity(a.dim));
}

double involution_deviation(const SparseOperator& a) {
  return max_abs_diff(sparse_multiply(a, a), sparse_identity(a.dim));
}

void verify_tags(const SparseOperator& a, double tol) {
  std::ostringstream oss;
  if (a.tags.hermitian) {
    const double dev = hermitian_deviation(a);
    if (dev > tol) {
      oss << "hermitian tag violated: max|A - A^dag| = " << dev;
      throw std::runtime_error(oss.str());
    }
  }
  if (a.tags.unitary) {
    const double dev = unitary_deviation(a);
    if (dev > tol) {
      oss << "unitary tag violated: max|A^dag A - I| = " << dev;
      throw std::runtime_error(oss.str());
    }
  }
  if (a.tags.involution) {
    const double dev = involution_deviation(a);
    if (dev > tol) {
      oss << "involution tag violated: max|A^2 - I| = " << dev;
      throw std::runtime_error(oss.str());
    }
  }
}

std::pair<double, double> gershgorin_bounds(const SparseOperator& a) {
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (std::size_t r = 0; r < a.dim; ++r) {
    double center = 0.0;
    double radius = 0.0;
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      if (a.col[k] == r) {
        center = a.val[k].real();
      } else {
        radius += std::abs(a.val[k]);
      }
    }
    if (first || center - radius < lo) lo = center - radius;
    if (first || center + radius > hi) hi = center + radius;
    first = false;
  }
  return {lo, hi};
}

}  // namespace qwalk
