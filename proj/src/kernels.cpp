#include "qwalk/kernels.hpp"

#include <cmath>
#include <cstdint>

namespace qwalk::kernels {

void spmv_serial(const SparseOperator& a, const Complex* x, Complex* y) {
  const std::size_t n = a.dim;
  for (std::size_t r = 0; r < n; ++r) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      acc += a.val[k] * x[a.col[k]];
    }
    y[r] = acc;
  }
}

void spmv(const SparseOperator& a, const Complex* x, Complex* y) {
  const std::int64_t n = static_cast<std::int64_t>(a.dim);
  const std::size_t* row_ptr = a.row_ptr.data();
  const std::size_t* col = a.col.data();
  const Complex* val = a.val.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < n; ++r) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      acc += val[k] * x[col[k]];
    }
    y[r] = acc;
  }
}

void axpby_serial(Complex alpha, const Complex* x, Complex beta, Complex* y,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = alpha * x[i] + beta * y[i];
  }
}

void axpby(Complex alpha, const Complex* x, Complex beta, Complex* y, std::size_t n) {
  const std::int64_t nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < nn; ++i) {
    y[i] = alpha * x[i] + beta * y[i];
  }
}

void chebyshev_update_serial(const Complex* w, const Complex* t_cur, Complex* t_prev,
                             Complex* acc, double two_over_r, double center,
                             Complex coeff, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const Complex next = two_over_r * (w[i] - center * t_cur[i]) - t_prev[i];
    t_prev[i] = next;
    acc[i] += coeff * next;
  }
}

void chebyshev_update(const Complex* w, const Complex* t_cur, Complex* t_prev,
                      Complex* acc, double two_over_r, double center, Complex coeff,
                      std::size_t n) {
  const std::int64_t nn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < nn; ++i) {
    const Complex next = two_over_r * (w[i] - center * t_cur[i]) - t_prev[i];
    t_prev[i] = next;
    acc[i] += coeff * next;
  }
}

Complex dot(const Complex* x, const Complex* y, std::size_t n) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    acc += std::conj(x[i]) * y[i];
  }
  return acc;
}

double nrm2(const Complex* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += std::norm(x[i]);
  }
  return std::sqrt(acc);
}

}  // namespace qwalk::kernels
