#pragma once

#include <cstddef>

#include "qwalk/core.hpp"
#include "qwalk/sparse.hpp"

namespace qwalk::kernels {

// OpenMP-parallel kernels for the inner loops of the propagators, each with a
// serial reference used by the tests and the benchmark. spmv parallelizes over
// rows, so its result is bitwise independent of the thread count; reductions
// (dot, nrm2) are deliberately serial to keep outputs deterministic.

/// y = A x
void spmv(const SparseOperator& a, const Complex* x, Complex* y);
void spmv_serial(const SparseOperator& a, const Complex* x, Complex* y);

/// y = alpha*x + beta*y
void axpby(Complex alpha, const Complex* x, Complex beta, Complex* y, std::size_t n);
void axpby_serial(Complex alpha, const Complex* x, Complex beta, Complex* y, std::size_t n);

/// Fused Chebyshev three-term update:
///   t_next[i] = two_over_r*(w[i] - center*t_cur[i]) - t_prev[i]
///   acc[i]   += coeff*t_next[i]
/// where w = A*t_cur was produced by spmv. t_prev is overwritten with t_next.
void chebyshev_update(const Complex* w, const Complex* t_cur, Complex* t_prev,
                      Complex* acc, double two_over_r, double center, Complex coeff,
                      std::size_t n);
void chebyshev_update_serial(const Complex* w, const Complex* t_cur, Complex* t_prev,
                             Complex* acc, double two_over_r, double center,
                             Complex coeff, std::size_t n);

/// conj(x) . y, serial by design
Complex dot(const Complex* x, const Complex* y, std::size_t n);
double nrm2(const Complex* x, std::size_t n);

}  // namespace qwalk::kernels
