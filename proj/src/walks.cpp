#include "qwalk/walks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qwalk/kernels.hpp"
#include "qwalk/operators.hpp"

namespace qwalk::walks {

namespace {

constexpr double kPi = std::numbers::pi;

/// phi = e^{i(pi/2)s} (cos(pi s/2) psi - i sin(pi s/2) A psi)
StateVector apply_half_factor(double s, const SparseOperator& a, const StateVector& psi) {
  const double half = 0.5 * kPi * s;
  const Complex phase = std::exp(Complex{0.0, half});
  const Complex c_id = phase * std::cos(half);
  const Complex c_op = phase * Complex{0.0, -1.0} * std::sin(half);
  StateVector out(psi.size());
  kernels::spmv(a, psi.data(), out.data());
  kernels::axpby(c_id, psi.data(), c_op, out.data(), psi.size());
  return out;
}

void check_dims(const SparseOperator& s, const SparseOperator& f, const StateVector& psi) {
  if (s.dim != f.dim || s.dim != psi.size()) {
    throw std::invalid_argument("walk step: dimension mismatch");
  }
}

}  // namespace

StateVector dtqw_step(const SparseOperator& s, const SparseOperator& f,
                      const StateVector& psi) {
  check_dims(s, f, psi);
  StateVector tmp(psi.size());
  kernels::spmv(f, psi.data(), tmp.data());
  StateVector out(psi.size());
  kernels::spmv(s, tmp.data(), out.data());
  return out;
}

StateVector family_step(double s, const SparseOperator& shift,
                        const SparseOperator& coin_flip, const StateVector& psi) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw std::invalid_argument("family_step: s must lie in (0, 1]");
  }
  check_dims(shift, coin_flip, psi);
  return apply_half_factor(s, shift, apply_half_factor(s, coin_flip, psi));
}

StateVector FamilyStep::apply(const StateVector& psi) const {
  return family_step(s, shift, coin_flip, psi);
}

LocalityReport locality_check(double s, const SparseOperator& shift,
                              const SparseOperator& coin_flip, std::size_t dense_cap) {
  if (shift.dim > dense_cap) {
    throw std::invalid_argument("locality_check: dimension exceeds the dense cap");
  }
  const std::size_t dim = shift.dim;
  const SparseOperator sf = sparse_multiply(shift, coin_flip);

  // allowed support: I, S, F, SF
  std::vector<char> mask(dim * dim, 0);
  for (std::size_t r = 0; r < dim; ++r) {
    mask[r * dim + r] = 1;
  }
  for (const SparseOperator* op : {&shift, &coin_flip, &sf}) {
    for (std::size_t r = 0; r < op->dim; ++r) {
      for (std::size_t k = op->row_ptr[r]; k < op->row_ptr[r + 1]; ++k) {
        mask[r * dim + op->col[k]] = 1;
      }
    }
  }

  LocalityReport report;
  for (std::size_t c = 0; c < dim; ++c) {
    const StateVector column = family_step(s, shift, coin_flip, basis_state(dim, c));
    for (std::size_t r = 0; r < dim; ++r) {
      if (!mask[r * dim + c]) {
        report.max_off_mask = std::max(report.max_off_mask, std::abs(column[r]));
      }
    }
  }
  return report;
}

std::vector<ConvergenceRow> convergence_scan(const SparseOperator& shift,
                                             const SparseOperator& coin_flip,
                                             const StateVector& psi0, double tau,
                                             const std::vector<double>& s_values) {
  if (s_values.empty()) {
    throw std::invalid_argument("convergence_scan: empty s list");
  }
  for (const double s : s_values) {
    if (!(s > 0.0 && s <= 1.0)) {
      throw std::invalid_argument("convergence_scan: s must lie in (0, 1]");
    }
    if (std::llround(tau / s) < 1) {
      throw std::invalid_argument("convergence_scan: tau/s rounds to zero steps");
    }
  }
  const SparseOperator h = operators::build_hamiltonian(
      shift, coin_flip, operators::HamiltonianForm::s_plus_f_minus_2i);
  const linalg::Propagator prop(h);

  std::vector<ConvergenceRow> rows(s_values.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(s_values.size()); ++idx) {
    const double s = s_values[idx];
    const auto steps = static_cast<std::size_t>(std::llround(tau / s));
    StateVector psi = psi0;
    for (std::size_t k = 0; k < steps; ++k) {
      psi = family_step(s, shift, coin_flip, psi);
    }
    const double t = 0.5 * kPi * s * static_cast<double>(steps);
    const StateVector target = prop.apply(psi0, t, 1e-12);
    rows[idx] = {s, steps, t, distance(psi, target)};
  }
  return rows;
}

SignFlipReport sign_flip_invariance(const SparseOperator& shift,
                                    const SparseOperator& coin_flip,
                                    const StateVector& psi0, std::size_t steps) {
  const SparseOperator minus_f = sparse_scale(coin_flip, -1.0);
  SignFlipReport report;
  report.steps = steps;
  StateVector plus = psi0;
  StateVector minus = psi0;
  double sign = 1.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    for (std::size_t i = 0; i < psi0.size(); ++i) {
      report.max_probability_deviation = std::max(
          report.max_probability_deviation, std::abs(std::norm(plus[i]) - std::norm(minus[i])));
      report.max_phase_deviation =
          std::max(report.max_phase_deviation, std::abs(minus[i] - sign * plus[i]));
    }
    if (k == steps) {
      break;
    }
    plus = dtqw_step(shift, coin_flip, plus);
    minus = dtqw_step(shift, minus_f, minus);
    sign = -sign;
  }
  return report;
}

namespace {

using DenseReal = std::vector<double>;

DenseReal dense_real_multiply(const DenseReal& a, const DenseReal& b, std::size_t n) {
  DenseReal c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a[i * n + k];
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        c[i * n + j] += aik * b[k * n + j];
      }
    }
  }
  return c;
}

/// e^A by scaling and squaring with a Taylor series; generators here are tiny.
DenseReal dense_real_expm(DenseReal a, std::size_t n) {
  double norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double colsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      colsum += std::abs(a[i * n + j]);
    }
    norm1 = std::max(norm1, colsum);
  }
  std::size_t squarings = 0;
  while (norm1 > 0.25 && squarings < 60) {
    norm1 *= 0.5;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -static_cast<int>(squarings));
  for (auto& x : a) {
    x *= scale;
  }

  DenseReal result(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    result[i * n + i] = 1.0;
  }
  DenseReal term = result;
  for (std::size_t k = 1; k <= 40; ++k) {
    term = dense_real_multiply(term, a, n);
    const double inv = 1.0 / static_cast<double>(k);
    double max_term = 0.0;
    for (std::size_t i = 0; i < n * n; ++i) {
      term[i] *= inv;
      result[i] += term[i];
      max_term = std::max(max_term, std::abs(term[i]));
    }
    if (max_term < 1e-18) {
      break;
    }
  }
  for (std::size_t sq = 0; sq < squarings; ++sq) {
    result = dense_real_multiply(result, result, n);
  }
  return result;
}

}  // namespace

std::vector<ClassicalLimitRow> classical_limit_demo(const std::vector<double>& m,
                                                    std::size_t n,
                                                    const std::vector<double>& p0,
                                                    double tau,
                                                    const std::vector<double>& eps_values) {
  if (m.size() != n * n || p0.size() != n) {
    throw std::invalid_argument("classical_limit_demo: size mismatch");
  }
  for (std::size_t j = 0; j < n; ++j) {
    double colsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i * n + j] < -1e-15) {
        throw std::invalid_argument("classical_limit_demo: M has a negative entry");
      }
      colsum += m[i * n + j];
    }
    if (std::abs(colsum - 1.0) > 1e-12) {
      std::ostringstream oss;
      oss << "classical_limit_demo: column " << j << " sums to " << colsum
          << ", M is not column-stochastic";
      throw std::invalid_argument(oss.str());
    }
  }

  // continuous solution e^{(M-I)tau} p0
  DenseReal generator(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      generator[i * n + j] = (m[i * n + j] - (i == j ? 1.0 : 0.0)) * tau;
    }
  }
  const DenseReal propagated = dense_real_expm(std::move(generator), n);
  std::vector<double> continuous(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      continuous[i] += propagated[i * n + j] * p0[j];
    }
  }

  std::vector<ClassicalLimitRow> rows;
  rows.reserve(eps_values.size());
  for (const double eps : eps_values) {
    if (!(eps > 0.0 && eps <= 1.0)) {
      throw std::invalid_argument("classical_limit_demo: epsilon must lie in (0, 1]");
    }
    const auto steps = static_cast<std::size_t>(std::llround(tau / eps));
    std::vector<double> p = p0;
    std::vector<double> next(n);
    for (std::size_t k = 0; k < steps; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          acc += m[i * n + j] * p[j];
        }
        next[i] = eps * acc + (1.0 - eps) * p[i];
      }
      p.swap(next);
    }
    double tv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      tv += std::abs(p[i] - continuous[i]);
    }
    rows.push_back({eps, steps, 0.5 * tv});
  }
  return rows;
}

double vertex_probability(const StateVector& psi, graphs::VertexId v,
                          std::size_t num_vertices) {
  if (num_vertices == 0 || psi.size() % num_vertices != 0) {
    throw std::invalid_argument("vertex_probability: dimension is not a multiple of N");
  }
  if (v >= num_vertices) {
    throw std::invalid_argument("vertex_probability: vertex out of range");
  }
  const std::size_t degree = psi.size() / num_vertices;
  double p = 0.0;
  for (std::size_t i = 0; i < degree; ++i) {
    p += std::norm(psi[i * num_vertices + v]);
  }
  return p;
}

std::vector<double> vertex_probabilities(const StateVector& psi, std::size_t num_vertices) {
  std::vector<double> out(num_vertices);
  for (std::size_t v = 0; v < num_vertices; ++v) {
    out[v] = vertex_probability(psi, v, num_vertices);
  }
  return out;
}

}  // namespace qwalk::walks
