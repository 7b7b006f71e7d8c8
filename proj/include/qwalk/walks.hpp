#pragma once

#include <cstddef>
#include <vector>

#include "qwalk/graphs.hpp"
#include "qwalk/linalg.hpp"
#include "qwalk/sparse.hpp"
#include "qwalk/state.hpp"

namespace qwalk::walks {

/// One DTQW step U = SF.
StateVector dtqw_step(const SparseOperator& s, const SparseOperator& f,
                      const StateVector& psi);

/// U(s) = e^{-i(pi/2)s(S-I)} e^{-i(pi/2)s(F-I)} applied through the closed
/// form e^{-i(pi/2)s(A-I)} = e^{i(pi/2)s}(cos(pi s/2) I - i sin(pi s/2) A).
/// Exact phases are kept, so s = 1 reproduces SF as an operator identity.
struct FamilyStep {
  double s = 1.0;
  SparseOperator shift;
  SparseOperator coin_flip;

  StateVector apply(const StateVector& psi) const;
};

StateVector family_step(double s, const SparseOperator& shift,
                        const SparseOperator& coin_flip, const StateVector& psi);

struct LocalityReport {
  double max_off_mask = 0.0;
  bool passed(double tol = 1e-12) const { return max_off_mask <= tol; }
};

/// Builds the dense matrix of U(s) column by column and asserts entries vanish
/// outside the union of the I, S, F, SF supports.
LocalityReport locality_check(double s, const SparseOperator& shift,
                              const SparseOperator& coin_flip,
                              std::size_t dense_cap = kDefaultDenseCap);

struct ConvergenceRow {
  double s = 0.0;
  std::size_t steps = 0;
  double t = 0.0;  // (pi/2) * s * steps
  double error = 0.0;
};

/// err(s) = || U(s)^n psi0 - e^{-i (pi/2) s n (S+F-2I)} psi0 ||, n = round(tau/s).
std::vector<ConvergenceRow> convergence_scan(const SparseOperator& shift,
                                             const SparseOperator& coin_flip,
                                             const StateVector& psi0, double tau,
                                             const std::vector<double>& s_values);

struct SignFlipReport {
  std::size_t steps = 0;
  double max_probability_deviation = 0.0;
  double max_phase_deviation = 0.0;  // | psi_minus - (-1)^n psi_plus |
  bool passed(double tol = 1e-12) const {
    return max_probability_deviation <= tol && max_phase_deviation <= tol;
  }
};

/// Runs the DTQW with F and with -F; probabilities must agree at every step
/// and the states differ by the global phase (-1)^n.
SignFlipReport sign_flip_invariance(const SparseOperator& shift,
                                    const SparseOperator& coin_flip,
                                    const StateVector& psi0, std::size_t steps);

struct ClassicalLimitRow {
  double epsilon = 0.0;
  std::size_t steps = 0;
  double tv_error = 0.0;  // total-variation distance to e^{(M-I)tau} p0
};

/// Compares (eps M + (1-eps) I)^round(tau/eps) p0 with the continuous solution
/// e^{(M-I)tau} p0. M is a column-stochastic matrix, dense row-major.
std::vector<ClassicalLimitRow> classical_limit_demo(const std::vector<double>& m,
                                                    std::size_t n,
                                                    const std::vector<double>& p0,
                                                    double tau,
                                                    const std::vector<double>& eps_values);

/// Sum of |amplitude|^2 over the coin states of vertex v.
double vertex_probability(const StateVector& psi, graphs::VertexId v,
                          std::size_t num_vertices);
std::vector<double> vertex_probabilities(const StateVector& psi, std::size_t num_vertices);

}  // namespace qwalk::walks
