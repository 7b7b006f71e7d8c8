#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qwalk/core.hpp"
#include "qwalk/sparse.hpp"
#include "qwalk/state.hpp"

namespace qwalk::linalg {

StateVector matvec(const SparseOperator& a, const StateVector& psi);

/// Full spectrum of a Hermitian operator. Eigenvalues ascending; eigenvectors
/// are orthonormal columns (column-major storage) with the first component of
/// magnitude above 1e-10*max made real-positive for reproducibility.
struct SpectralData {
  std::size_t dim = 0;
  std::vector<double> eigenvalues;
  std::vector<Complex> vectors;  // column-major, dim x dim

  const Complex* column(std::size_t j) const { return vectors.data() + j * dim; }
};

struct EighOptions {
  std::size_t dense_cap = kDefaultDenseCap;
};

SpectralData eigh_dense(const SparseOperator& a, const EighOptions& opts = {});

struct ExpmOptions {
  enum class Backend { automatic, spectral, chebyshev };
  Backend backend = Backend::automatic;
  std::size_t dense_cap = kDefaultDenseCap;
  /// Spectral enclosure [lo, hi] for the Chebyshev backend; Gershgorin discs
  /// are used when absent.
  std::optional<std::pair<double, double>> spectral_bounds;
};

/// Reusable e^{-iHt} action. Spectral synthesis below the dense cap, a
/// truncated Chebyshev expansion (Bessel coefficients, order picked from the
/// coefficient tail to meet tol) above it.
class Propagator {
 public:
  explicit Propagator(SparseOperator h, ExpmOptions opts = {});

  StateVector apply(const StateVector& psi, double t, double tol) const;
  ExpmOptions::Backend backend() const { return backend_; }
  const SparseOperator& hamiltonian() const { return h_; }
  const SpectralData* spectral_data() const { return spectral_ ? &*spectral_ : nullptr; }

 private:
  StateVector apply_spectral(const StateVector& psi, double t) const;
  StateVector apply_chebyshev(const StateVector& psi, double t, double tol) const;

  SparseOperator h_;
  ExpmOptions::Backend backend_;
  std::optional<SpectralData> spectral_;
  double bound_lo_ = 0.0;
  double bound_hi_ = 0.0;
};

/// One-shot phi with ||phi - e^{-iHt} psi|| <= tol.
StateVector expm_apply(const SparseOperator& h, double t, const StateVector& psi,
                       double tol, const ExpmOptions& opts = {});

/// Eigenpairs of a unitary operator, obtained by simultaneously diagonalizing
/// the commuting Hermitian pair (W+W^dag)/2 and (W-W^dag)/(2i). phases[j] is
/// the eigenvalue argument in (-pi, pi]; residuals[j] = ||W u_j - e^{i phi_j} u_j||.
struct UnitaryEig {
  std::size_t dim = 0;
  std::vector<double> phases;    // ascending
  std::vector<Complex> vectors;  // column-major
  std::vector<double> residuals;

  const Complex* column(std::size_t j) const { return vectors.data() + j * dim; }
};

UnitaryEig eig_unitary(const SparseOperator& w, std::size_t dense_cap = kDefaultDenseCap);

struct Lemma2Report {
  std::size_t dim = 0;
  double max_residual = 0.0;      // spectral mapping: (S-F)^2 u = 4 sin^2(phi/2) u
  double max_eig_residual = 0.0;  // eigensolver quality: ||SF u - e^{i phi} u||
  std::vector<double> phases;
  bool passed(double tol = 1e-8) const { return max_residual <= tol; }
};

/// Checks that every eigenvector of SF with eigenvalue e^{i phi} is an
/// eigenvector of (S-F)^2 with eigenvalue 4 sin^2(phi/2).
Lemma2Report lemma2_check(const SparseOperator& s, const SparseOperator& f,
                          std::size_t dense_cap = kDefaultDenseCap);

/// J_0..J_kmax at x >= 0 (series for small x, Miller's downward recurrence
/// otherwise). Exposed for the propagator tests.
std::vector<double> bessel_j_array(double x, std::size_t kmax);

/// phi with lambda = 2 sin(phi/2), the SF eigenphase matching an S-F
/// eigenvalue; NaN outside [-2, 2].
double phase_for_eigenvalue(double lambda);

}  // namespace qwalk::linalg
