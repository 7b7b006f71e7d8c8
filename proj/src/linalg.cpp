#include "qwalk/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qwalk/kernels.hpp"

namespace qwalk::linalg {

namespace {

using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;

MatrixXcd to_dense(const SparseOperator& a) {
  MatrixXcd m = MatrixXcd::Zero(a.dim, a.dim);
  for (std::size_t r = 0; r < a.dim; ++r) {
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a.col[k])) = a.val[k];
    }
  }
  return m;
}

/// First component with magnitude above 1e-12 of the max is made real-positive.
void fix_column_phase(Eigen::Ref<VectorXcd> u) {
  const double maxabs = u.cwiseAbs().maxCoeff();
  if (maxabs == 0.0) {
    return;
  }
  const double thresh = 1e-12 * maxabs;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double mag = std::abs(u(i));
    if (mag > thresh) {
      u *= std::conj(u(i)) / mag;
      return;
    }
  }
}

}  // namespace

StateVector matvec(const SparseOperator& a, const StateVector& psi) {
  if (a.dim != psi.size()) {
    throw std::invalid_argument("matvec: dimension mismatch");
  }
  StateVector out(a.dim);
  kernels::spmv(a, psi.data(), out.data());
  return out;
}

SpectralData eigh_dense(const SparseOperator& a, const EighOptions& opts) {
  if (!a.tags.hermitian) {
    throw std::invalid_argument("eigh_dense: operator is not hermitian-tagged");
  }
  if (a.dim > opts.dense_cap) {
    std::ostringstream oss;
    oss << "eigh_dense: dim " << a.dim << " exceeds the dense cap " << opts.dense_cap
        << "; use the polynomial propagator or an iterative eigensolver";
    throw std::invalid_argument(oss.str());
  }

  const MatrixXcd m = to_dense(a);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh_dense: eigensolver failed to converge");
  }

  SpectralData out;
  out.dim = a.dim;
  out.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + a.dim);
  MatrixXcd vectors = solver.eigenvectors();
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    fix_column_phase(vectors.col(j));
  }
  out.vectors.assign(vectors.data(), vectors.data() + a.dim * a.dim);
  return out;
}

std::vector<double> bessel_j_array(double x, std::size_t kmax) {
  if (x < 0.0) {
    throw std::invalid_argument("bessel_j_array: x must be >= 0");
  }
  std::vector<double> j(kmax + 1, 0.0);
  if (x == 0.0) {
    j[0] = 1.0;
    return j;
  }
  if (x < 0.5) {
    // power series; converges in a handful of terms for small x
    for (std::size_t k = 0; k <= kmax; ++k) {
      double term = 1.0;
      for (std::size_t p = 1; p <= k; ++p) {
        term *= (x / 2.0) / static_cast<double>(p);
      }
      double sum = term;
      for (std::size_t m = 1; m <= 30; ++m) {
        term *= -(x / 2.0) * (x / 2.0) /
                (static_cast<double>(m) * static_cast<double>(m + k));
        sum += term;
        if (std::abs(term) < 1e-300) {
          break;
        }
      }
      j[k] = sum;
    }
    return j;
  }

  // Miller's downward recurrence with normalization J_0 + 2 sum J_{2m} = 1
  const std::size_t base = std::max(kmax, static_cast<std::size_t>(std::ceil(x)));
  const std::size_t start =
      base + static_cast<std::size_t>(2.0 * std::sqrt(static_cast<double>(base) + 1.0)) + 40;
  double jp1 = 0.0;
  double jc = 1e-30;
  double norm_acc = 0.0;  // J_0 + 2*sum of even orders, accumulated unscaled
  for (std::size_t k = start; k-- > 0;) {
    const double jm1 = (2.0 * static_cast<double>(k + 1) / x) * jc - jp1;
    jp1 = jc;
    jc = jm1;
    if (k <= kmax) {
      j[k] = jc;
    }
    if (k % 2 == 0) {
      norm_acc += (k == 0) ? jc : 2.0 * jc;
    }
    if (std::abs(jc) > 1e250) {
      jp1 *= 1e-250;
      jc *= 1e-250;
      norm_acc *= 1e-250;
      for (auto& v : j) {
        v *= 1e-250;
      }
    }
  }
  for (auto& v : j) {
    v /= norm_acc;
  }
  return j;
}

Propagator::Propagator(SparseOperator h, ExpmOptions opts) : h_(std::move(h)) {
  if (!h_.tags.hermitian) {
    throw std::invalid_argument("Propagator: operator is not hermitian-tagged");
  }
  backend_ = opts.backend;
  if (backend_ == ExpmOptions::Backend::automatic) {
    backend_ = h_.dim <= opts.dense_cap ? ExpmOptions::Backend::spectral
                                        : ExpmOptions::Backend::chebyshev;
  }
  if (backend_ == ExpmOptions::Backend::spectral) {
    EighOptions eopts;
    eopts.dense_cap = std::max(opts.dense_cap, h_.dim);
    spectral_ = eigh_dense(h_, eopts);
  } else {
    if (opts.spectral_bounds) {
      bound_lo_ = opts.spectral_bounds->first;
      bound_hi_ = opts.spectral_bounds->second;
      if (!(bound_hi_ >= bound_lo_)) {
        throw std::invalid_argument("Propagator: invalid spectral bounds");
      }
    } else {
      const auto [lo, hi] = gershgorin_bounds(h_);
      bound_lo_ = lo;
      bound_hi_ = hi;
    }
  }
}

StateVector Propagator::apply(const StateVector& psi, double t, double tol) const {
  if (psi.size() != h_.dim) {
    throw std::invalid_argument("Propagator::apply: dimension mismatch");
  }
  if (!(tol > 0.0)) {
    throw std::invalid_argument("Propagator::apply: tolerance must be positive");
  }
  if (t == 0.0) {
    return psi;
  }
  return backend_ == ExpmOptions::Backend::spectral ? apply_spectral(psi, t)
                                                    : apply_chebyshev(psi, t, tol);
}

StateVector Propagator::apply_spectral(const StateVector& psi, double t) const {
  const auto& sd = *spectral_;
  const Eigen::Index n = static_cast<Eigen::Index>(sd.dim);
  Eigen::Map<const MatrixXcd> v(sd.vectors.data(), n, n);
  Eigen::Map<const VectorXcd> p(psi.data(), n);
  VectorXcd coeff = v.adjoint() * p;
  for (Eigen::Index jj = 0; jj < n; ++jj) {
    coeff(jj) *= std::exp(Complex{0.0, -sd.eigenvalues[jj] * t});
  }
  StateVector out(sd.dim);
  Eigen::Map<VectorXcd>(out.data(), n) = v * coeff;
  return out;
}

StateVector Propagator::apply_chebyshev(const StateVector& psi, double t, double tol) const {
  const std::size_t n = h_.dim;
  const double center = 0.5 * (bound_hi_ + bound_lo_);
  const double radius = 0.5 * (bound_hi_ - bound_lo_);
  const Complex phase = std::exp(Complex{0.0, -center * t});

  if (radius <= 0.0) {
    // H = center * I within the enclosure
    StateVector out = psi;
    for (auto& a : out.amp) {
      a *= phase;
    }
    return out;
  }

  const double z = radius * t;
  const double zabs = std::abs(z);
  const Complex ipow = z >= 0.0 ? Complex{0.0, -1.0} : Complex{0.0, 1.0};

  // order selection: smallest K whose coefficient tail sum stays under tol/2;
  // khi is grown until the last few coefficients are far below the target, so
  // the neglected beyond-khi remainder cannot matter
  const double target = 0.5 * tol;
  std::size_t khi = static_cast<std::size_t>(std::ceil(zabs)) + 40;
  std::vector<double> bessel;
  std::size_t order = 0;
  for (int attempt = 0;; ++attempt) {
    bessel = bessel_j_array(zabs, khi);
    const double floor_mag = std::max(1e-300, 1e-6 * target);
    const bool tail_closed = std::abs(bessel[khi]) < floor_mag &&
                             std::abs(bessel[khi - 1]) < floor_mag &&
                             std::abs(bessel[khi - 2]) < floor_mag;
    if (tail_closed) {
      order = 1;
      double tail = 0.0;
      for (std::size_t k = khi; k-- > 1;) {
        tail += 2.0 * std::abs(bessel[k + 1]);
        if (tail > target) {
          order = k + 1;
          break;
        }
      }
      break;
    }
    if (attempt >= 12 || khi > 400000) {
      throw std::runtime_error("expm_apply: Chebyshev order selection failed to meet tolerance");
    }
    khi = khi * 3 / 2 + 20;
  }

  // Clenshaw-style forward recurrence over T_k((H - c I)/r)
  StateVector t_prev = psi;      // T_0 psi
  StateVector t_cur(n);          // T_1 psi
  StateVector w(n);
  StateVector acc(n);

  kernels::spmv(h_, t_prev.data(), w.data());
  const double inv_r = 1.0 / radius;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    t_cur[i] = inv_r * (w[i] - center * t_prev[i]);
    acc[i] = bessel[0] * t_prev[i] + 2.0 * ipow * bessel[1] * t_cur[i];
  }

  Complex ipow_k = ipow;
  for (std::size_t k = 2; k <= order; ++k) {
    ipow_k *= ipow;
    kernels::spmv(h_, t_cur.data(), w.data());
    kernels::chebyshev_update(w.data(), t_cur.data(), t_prev.data(), acc.data(),
                              2.0 * inv_r, center, 2.0 * ipow_k * bessel[k], n);
    std::swap(t_prev.amp, t_cur.amp);
  }

  for (auto& a : acc.amp) {
    a *= phase;
  }
  return acc;
}

StateVector expm_apply(const SparseOperator& h, double t, const StateVector& psi,
                       double tol, const ExpmOptions& opts) {
  return Propagator(h, opts).apply(psi, t, tol);
}

double phase_for_eigenvalue(double lambda) {
  if (std::abs(lambda) > 2.0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return 2.0 * std::asin(lambda / 2.0);
}

UnitaryEig eig_unitary(const SparseOperator& w, std::size_t dense_cap) {
  if (w.dim > dense_cap) {
    std::ostringstream oss;
    oss << "eig_unitary: dim " << w.dim << " exceeds the dense cap " << dense_cap;
    throw std::invalid_argument(oss.str());
  }
  const Eigen::Index n = static_cast<Eigen::Index>(w.dim);
  const MatrixXcd wd = to_dense(w);
  const MatrixXcd re = 0.5 * (wd + wd.adjoint());
  const MatrixXcd im = Complex{0.0, -0.5} * (wd - wd.adjoint());

  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(re);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_unitary: eigensolver failed");
  }
  const Eigen::VectorXd cosines = solver.eigenvalues();
  MatrixXcd vectors = solver.eigenvectors();

  // split cosine clusters by the commuting imaginary part
  const double cluster_tol = 1e-10;
  Eigen::Index begin = 0;
  while (begin < n) {
    Eigen::Index end = begin + 1;
    while (end < n && cosines(end) - cosines(end - 1) <= cluster_tol) {
      ++end;
    }
    const Eigen::Index m = end - begin;
    if (m > 1) {
      MatrixXcd sub = vectors.middleCols(begin, m).adjoint() * im * vectors.middleCols(begin, m);
      sub = 0.5 * (sub + sub.adjoint().eval());
      Eigen::SelfAdjointEigenSolver<MatrixXcd> inner(sub);
      vectors.middleCols(begin, m) = vectors.middleCols(begin, m) * inner.eigenvectors();
    }
    begin = end;
  }

  struct Pair {
    double phase;
    double residual;
    Eigen::Index index;
  };
  std::vector<Pair> pairs(static_cast<std::size_t>(n));
  for (Eigen::Index jj = 0; jj < n; ++jj) {
    fix_column_phase(vectors.col(jj));
    const VectorXcd wu = wd * vectors.col(jj);
    const Complex mu = vectors.col(jj).dot(wu);  // Eigen dot conjugates the left arg
    double phase = std::arg(mu);
    if (phase <= -std::numbers::pi + 1e-12) {
      phase += 2.0 * std::numbers::pi;  // canonical range (-pi, pi]
    }
    pairs[static_cast<std::size_t>(jj)] = {phase, (wu - mu * vectors.col(jj)).norm(), jj};
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return a.phase < b.phase; });

  UnitaryEig out;
  out.dim = w.dim;
  out.phases.resize(w.dim);
  out.residuals.resize(w.dim);
  out.vectors.resize(w.dim * w.dim);
  for (std::size_t jj = 0; jj < w.dim; ++jj) {
    out.phases[jj] = pairs[jj].phase;
    out.residuals[jj] = pairs[jj].residual;
    Eigen::Map<VectorXcd>(out.vectors.data() + jj * w.dim, n) = vectors.col(pairs[jj].index);
  }
  return out;
}

Lemma2Report lemma2_check(const SparseOperator& s, const SparseOperator& f,
                          std::size_t dense_cap) {
  if (s.dim != f.dim) {
    throw std::invalid_argument("lemma2_check: dimension mismatch");
  }
  if (!s.tags.hermitian || !s.tags.involution || !f.tags.hermitian || !f.tags.involution) {
    throw std::invalid_argument("lemma2_check: S and F must be Hermitian involutions");
  }

  const SparseOperator sf = sparse_multiply(s, f);
  const UnitaryEig eig = eig_unitary(sf, dense_cap);
  const SparseOperator diff = sparse_add(s, f, 1.0, -1.0);

  Lemma2Report report;
  report.dim = s.dim;
  report.phases = eig.phases;
  StateVector u(s.dim);
  StateVector first(s.dim);
  StateVector second(s.dim);
  for (std::size_t jj = 0; jj < s.dim; ++jj) {
    std::copy(eig.column(jj), eig.column(jj) + s.dim, u.amp.begin());
    kernels::spmv(diff, u.data(), first.data());
    kernels::spmv(diff, first.data(), second.data());
    const double target = 4.0 * std::pow(std::sin(eig.phases[jj] / 2.0), 2);
    double acc = 0.0;
    for (std::size_t i = 0; i < s.dim; ++i) {
      acc += std::norm(second[i] - target * u[i]);
    }
    report.max_residual = std::max(report.max_residual, std::sqrt(acc));
    report.max_eig_residual = std::max(report.max_eig_residual, eig.residuals[jj]);
  }
  return report;
}

}  // namespace qwalk::linalg
