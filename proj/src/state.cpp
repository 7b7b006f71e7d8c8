#include "qwalk/state.hpp"

#include <cmath>
#include <stdexcept>

#include "qwalk/kernels.hpp"

namespace qwalk {

double StateVector::norm() const { return kernels::nrm2(amp.data(), amp.size()); }

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) {
    throw std::runtime_error("cannot normalize the zero vector");
  }
  for (auto& a : amp) {
    a /= n;
  }
}

StateVector basis_state(std::size_t dim, std::size_t flat_label) {
  if (flat_label >= dim) {
    throw std::invalid_argument("basis_state: label out of range");
  }
  StateVector psi(dim);
  psi[flat_label] = Complex{1.0, 0.0};
  return psi;
}

StateVector uniform_state(std::size_t dim) {
  StateVector psi(dim);
  const double a = 1.0 / std::sqrt(static_cast<double>(dim));
  for (auto& x : psi.amp) {
    x = Complex{a, 0.0};
  }
  return psi;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("inner: dimension mismatch");
  }
  return kernels::dot(a.data(), b.data(), a.size());
}

double distance(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("distance: dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::norm(a[i] - b[i]);
  }
  return std::sqrt(acc);
}

}  // namespace qwalk
