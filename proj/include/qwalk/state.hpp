#pragma once

#include <cstddef>
#include <vector>

#include "qwalk/core.hpp"

namespace qwalk {

/// Complex amplitude vector over the coin-major (coin*N + vertex) basis.
struct StateVector {
  std::vector<Complex> amp;

  StateVector() = default;
  explicit StateVector(std::size_t dim) : amp(dim, Complex{0.0, 0.0}) {}

  std::size_t size() const { return amp.size(); }
  Complex& operator[](std::size_t i) { return amp[i]; }
  const Complex& operator[](std::size_t i) const { return amp[i]; }
  Complex* data() { return amp.data(); }
  const Complex* data() const { return amp.data(); }

  double norm() const;
  void normalize();
};

StateVector basis_state(std::size_t dim, std::size_t flat_label);
StateVector uniform_state(std::size_t dim);

/// conj(a) . b
Complex inner(const StateVector& a, const StateVector& b);
double distance(const StateVector& a, const StateVector& b);

}  // namespace qwalk
