#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qwalk/core.hpp"

namespace qwalk::operators {

/// Per-vertex coin specification. Every coin matrix must be Hermitian and
/// unitary; the optional marked entry replaces the coin at one vertex.
struct CoinSpec {
  enum class Kind { grover, hadamard, custom };
  enum class MarkedKind { minus_identity, custom };

  Kind kind = Kind::grover;
  std::vector<Complex> custom_matrix;  // d*d row-major, kind == custom only

  struct Marked {
    std::size_t vertex = 0;
    MarkedKind kind = MarkedKind::minus_identity;
    std::vector<Complex> matrix;  // d*d row-major, kind == custom only
  };
  std::optional<Marked> marked;

  static CoinSpec grover();
  static CoinSpec hadamard();
  static CoinSpec custom(std::vector<Complex> matrix);

  CoinSpec with_marked(std::size_t vertex) const;  // C1 = -I at `vertex`
  CoinSpec with_marked_custom(std::size_t vertex, std::vector<Complex> matrix) const;
};

/// Dense d x d unmarked coin C0, row-major.
std::vector<Complex> coin_matrix(const CoinSpec& spec, std::size_t degree);
/// Dense d x d marked coin C1 (minus identity by default).
std::vector<Complex> marked_coin_matrix(const CoinSpec& spec, std::size_t degree);

/// max(|C - C^dag|, |C^dag C - I|) over entries.
double coin_deviation(const std::vector<Complex>& matrix, std::size_t degree);

/// Throws std::invalid_argument (with the max deviation) unless every coin the
/// spec produces for this degree is Hermitian-unitary at 1e-12.
void validate_coin(const CoinSpec& spec, std::size_t degree);

}  // namespace qwalk::operators
