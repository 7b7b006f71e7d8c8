#pragma once

#include "qwalk/coin.hpp"
#include "qwalk/graphs.hpp"
#include "qwalk/sparse.hpp"

namespace qwalk::operators {

/// Shift S = sum_v sum_i |pairing(i,v)><i,v|: a Hermitian permutation of
/// order 2 with one nonzero per row.
SparseOperator build_shift(const graphs::ColoredGraph& g);

/// Block coin flip: the d x d block at each vertex is C0, or C1 at the marked
/// vertex. Hermitian involution, at most d nonzeros per row.
SparseOperator build_coin_flip(const graphs::ColoredGraph& g, const CoinSpec& spec);

enum class HamiltonianForm { s_plus_f_minus_2i, s_minus_f };

SparseOperator build_hamiltonian(const SparseOperator& s, const SparseOperator& f,
                                 HamiltonianForm form);

/// Coordinate-format text export (row col re im per line) for cross-checking.
std::string to_coordinate_text(const SparseOperator& a);

}  // namespace qwalk::operators
