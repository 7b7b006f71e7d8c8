#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/graphs.hpp"
#include "qwalk/linalg.hpp"
#include "qwalk/operators.hpp"

namespace qwalk::search {

/// Torus search instance: Grover C0 everywhere, C1 = -I at the marked vertex,
/// H = S - F.
struct SearchInstance {
  std::size_t side = 0;
  std::size_t num_vertices = 0;  // N = side^2
  graphs::VertexId marked = 0;
  graphs::PairingMode mode = graphs::PairingMode::flip_flop;
  graphs::ColoredGraph graph;
  SparseOperator shift;
  SparseOperator coin_flip;
  SparseOperator hamiltonian;  // S - F

  std::size_t dim() const { return graph.dim(); }
  StateVector initial_state() const;         // |S_c, S_v>
  StateVector marked_coin_uniform() const;   // |S_c, x>
};

SearchInstance setup(std::size_t side, graphs::VertexId marked, graphs::PairingMode mode);

struct Claim1Report {
  double residual = 0.0;     // ||(S-F)|S_c,S_v> - (2/sqrt(N))|S_c,x>||
  double coefficient = 0.0;  // <S_c,x|(S-F)|S_c,S_v>, real part
  double expected_coefficient = 0.0;
  bool passed(double tol = 1e-12) const { return residual <= tol; }
};

Claim1Report claim1_check(const SearchInstance& inst);

enum class AlphaMethod { full_dense, symmetry_reduced };

struct AlphaData {
  double theta_alpha = 0.0;  // smallest positive eigenvalue of S-F seen by |S_c,S_v>
  double alpha = 0.0;        // 2 asin(theta_alpha / 2)
  double overlap_uniform_plus = 0.0;   // ||P_{+theta} |S_c,S_v>||
  double overlap_uniform_minus = 0.0;
  double overlap_marked_plus = 0.0;    // ||P_{+theta} |S_c,x>||
  double overlap_marked_minus = 0.0;
  double overlap_threshold = 0.1;
  std::size_t candidates = 0;  // eigenvalues in (0, 2*theta] passing the threshold
  bool ambiguous = false;
  AlphaMethod method = AlphaMethod::full_dense;
};

/// theta_alpha from the spectrum of S-F: smallest positive eigenvalue whose
/// eigenspace projection of |S_c,S_v> exceeds the threshold. Overlaps are
/// eigenspace projections (summed over degenerate clusters), so they do not
/// depend on the eigenvector basis choice.
AlphaData extract_alpha(const SearchInstance& inst, double overlap_threshold = 0.1,
                        AlphaMethod method = AlphaMethod::full_dense,
                        std::size_t dense_cap = kDefaultDenseCap);

struct SearchOptions {
  double t_max = 0.0;  // <= 0: auto, 1.25 * pi / (2 theta_alpha)
  double dt = 0.0;     // <= 0: auto, 0.01 * sqrt(N)
  double tol = 1e-10;  // accumulated propagation error budget over the scan
  linalg::ExpmOptions::Backend backend = linalg::ExpmOptions::Backend::automatic;
  double coin_symmetry_tol = 1e-10;
  double overlap_threshold = 0.1;
  AlphaMethod alpha_method = AlphaMethod::full_dense;
};

struct SearchAnalysis {
  AlphaData alpha;
  double t_peak = 0.0;
  double p_peak = 0.0;
  std::vector<std::pair<double, double>> curve;  // (t, p_x(t))
  double max_coin_asymmetry = 0.0;               // coin-amplitude equality at x, all samples
  bool coin_symmetry_ok = false;
  double t_max = 0.0;
  double dt = 0.0;
};

/// Evolves |S_c,S_v> under e^{-i(S-F)t}, samples p_x(t), refines the sampled
/// peak by golden-section search, and checks that the coin amplitudes at the
/// marked vertex stay equal.
SearchAnalysis run_ctqw_search(const SearchInstance& inst, SearchOptions opts = {});

struct ScanRow {
  std::size_t side = 0;
  std::size_t num_vertices = 0;
  double theta_alpha = 0.0;
  double alpha = 0.0;
  double t_peak = 0.0;
  double p_peak = 0.0;
  double t_over_sqrt_n = 0.0;
  double p_times_log_n = 0.0;
  double cost = 0.0;  // t_peak / p_peak
  bool ok = false;
  std::string error;
};

struct ScanOptions {
  double tol = 1e-10;
  double overlap_threshold = 0.1;
  /// Evolution backend; the scan defaults to the Chebyshev propagator.
  linalg::ExpmOptions::Backend backend = linalg::ExpmOptions::Backend::chebyshev;
  /// theta_alpha route; symmetry_reduced keeps large flip-flop sides cheap and
  /// falls back to full_dense where the reduction does not apply.
  AlphaMethod alpha_method = AlphaMethod::symmetry_reduced;
};

/// One row per side; a row that fails its propagator contract is marked and
/// does not abort the scan.
std::vector<ScanRow> scaling_scan(const std::vector<std::size_t>& sides,
                                  graphs::PairingMode mode, ScanOptions opts = {});

struct DtqwSearchResult {
  std::size_t step_peak = 0;
  double p_peak = 0.0;
  std::vector<double> curve;  // p_x per step, curve[0] = 1/N
};

/// Iterates U = SF from |S_c,S_v> for max_steps (0: auto, ceil(4 sqrt(N ln N))).
DtqwSearchResult run_dtqw_search(const SearchInstance& inst, std::size_t max_steps = 0);

/// Overlap identity for the SF eigenpairs with phi != 0: the residual
/// | <j|S_c,S_v> + i e^{i phi/2} / (sqrt(N) sin(phi/2)) <j|S_c,x> |, maximized.
double claim2_max_residual(const SearchInstance& inst,
                           std::size_t dense_cap = kDefaultDenseCap);

}  // namespace qwalk::search
