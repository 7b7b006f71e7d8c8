#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qwalk/search.hpp"
#include "qwalk/walks.hpp"

using namespace qwalk;
using namespace qwalk::search;
using qwalk::graphs::PairingMode;

TEST_SUITE_BEGIN("search");

TEST_CASE("setup marks exactly one vertex with -I") {
  const SearchInstance inst = setup(4, 0, PairingMode::flip_flop);
  const std::size_t n = inst.num_vertices;
  std::size_t minus_identity_blocks = 0;
  for (std::size_t v = 0; v < n; ++v) {
    bool is_minus_i = true;
    for (std::size_t i = 0; i < 4 && is_minus_i; ++i) {
      for (std::size_t j = 0; j < 4 && is_minus_i; ++j) {
        const Complex got =
            sparse_entry(inst.coin_flip, graphs::flat_index(i, v, n), graphs::flat_index(j, v, n));
        is_minus_i = got == (i == j ? Complex{-1.0, 0.0} : Complex{0.0, 0.0});
      }
    }
    minus_identity_blocks += is_minus_i;
  }
  CHECK(minus_identity_blocks == 1);
}

TEST_CASE("setup dimensions and bad input") {
  const SearchInstance tiny = setup(2, 0, PairingMode::flip_flop);
  CHECK(tiny.num_vertices == 4);
  CHECK(tiny.dim() == 16);
  CHECK_THROWS_AS(setup(2, 4, PairingMode::flip_flop), std::invalid_argument);
  CHECK_THROWS_AS(setup(5, 0, PairingMode::flip_flop), std::invalid_argument);

  const SearchInstance big = setup(16, 3, PairingMode::flip_flop);
  CHECK(big.dim() == 1024);
}

TEST_CASE("claim1_check: (S-F)|S_c,S_v> = (2/sqrt N)|S_c,x>") {
  for (const auto mode : {PairingMode::flip_flop, PairingMode::edge_colored}) {
    for (const std::size_t side : {2, 4, 8}) {
      const SearchInstance inst = setup(side, side + 1, mode);
      const Claim1Report report = claim1_check(inst);
      CAPTURE(side);
      CHECK(report.residual <= 1e-13);
      CHECK(std::abs(report.coefficient - report.expected_coefficient) <= 1e-13);
    }
  }
  // N = 4 makes the coefficient exactly 1
  const Claim1Report tiny = claim1_check(setup(2, 0, PairingMode::flip_flop));
  CHECK(tiny.coefficient == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("the unmarked instance annihilates the uniform state") {
  const auto graph = graphs::build_torus(4, PairingMode::flip_flop);
  const SparseOperator s = operators::build_shift(graph);
  const SparseOperator f = operators::build_coin_flip(graph, operators::CoinSpec::grover());
  const SparseOperator h =
      operators::build_hamiltonian(s, f, operators::HamiltonianForm::s_minus_f);
  CHECK(linalg::matvec(h, uniform_state(h.dim)).norm() <= 1e-13);
}

TEST_CASE("extract_alpha: order-one constant at side 4") {
  const SearchInstance inst = setup(4, 0, PairingMode::flip_flop);
  const AlphaData alpha = extract_alpha(inst);
  const double scaled = alpha.alpha * std::sqrt(static_cast<double>(inst.num_vertices));
  CHECK(scaled > 0.5);
  CHECK(scaled < 10.0);
  CHECK(alpha.theta_alpha == doctest::Approx(2.0 * std::sin(alpha.alpha / 2.0)).epsilon(1e-12));
}

TEST_CASE("extract_alpha: alpha scales like 1/sqrt(N) between sides 8 and 16") {
  const AlphaData a8 = extract_alpha(setup(8, 0, PairingMode::flip_flop));
  const AlphaData a16 = extract_alpha(setup(16, 0, PairingMode::flip_flop));
  const double ratio = a8.alpha / a16.alpha;
  CHECK(ratio > 1.4);
  CHECK(ratio < 2.8);
  // the extremal-eigenvector overlaps approach 1/sqrt(2) as N grows
  const double root_half = std::sqrt(0.5);
  CHECK(std::abs(a8.overlap_uniform_plus - root_half) < 0.25);
  CHECK(std::abs(a16.overlap_uniform_plus - root_half) <
        std::abs(a8.overlap_uniform_plus - root_half) + 0.02);
}

TEST_CASE("sector-reduced alpha extraction matches the full dense route") {
  for (const std::size_t side : {8, 16}) {
    const SearchInstance inst = setup(side, 0, PairingMode::flip_flop);
    const AlphaData dense = extract_alpha(inst, 0.1, AlphaMethod::full_dense);
    const AlphaData sector = extract_alpha(inst, 0.1, AlphaMethod::symmetry_reduced);
    CAPTURE(side);
    CHECK(sector.method == AlphaMethod::symmetry_reduced);
    CHECK(std::abs(dense.theta_alpha - sector.theta_alpha) <= 1e-10);
    CHECK(std::abs(dense.alpha - sector.alpha) <= 1e-10);
    CHECK(std::abs(dense.overlap_uniform_plus - sector.overlap_uniform_plus) <= 1e-8);
    CHECK(std::abs(dense.overlap_marked_plus - sector.overlap_marked_plus) <= 1e-8);
  }
}

TEST_CASE("ctqw search run: t = 0 sample, coin symmetry, peak consistency at side 8") {
  const SearchInstance inst = setup(8, 0, PairingMode::flip_flop);
  SearchOptions opts;
  opts.alpha_method = AlphaMethod::symmetry_reduced;
  const SearchAnalysis analysis = run_ctqw_search(inst, opts);

  REQUIRE(!analysis.curve.empty());
  CHECK(analysis.curve[0].first == 0.0);
  CHECK(analysis.curve[0].second ==
        doctest::Approx(1.0 / static_cast<double>(inst.num_vertices)).epsilon(1e-12));
  CHECK(analysis.coin_symmetry_ok);
  CHECK(analysis.max_coin_asymmetry <= 1e-10);

  const double predicted = std::numbers::pi / (2.0 * analysis.alpha.theta_alpha);
  CHECK(analysis.t_peak > 0.6 * predicted);
  CHECK(analysis.t_peak < 1.4 * predicted);
  CHECK(analysis.p_peak > 10.0 / static_cast<double>(inst.num_vertices));
}

TEST_CASE("energy is conserved along the search evolution") {
  const SearchInstance inst = setup(4, 0, PairingMode::flip_flop);
  const linalg::Propagator prop(inst.hamiltonian);
  StateVector psi = inst.initial_state();
  const auto energy = [&](const StateVector& v) {
    return inner(v, linalg::matvec(inst.hamiltonian, v)).real();
  };
  const double e0 = energy(psi);
  const double tol = 1e-11;
  for (int k = 0; k < 30; ++k) {
    psi = prop.apply(psi, 0.2, tol);
    CHECK(std::abs(energy(psi) - e0) <= 10.0 * tol * 30);
  }
}

TEST_CASE("search runs are deterministic") {
  const SearchInstance inst = setup(4, 0, PairingMode::flip_flop);
  SearchOptions opts;
  opts.t_max = 4.0;
  opts.dt = 0.25;
  const SearchAnalysis a = run_ctqw_search(inst, opts);
  const SearchAnalysis b = run_ctqw_search(inst, opts);
  REQUIRE(a.curve.size() == b.curve.size());
  for (std::size_t k = 0; k < a.curve.size(); ++k) {
    CHECK(a.curve[k].second == b.curve[k].second);
  }
  CHECK(a.t_peak == b.t_peak);
  CHECK(a.p_peak == b.p_peak);
}

TEST_CASE("discrete search at side 16 lands near the continuous peak") {
  const SearchInstance inst = setup(16, 0, PairingMode::flip_flop);
  const DtqwSearchResult discrete = run_dtqw_search(inst);
  CHECK(discrete.curve[0] ==
        doctest::Approx(1.0 / static_cast<double>(inst.num_vertices)).epsilon(1e-12));
  CHECK(discrete.step_peak > 0);
  CHECK(discrete.step_peak < discrete.curve.size() - 1);

  SearchOptions opts;
  opts.alpha_method = AlphaMethod::symmetry_reduced;
  opts.backend = linalg::ExpmOptions::Backend::chebyshev;
  const SearchAnalysis continuous = run_ctqw_search(inst, opts);
  CHECK(discrete.p_peak < 3.0 * continuous.p_peak);
  CHECK(discrete.p_peak > continuous.p_peak / 3.0);
  CHECK(continuous.p_peak > 50.0 / static_cast<double>(inst.num_vertices));
  const double predicted = std::numbers::pi / (2.0 * continuous.alpha.theta_alpha);
  CHECK(std::abs(continuous.t_peak - predicted) <= 0.25 * predicted);
}

TEST_CASE("the SF eigenvector overlap identity holds at sides 4 and 8") {
  for (const std::size_t side : {4, 8}) {
    const SearchInstance inst = setup(side, 0, PairingMode::flip_flop);
    CAPTURE(side);
    CHECK(claim2_max_residual(inst) <= 1e-8);
  }
}

TEST_CASE("both pairing conventions give the same search dynamics") {
  // the conventions differ by a per-vertex coin relabeling that commutes with
  // the Grover coins and fixes |S_c,x>, so everything observable coincides
  SearchOptions opts;
  opts.t_max = 11.0;
  opts.dt = 0.5;
  opts.alpha_method = AlphaMethod::symmetry_reduced;  // dense fallback for edge_colored
  const SearchAnalysis ff =
      run_ctqw_search(setup(8, 0, PairingMode::flip_flop), opts);
  const SearchAnalysis ec =
      run_ctqw_search(setup(8, 0, PairingMode::edge_colored), opts);
  CHECK(std::abs(ff.alpha.theta_alpha - ec.alpha.theta_alpha) <= 1e-12);
  REQUIRE(ff.curve.size() == ec.curve.size());
  for (std::size_t k = 0; k < ff.curve.size(); ++k) {
    CHECK(std::abs(ff.curve[k].second - ec.curve[k].second) <= 1e-12);
  }
  CHECK(std::abs(ff.p_peak - ec.p_peak) <= 1e-12);
}

TEST_CASE("sector alpha extraction handles an off-origin marked vertex") {
  const SearchInstance inst = setup(8, 27, PairingMode::flip_flop);
  const AlphaData dense = extract_alpha(inst, 0.1, AlphaMethod::full_dense);
  const AlphaData sector = extract_alpha(inst, 0.1, AlphaMethod::symmetry_reduced);
  CHECK(sector.method == AlphaMethod::symmetry_reduced);
  CHECK(std::abs(dense.theta_alpha - sector.theta_alpha) <= 1e-10);
  CHECK(std::abs(dense.overlap_uniform_plus - sector.overlap_uniform_plus) <= 1e-8);
}

TEST_CASE("scaling scan: repeated side gives identical rows; bad side is marked") {
  ScanOptions opts;
  const auto rows = scaling_scan({4, 4}, PairingMode::flip_flop, opts);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ok);
  CHECK(rows[0].theta_alpha == rows[1].theta_alpha);
  CHECK(rows[0].t_peak == rows[1].t_peak);
  CHECK(rows[0].p_peak == rows[1].p_peak);

  const auto bad = scaling_scan({3}, PairingMode::flip_flop, opts);
  REQUIRE(bad.size() == 1);
  CHECK(!bad[0].ok);
  CHECK(bad[0].error.find("even") != std::string::npos);
}

TEST_SUITE_END();
