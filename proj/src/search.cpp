#include "qwalk/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qwalk/kernels.hpp"
#include "qwalk/symmetry.hpp"
#include "qwalk/walks.hpp"

namespace qwalk::search {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

StateVector SearchInstance::initial_state() const { return uniform_state(dim()); }

StateVector SearchInstance::marked_coin_uniform() const {
  StateVector psi(dim());
  const double a = 1.0 / std::sqrt(static_cast<double>(graph.degree));
  for (std::size_t i = 0; i < graph.degree; ++i) {
    psi[graphs::flat_index(i, marked, num_vertices)] = Complex{a, 0.0};
  }
  return psi;
}

SearchInstance setup(std::size_t side, graphs::VertexId marked, graphs::PairingMode mode) {
  SearchInstance inst;
  inst.side = side;
  inst.num_vertices = side * side;
  inst.marked = marked;
  inst.mode = mode;
  if (marked >= inst.num_vertices) {
    throw std::invalid_argument("setup: marked vertex out of range");
  }
  inst.graph = graphs::build_torus(side, mode);
  inst.shift = operators::build_shift(inst.graph);
  inst.coin_flip =
      operators::build_coin_flip(inst.graph, operators::CoinSpec::grover().with_marked(marked));
  inst.hamiltonian = operators::build_hamiltonian(inst.shift, inst.coin_flip,
                                                  operators::HamiltonianForm::s_minus_f);
  return inst;
}

Claim1Report claim1_check(const SearchInstance& inst) {
  const StateVector psi0 = inst.initial_state();
  const StateVector image = linalg::matvec(inst.hamiltonian, psi0);
  const StateVector target = inst.marked_coin_uniform();

  Claim1Report report;
  report.expected_coefficient = 2.0 / std::sqrt(static_cast<double>(inst.num_vertices));
  report.coefficient = inner(target, image).real();
  double acc = 0.0;
  for (std::size_t l = 0; l < image.size(); ++l) {
    acc += std::norm(image[l] - report.expected_coefficient * target[l]);
  }
  report.residual = std::sqrt(acc);
  return report;
}

namespace {

struct ClusteredSpectrum {
  std::vector<double> values;          // cluster representative eigenvalues
  std::vector<double> uniform_proj;    // ||P_cluster |S_c,S_v>||
  std::vector<double> marked_proj;     // ||P_cluster |S_c,x>||
};

/// Groups eigenvalues into near-degenerate clusters; projections are then
/// independent of the eigenvector basis inside a cluster.
ClusteredSpectrum cluster_projections(const linalg::SpectralData& sd,
                                      const StateVector& uniform, const StateVector& marked) {
  const double cluster_tol = 1e-9;
  ClusteredSpectrum out;
  std::size_t begin = 0;
  while (begin < sd.dim) {
    std::size_t end = begin + 1;
    while (end < sd.dim && sd.eigenvalues[end] - sd.eigenvalues[end - 1] <= cluster_tol) {
      ++end;
    }
    double u2 = 0.0;
    double m2 = 0.0;
    for (std::size_t j = begin; j < end; ++j) {
      const Complex cu = kernels::dot(sd.column(j), uniform.data(), sd.dim);
      const Complex cm = kernels::dot(sd.column(j), marked.data(), sd.dim);
      u2 += std::norm(cu);
      m2 += std::norm(cm);
    }
    out.values.push_back(sd.eigenvalues[begin]);
    out.uniform_proj.push_back(std::sqrt(u2));
    out.marked_proj.push_back(std::sqrt(m2));
    begin = end;
  }
  return out;
}

AlphaData alpha_from_clusters(const ClusteredSpectrum& spectrum, double overlap_threshold) {
  AlphaData data;
  data.overlap_threshold = overlap_threshold;

  std::ptrdiff_t plus = -1;
  for (std::size_t k = 0; k < spectrum.values.size(); ++k) {
    if (spectrum.values[k] > 1e-9 && spectrum.uniform_proj[k] > overlap_threshold) {
      plus = static_cast<std::ptrdiff_t>(k);
      break;
    }
  }
  if (plus < 0) {
    throw std::runtime_error(
        "extract_alpha: no positive eigenvalue passes the overlap threshold");
  }
  data.theta_alpha = spectrum.values[plus];
  data.alpha = 2.0 * std::asin(std::min(1.0, data.theta_alpha / 2.0));
  data.overlap_uniform_plus = spectrum.uniform_proj[plus];
  data.overlap_marked_plus = spectrum.marked_proj[plus];

  // partner cluster nearest -theta_alpha that also passes the threshold
  std::ptrdiff_t minus = -1;
  double best = 0.0;
  for (std::size_t k = 0; k < spectrum.values.size(); ++k) {
    if (spectrum.values[k] < -1e-9 && spectrum.uniform_proj[k] > overlap_threshold) {
      const double dist = std::abs(spectrum.values[k] + data.theta_alpha);
      if (minus < 0 || dist < best) {
        minus = static_cast<std::ptrdiff_t>(k);
        best = dist;
      }
    }
  }
  if (minus >= 0) {
    data.overlap_uniform_minus = spectrum.uniform_proj[minus];
    data.overlap_marked_minus = spectrum.marked_proj[minus];
  }

  for (std::size_t k = 0; k < spectrum.values.size(); ++k) {
    if (spectrum.values[k] > 1e-9 && spectrum.values[k] <= 2.0 * data.theta_alpha + 1e-9 &&
        spectrum.uniform_proj[k] > overlap_threshold) {
      ++data.candidates;
    }
  }
  data.ambiguous = data.candidates > 1 || minus < 0;
  return data;
}

/// D4 stabilizer of the marked vertex on the flip-flop torus: quarter turn and
/// axis reflection about the marked vertex, coins permuted accordingly.
std::vector<symmetry::Permutation> marked_stabilizer_generators(const SearchInstance& inst) {
  const std::size_t side = inst.side;
  const std::size_t n = inst.num_vertices;
  const std::size_t mx = inst.marked % side;
  const std::size_t my = inst.marked / side;

  const auto vertex_at = [side](std::size_t x, std::size_t y) { return y * side + x; };

  std::vector<std::size_t> rot_vertex(n);
  std::vector<std::size_t> ref_vertex(n);
  for (std::size_t y = 0; y < side; ++y) {
    for (std::size_t x = 0; x < side; ++x) {
      const std::size_t a = (x + side - mx) % side;
      const std::size_t b = (y + side - my) % side;
      // (a, b) -> (-b, a)
      rot_vertex[vertex_at(x, y)] = vertex_at((mx + side - b) % side, (my + a) % side);
      // (a, b) -> (-a, b)
      ref_vertex[vertex_at(x, y)] = vertex_at((mx + side - a) % side, y);
    }
  }
  // coins {0,1,2,3} = {+x,-x,+y,-y}
  const std::vector<std::size_t> rot_coin = {2, 3, 1, 0};
  const std::vector<std::size_t> ref_coin = {1, 0, 2, 3};
  return {symmetry::lift_label_permutation(rot_vertex, rot_coin, n),
          symmetry::lift_label_permutation(ref_vertex, ref_coin, n)};
}

}  // namespace

AlphaData extract_alpha(const SearchInstance& inst, double overlap_threshold,
                        AlphaMethod method, std::size_t dense_cap) {
  const StateVector uniform = inst.initial_state();
  const StateVector marked = inst.marked_coin_uniform();

  if (method == AlphaMethod::symmetry_reduced &&
      inst.mode == graphs::PairingMode::flip_flop) {
    const std::vector<symmetry::Permutation> gens = marked_stabilizer_generators(inst);
    bool commutes = true;
    for (const auto& g : gens) {
      if (!symmetry::check_symmetry(g, inst.shift, inst.coin_flip).passed()) {
        commutes = false;
        break;
      }
    }
    if (commutes) {
      const symmetry::OrbitBasis basis =
          symmetry::build_orbit_basis(gens, inst.dim(), inst.num_vertices);
      SparseOperator h_red = symmetry::reduce_operator(inst.hamiltonian, basis).to_sparse();
      h_red.tags.hermitian = true;
      verify_tags(h_red, 1e-10);

      linalg::EighOptions opts;
      opts.dense_cap = std::max(dense_cap, h_red.dim);
      const linalg::SpectralData sd = linalg::eigh_dense(h_red, opts);

      StateVector u_red(basis.size());
      StateVector m_red(basis.size());
      {
        const std::vector<Complex> cu = basis.project(uniform);
        const std::vector<Complex> cm = basis.project(marked);
        std::copy(cu.begin(), cu.end(), u_red.amp.begin());
        std::copy(cm.begin(), cm.end(), m_red.amp.begin());
      }
      AlphaData data =
          alpha_from_clusters(cluster_projections(sd, u_red, m_red), overlap_threshold);
      data.method = AlphaMethod::symmetry_reduced;
      return data;
    }
  }

  linalg::EighOptions opts;
  opts.dense_cap = dense_cap;
  const linalg::SpectralData sd = linalg::eigh_dense(inst.hamiltonian, opts);
  AlphaData data =
      alpha_from_clusters(cluster_projections(sd, uniform, marked), overlap_threshold);
  data.method = AlphaMethod::full_dense;
  return data;
}

namespace {

double marked_coin_asymmetry(const StateVector& psi, const SearchInstance& inst) {
  double worst = 0.0;
  for (std::size_t i = 0; i < inst.graph.degree; ++i) {
    for (std::size_t j = i + 1; j < inst.graph.degree; ++j) {
      const Complex a = psi[graphs::flat_index(i, inst.marked, inst.num_vertices)];
      const Complex b = psi[graphs::flat_index(j, inst.marked, inst.num_vertices)];
      worst = std::max(worst, std::abs(a - b));
    }
  }
  return worst;
}

}  // namespace

SearchAnalysis run_ctqw_search(const SearchInstance& inst, SearchOptions opts) {
  SearchAnalysis analysis;
  analysis.alpha = extract_alpha(inst, opts.overlap_threshold, opts.alpha_method);

  const double theta = analysis.alpha.theta_alpha;
  analysis.t_max = opts.t_max > 0.0 ? opts.t_max : 1.25 * kPi / (2.0 * theta);
  analysis.dt =
      opts.dt > 0.0 ? opts.dt : 0.01 * std::sqrt(static_cast<double>(inst.num_vertices));
  if (!(analysis.dt > 0.0) || analysis.t_max < analysis.dt) {
    throw std::invalid_argument("run_ctqw_search: empty time grid");
  }

  linalg::ExpmOptions eopts;
  eopts.backend = opts.backend;
  const linalg::Propagator prop(inst.hamiltonian, eopts);

  const auto samples = static_cast<std::size_t>(std::floor(analysis.t_max / analysis.dt)) + 1;
  const double step_tol = opts.tol / static_cast<double>(samples);

  StateVector psi = inst.initial_state();
  analysis.curve.reserve(samples);
  std::size_t best_index = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) * analysis.dt;
    if (k > 0) {
      psi = prop.apply(psi, analysis.dt, step_tol);
    }
    const double p = walks::vertex_probability(psi, inst.marked, inst.num_vertices);
    analysis.curve.push_back({t, p});
    analysis.max_coin_asymmetry =
        std::max(analysis.max_coin_asymmetry, marked_coin_asymmetry(psi, inst));
    if (p > analysis.curve[best_index].second) {
      best_index = k;
    }
  }
  analysis.coin_symmetry_ok = analysis.max_coin_asymmetry <= opts.coin_symmetry_tol;

  // golden-section refinement on the bracket around the best sample
  const StateVector psi0 = inst.initial_state();
  const auto probability_at = [&](double t) {
    const StateVector state = prop.apply(psi0, t, 0.1 * opts.tol);
    return walks::vertex_probability(state, inst.marked, inst.num_vertices);
  };
  double lo = best_index > 0 ? analysis.curve[best_index - 1].first
                             : analysis.curve[best_index].first;
  double hi = best_index + 1 < analysis.curve.size() ? analysis.curve[best_index + 1].first
                                                     : analysis.curve[best_index].first;
  analysis.t_peak = analysis.curve[best_index].first;
  analysis.p_peak = analysis.curve[best_index].second;
  if (hi > lo) {
    const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_golden * (hi - lo);
    double x2 = lo + inv_golden * (hi - lo);
    double f1 = probability_at(x1);
    double f2 = probability_at(x2);
    for (int iter = 0; iter < 60 && hi - lo > 1e-10 * std::max(1.0, hi); ++iter) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_golden * (hi - lo);
        f2 = probability_at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_golden * (hi - lo);
        f1 = probability_at(x1);
      }
      const double x_best = f1 > f2 ? x1 : x2;
      const double f_best = std::max(f1, f2);
      if (f_best > analysis.p_peak) {
        analysis.p_peak = f_best;
        analysis.t_peak = x_best;
      }
    }
  }
  return analysis;
}

std::vector<ScanRow> scaling_scan(const std::vector<std::size_t>& sides,
                                  graphs::PairingMode mode, ScanOptions opts) {
  std::vector<ScanRow> rows(sides.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(sides.size()); ++idx) {
    ScanRow& row = rows[idx];
    row.side = sides[idx];
    try {
      const SearchInstance inst = setup(sides[idx], 0, mode);
      row.num_vertices = inst.num_vertices;
      SearchOptions sopts;
      sopts.tol = opts.tol;
      sopts.backend = opts.backend;
      sopts.overlap_threshold = opts.overlap_threshold;
      sopts.alpha_method = opts.alpha_method;
      const SearchAnalysis analysis = run_ctqw_search(inst, sopts);
      const double n = static_cast<double>(inst.num_vertices);
      row.theta_alpha = analysis.alpha.theta_alpha;
      row.alpha = analysis.alpha.alpha;
      row.t_peak = analysis.t_peak;
      row.p_peak = analysis.p_peak;
      row.t_over_sqrt_n = analysis.t_peak / std::sqrt(n);
      row.p_times_log_n = analysis.p_peak * std::log(n);
      row.cost = analysis.t_peak / analysis.p_peak;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
      if (row.num_vertices == 0) {
        row.num_vertices = sides[idx] * sides[idx];
      }
    }
  }
  return rows;
}

DtqwSearchResult run_dtqw_search(const SearchInstance& inst, std::size_t max_steps) {
  if (max_steps == 0) {
    const double n = static_cast<double>(inst.num_vertices);
    max_steps = static_cast<std::size_t>(std::ceil(4.0 * std::sqrt(n * std::log(n))));
  }
  DtqwSearchResult result;
  result.curve.reserve(max_steps + 1);
  StateVector psi = inst.initial_state();
  result.curve.push_back(walks::vertex_probability(psi, inst.marked, inst.num_vertices));
  result.step_peak = 0;
  result.p_peak = result.curve[0];
  for (std::size_t k = 1; k <= max_steps; ++k) {
    psi = walks::dtqw_step(inst.shift, inst.coin_flip, psi);
    const double p = walks::vertex_probability(psi, inst.marked, inst.num_vertices);
    result.curve.push_back(p);
    if (p > result.p_peak) {
      result.p_peak = p;
      result.step_peak = k;
    }
  }
  return result;
}

double claim2_max_residual(const SearchInstance& inst, std::size_t dense_cap) {
  const SparseOperator sf = sparse_multiply(inst.shift, inst.coin_flip);
  const linalg::UnitaryEig eig = linalg::eig_unitary(sf, dense_cap);
  const StateVector uniform = inst.initial_state();
  const StateVector marked = inst.marked_coin_uniform();
  const double sqrt_n = std::sqrt(static_cast<double>(inst.num_vertices));

  double worst = 0.0;
  for (std::size_t j = 0; j < eig.dim; ++j) {
    const double phi = eig.phases[j];
    if (std::abs(phi) < 1e-8 || std::abs(std::sin(phi / 2.0)) < 1e-8) {
      continue;
    }
    const Complex ju = kernels::dot(eig.column(j), uniform.data(), eig.dim);
    const Complex jm = kernels::dot(eig.column(j), marked.data(), eig.dim);
    const Complex factor =
        Complex{0.0, 1.0} * std::exp(Complex{0.0, phi / 2.0}) / (sqrt_n * std::sin(phi / 2.0));
    worst = std::max(worst, std::abs(ju + factor * jm));
  }
  return worst;
}

}  // namespace qwalk::search
