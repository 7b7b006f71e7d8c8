#include "qwalk/cli.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "qwalk/graphs.hpp"
#include "qwalk/io.hpp"
#include "qwalk/linalg.hpp"
#include "qwalk/operators.hpp"
#include "qwalk/search.hpp"
#include "qwalk/symmetry.hpp"
#include "qwalk/walks.hpp"

namespace qwalk::cli {

namespace {

using json = nlohmann::json;

struct GraphTag {
  std::string family;
  std::size_t param = 0;
};

GraphTag parse_graph_tag(const std::string& tag) {
  const auto colon = tag.find(':');
  if (colon == std::string::npos || colon + 1 >= tag.size()) {
    throw std::invalid_argument("graph tag must look like cycle:8, torus:4 or hypercube:3 (got '" +
                                tag + "')");
  }
  GraphTag parsed;
  parsed.family = tag.substr(0, colon);
  try {
    parsed.param = std::stoul(tag.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("graph tag has a non-numeric size: '" + tag + "'");
  }
  if (parsed.family != "cycle" && parsed.family != "torus" && parsed.family != "hypercube") {
    throw std::invalid_argument("unknown graph family '" + parsed.family +
                                "' (supported: cycle, torus, hypercube)");
  }
  return parsed;
}

graphs::ColoredGraph build_graph(const GraphTag& tag, graphs::PairingMode mode) {
  if (tag.family == "cycle") {
    return graphs::build_cycle(tag.param);
  }
  if (tag.family == "torus") {
    return graphs::build_torus(tag.param, mode);
  }
  return graphs::build_hypercube(tag.param);
}

operators::CoinSpec parse_coin(const std::string& tag) {
  if (tag == "grover") {
    return operators::CoinSpec::grover();
  }
  if (tag == "hadamard") {
    return operators::CoinSpec::hadamard();
  }
  throw std::invalid_argument("unknown coin '" + tag +
                              "' (supported: grover, hadamard; non-Hermitian coins such as the "
                              "DFT are unsupported)");
}

graphs::PairingMode parse_pairing(const std::string& tag) {
  if (tag == "flip_flop") {
    return graphs::PairingMode::flip_flop;
  }
  if (tag == "edge_colored") {
    return graphs::PairingMode::edge_colored;
  }
  throw std::invalid_argument("unknown pairing mode '" + tag +
                              "' (supported: flip_flop, edge_colored)");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

std::size_t parse_index(const std::string& text, const char* what) {
  try {
    return std::stoul(text);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + ": expected an integer, got '" + text + "'");
  }
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& item : split(text, ',')) {
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("expected a comma-separated integer list, got '" + text + "'");
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("empty integer list");
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("expected a comma-separated number list, got '" + text + "'");
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("empty number list");
  }
  return out;
}

std::vector<std::string> header_lines(const std::string& command, const json& config) {
  return {std::string(kVersion), "command: " + command, "config: " + config.dump(),
          "tolerances: operator_construction=1e-12 spectral_residual=1e-10"};
}

std::string sanitize_csv_field(std::string text) {
  for (auto& c : text) {
    if (c == ',' || c == '\n') {
      c = ';';
    }
  }
  return text;
}

json coordinate_json(const SparseOperator& a) {
  json entries = json::array();
  for (std::size_t r = 0; r < a.dim; ++r) {
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      entries.push_back({r, a.col[k], a.val[k].real(), a.val[k].imag()});
    }
  }
  return entries;
}

// ---------------------------------------------------------------- search-scan

struct SearchScanParams {
  std::string sides = "8,16,32";
  std::string pairing = "flip_flop";
  std::string alpha_method = "sector";
  std::string out;
  double tol = 1e-10;
  double threshold = 0.1;
};

int cmd_search_scan(const SearchScanParams& params) {
  const std::vector<std::size_t> sides = parse_size_list(params.sides);
  const graphs::PairingMode mode = parse_pairing(params.pairing);
  for (const std::size_t side : sides) {
    graphs::build_torus(side, mode);  // surfaces the evenness requirement as a config error
  }
  if (params.alpha_method != "sector" && params.alpha_method != "dense") {
    throw std::invalid_argument("unknown alpha method '" + params.alpha_method +
                                "' (supported: sector, dense)");
  }

  search::ScanOptions opts;
  opts.tol = params.tol;
  opts.overlap_threshold = params.threshold;
  opts.alpha_method = params.alpha_method == "sector" ? search::AlphaMethod::symmetry_reduced
                                                      : search::AlphaMethod::full_dense;
  const std::vector<search::ScanRow> rows = search::scaling_scan(sides, mode, opts);

  json config;
  config["sides"] = sides;
  config["pairing"] = params.pairing;
  config["tol"] = params.tol;
  config["overlap_threshold"] = params.threshold;
  config["alpha_method"] = params.alpha_method;

  std::ostringstream body;
  body << io::csv_header(header_lines("search-scan", config),
                         {"side", "N", "theta_alpha", "alpha", "t_peak", "p_peak",
                          "t_over_sqrtN", "p_times_logN", "cost", "status"});
  bool any_failed = false;
  for (const auto& row : rows) {
    body << row.side << "," << row.num_vertices << "," << io::format_g17(row.theta_alpha)
         << "," << io::format_g17(row.alpha) << "," << io::format_g17(row.t_peak) << ","
         << io::format_g17(row.p_peak) << "," << io::format_g17(row.t_over_sqrt_n) << ","
         << io::format_g17(row.p_times_log_n) << "," << io::format_g17(row.cost) << ","
         << (row.ok ? "ok" : "error: " + sanitize_csv_field(row.error)) << "\n";
    any_failed = any_failed || !row.ok;
  }
  io::write_text_atomic(params.out, body.str());
  if (any_failed) {
    std::cerr << "search-scan: one or more rows failed; see the status column\n";
    return kExitPartial;
  }
  return kExitOk;
}

// ----------------------------------------------------------------- search-run

struct SearchRunParams {
  std::size_t side = 16;
  std::size_t marked = 0;
  std::string pairing = "flip_flop";
  std::string out;
  double t_max = 0.0;
  double dt = 0.0;
  double tol = 1e-10;
};

int cmd_search_run(const SearchRunParams& params) {
  const graphs::PairingMode mode = parse_pairing(params.pairing);
  const search::SearchInstance inst = search::setup(params.side, params.marked, mode);
  search::SearchOptions opts;
  opts.t_max = params.t_max;
  opts.dt = params.dt;
  opts.tol = params.tol;
  const search::SearchAnalysis analysis = search::run_ctqw_search(inst, opts);

  json config;
  config["side"] = params.side;
  config["marked"] = params.marked;
  config["pairing"] = params.pairing;
  config["t_max"] = analysis.t_max;
  config["dt"] = analysis.dt;
  config["tol"] = params.tol;

  auto lines = header_lines("search-run", config);
  lines.push_back("theta_alpha: " + io::format_g17(analysis.alpha.theta_alpha));
  lines.push_back("alpha: " + io::format_g17(analysis.alpha.alpha));
  lines.push_back("t_peak: " + io::format_g17(analysis.t_peak));
  lines.push_back("p_peak: " + io::format_g17(analysis.p_peak));
  lines.push_back("overlap_uniform_plus: " + io::format_g17(analysis.alpha.overlap_uniform_plus));
  lines.push_back("overlap_uniform_minus: " +
                  io::format_g17(analysis.alpha.overlap_uniform_minus));
  lines.push_back("max_coin_asymmetry: " + io::format_g17(analysis.max_coin_asymmetry));

  std::ostringstream body;
  body << io::csv_header(lines, {"t", "p_marked"});
  for (const auto& [t, p] : analysis.curve) {
    body << io::format_g17(t) << "," << io::format_g17(p) << "\n";
  }
  io::write_text_atomic(params.out, body.str());
  if (!analysis.coin_symmetry_ok) {
    std::cerr << "search-run: coin-amplitude symmetry check failed (max asymmetry "
              << analysis.max_coin_asymmetry << ")\n";
    return kExitPartial;
  }
  return kExitOk;
}

// --------------------------------------------------------------------- evolve

struct EvolveParams {
  std::string graph;
  std::string coin = "grover";
  std::string pairing = "flip_flop";
  std::string mode = "ctqw-limit";
  std::string initial = "uniform";
  std::string out;
  std::optional<std::size_t> marked;
  double time = 1.0;
  std::size_t steps = 1;
  double s = 0.5;
  double tol = 1e-10;
};

int cmd_evolve(const EvolveParams& params) {
  const graphs::ColoredGraph g =
      build_graph(parse_graph_tag(params.graph), parse_pairing(params.pairing));
  operators::CoinSpec coin = parse_coin(params.coin);
  if (params.marked) {
    coin = coin.with_marked(*params.marked);
    if (*params.marked >= g.num_vertices) {
      throw std::invalid_argument("marked vertex out of range");
    }
  }
  const SparseOperator shift = operators::build_shift(g);
  const SparseOperator flip = operators::build_coin_flip(g, coin);

  StateVector psi;
  if (params.initial == "uniform") {
    psi = uniform_state(g.dim());
  } else if (params.initial.rfind("basis:", 0) == 0) {
    const auto parts = split(params.initial.substr(6), ',');
    if (parts.size() != 2) {
      throw std::invalid_argument("initial state must be 'uniform' or 'basis:<coin>,<vertex>'");
    }
    const std::size_t c = parse_index(parts[0], "initial coin");
    const std::size_t v = parse_index(parts[1], "initial vertex");
    if (c >= g.degree || v >= g.num_vertices) {
      throw std::invalid_argument("initial basis label out of range");
    }
    psi = basis_state(g.dim(), graphs::flat_index(c, v, g.num_vertices));
  } else {
    throw std::invalid_argument("initial state must be 'uniform' or 'basis:<coin>,<vertex>'");
  }

  if (params.mode == "ctqw-limit" || params.mode == "ctqw-search") {
    const auto form = params.mode == "ctqw-limit" ? operators::HamiltonianForm::s_plus_f_minus_2i
                                                  : operators::HamiltonianForm::s_minus_f;
    const SparseOperator h = operators::build_hamiltonian(shift, flip, form);
    psi = linalg::expm_apply(h, params.time, psi, params.tol);
  } else if (params.mode == "dtqw") {
    for (std::size_t k = 0; k < params.steps; ++k) {
      psi = walks::dtqw_step(shift, flip, psi);
    }
  } else if (params.mode == "family") {
    for (std::size_t k = 0; k < params.steps; ++k) {
      psi = walks::family_step(params.s, shift, flip, psi);
    }
  } else {
    throw std::invalid_argument("unknown mode '" + params.mode +
                                "' (supported: ctqw-limit, ctqw-search, dtqw, family)");
  }

  json config;
  config["graph"] = params.graph;
  config["coin"] = params.coin;
  config["pairing"] = params.pairing;
  config["mode"] = params.mode;
  config["initial"] = params.initial;
  if (params.marked) config["marked"] = *params.marked;
  if (params.mode == "ctqw-limit" || params.mode == "ctqw-search") {
    config["time"] = params.time;
    config["tol"] = params.tol;
  } else {
    config["steps"] = params.steps;
    if (params.mode == "family") config["s"] = params.s;
  }

  auto lines = header_lines("evolve", config);
  lines.push_back("norm: " + io::format_g17(psi.norm()));
  std::ostringstream body;
  body << io::csv_header(lines, {"vertex", "probability"});
  const std::vector<double> probs = walks::vertex_probabilities(psi, g.num_vertices);
  for (std::size_t v = 0; v < probs.size(); ++v) {
    body << v << "," << io::format_g17(probs[v]) << "\n";
  }
  io::write_text_atomic(params.out, body.str());
  return kExitOk;
}

// ---------------------------------------------------------------- limit-check

struct LimitCheckParams {
  std::string graph;
  std::string coin = "hadamard";
  std::string pairing = "flip_flop";
  std::string s_values = "0.1,0.05,0.025";
  std::string initial = "basis:0,0";
  std::string out;
  double tau = 2.0;
};

int cmd_limit_check(const LimitCheckParams& params) {
  const graphs::ColoredGraph g =
      build_graph(parse_graph_tag(params.graph), parse_pairing(params.pairing));
  const operators::CoinSpec coin = parse_coin(params.coin);
  const SparseOperator shift = operators::build_shift(g);
  const SparseOperator flip = operators::build_coin_flip(g, coin);
  const std::vector<double> s_values = parse_double_list(params.s_values);

  StateVector psi0;
  if (params.initial == "uniform") {
    psi0 = uniform_state(g.dim());
  } else if (params.initial.rfind("basis:", 0) == 0) {
    const auto parts = split(params.initial.substr(6), ',');
    if (parts.size() != 2) {
      throw std::invalid_argument("initial state must be 'uniform' or 'basis:<coin>,<vertex>'");
    }
    const std::size_t c = parse_index(parts[0], "initial coin");
    const std::size_t v = parse_index(parts[1], "initial vertex");
    if (c >= g.degree || v >= g.num_vertices) {
      throw std::invalid_argument("initial basis label out of range");
    }
    psi0 = basis_state(g.dim(), graphs::flat_index(c, v, g.num_vertices));
  } else {
    throw std::invalid_argument("initial state must be 'uniform' or 'basis:<coin>,<vertex>'");
  }

  const std::vector<walks::ConvergenceRow> rows =
      walks::convergence_scan(shift, flip, psi0, params.tau, s_values);

  json config;
  config["graph"] = params.graph;
  config["coin"] = params.coin;
  config["pairing"] = params.pairing;
  config["tau"] = params.tau;
  config["s"] = s_values;
  config["initial"] = params.initial;

  auto lines = header_lines("limit-check", config);
  lines.push_back("time scaling: t = (pi/2) * s * n");
  std::ostringstream body;
  body << io::csv_header(lines, {"s", "n", "t", "error"});
  for (const auto& row : rows) {
    body << io::format_g17(row.s) << "," << row.steps << "," << io::format_g17(row.t) << ","
         << io::format_g17(row.error) << "\n";
  }
  io::write_text_atomic(params.out, body.str());
  return kExitOk;
}

// ------------------------------------------------------------------- spectrum

struct SpectrumParams {
  std::string graph;
  std::string coin = "grover";
  std::string pairing = "flip_flop";
  std::string form = "s_minus_f";
  std::string out;
  std::string dump_operator;
  std::optional<std::size_t> marked;
};

int cmd_spectrum(const SpectrumParams& params) {
  const graphs::ColoredGraph g =
      build_graph(parse_graph_tag(params.graph), parse_pairing(params.pairing));
  operators::CoinSpec coin = parse_coin(params.coin);
  if (params.marked) {
    coin = coin.with_marked(*params.marked);
  }
  operators::HamiltonianForm form;
  if (params.form == "s_minus_f") {
    form = operators::HamiltonianForm::s_minus_f;
  } else if (params.form == "s_plus_f_minus_2i") {
    form = operators::HamiltonianForm::s_plus_f_minus_2i;
  } else {
    throw std::invalid_argument("unknown form '" + params.form +
                                "' (supported: s_minus_f, s_plus_f_minus_2i)");
  }

  const SparseOperator shift = operators::build_shift(g);
  const SparseOperator flip = operators::build_coin_flip(g, coin);
  const SparseOperator h = operators::build_hamiltonian(shift, flip, form);
  if (!params.dump_operator.empty()) {
    io::write_text_atomic(params.dump_operator, operators::to_coordinate_text(h));
  }
  const linalg::SpectralData sd = linalg::eigh_dense(h);
  const StateVector uniform = uniform_state(g.dim());

  json config;
  config["graph"] = params.graph;
  config["coin"] = params.coin;
  config["pairing"] = params.pairing;
  config["form"] = params.form;
  if (params.marked) config["marked"] = *params.marked;

  auto lines = header_lines("spectrum", config);
  lines.push_back("phi: 2*asin(lambda/2), the SF eigenphase mapping for the s_minus_f form");
  std::ostringstream body;
  body << io::csv_header(lines, {"index", "lambda", "phi", "overlap_uniform"});
  for (std::size_t j = 0; j < sd.dim; ++j) {
    const double lam = sd.eigenvalues[j];
    const double phi = linalg::phase_for_eigenvalue(lam);
    Complex overlap{0.0, 0.0};
    for (std::size_t i = 0; i < sd.dim; ++i) {
      overlap += std::conj(sd.column(j)[i]) * uniform[i];
    }
    body << j << "," << io::format_g17(lam) << "," << io::format_g17(phi) << ","
         << io::format_g17(std::abs(overlap)) << "\n";
  }
  io::write_text_atomic(params.out, body.str());
  return kExitOk;
}

// ------------------------------------------------------------------- quotient

struct QuotientParams {
  std::string graph;
  std::string coin = "grover";
  std::string pairing = "flip_flop";
  std::string group = "trivial";
  std::string t_values = "0.5,1,2";
  std::string s_values = "0.25,1.0";
  std::string out;
  std::size_t marked_center = 0;
  std::optional<std::size_t> marked;
};

std::vector<symmetry::Permutation> resolve_group(const std::string& tag,
                                                 const graphs::ColoredGraph& g,
                                                 std::size_t center) {
  const std::size_t n = g.num_vertices;
  if (tag == "trivial") {
    return {};
  }
  if (tag == "bit-perms") {
    if (g.name.rfind("hypercube:", 0) != 0) {
      throw std::invalid_argument("group 'bit-perms' requires a hypercube graph");
    }
    std::vector<symmetry::Permutation> gens;
    for (std::size_t i = 0; i + 1 < g.degree; ++i) {
      std::vector<std::size_t> vertex_map(n);
      for (std::size_t v = 0; v < n; ++v) {
        const std::size_t bi = (v >> i) & 1;
        const std::size_t bj = (v >> (i + 1)) & 1;
        std::size_t w = v & ~((std::size_t{1} << i) | (std::size_t{1} << (i + 1)));
        w |= bj << i;
        w |= bi << (i + 1);
        vertex_map[v] = w;
      }
      std::vector<std::size_t> coin_map(g.degree);
      for (std::size_t c = 0; c < g.degree; ++c) {
        coin_map[c] = c;
      }
      std::swap(coin_map[i], coin_map[i + 1]);
      gens.push_back(symmetry::lift_label_permutation(vertex_map, coin_map, n));
    }
    return gens;
  }
  if (tag == "reflection") {
    if (g.name.rfind("cycle:", 0) != 0) {
      throw std::invalid_argument("group 'reflection' requires a cycle graph");
    }
    std::vector<std::size_t> vertex_map(n);
    for (std::size_t v = 0; v < n; ++v) {
      vertex_map[v] = (n - v) % n;
    }
    return {symmetry::lift_label_permutation(vertex_map, {1, 0}, n)};
  }
  if (tag == "rotation4") {
    if (g.name.rfind("torus:", 0) != 0) {
      throw std::invalid_argument("group 'rotation4' requires a torus graph");
    }
    if (g.mode != graphs::PairingMode::flip_flop) {
      throw std::invalid_argument("group 'rotation4' requires the flip_flop pairing");
    }
    const auto side = static_cast<std::size_t>(std::llround(
        std::sqrt(static_cast<double>(n))));
    const std::size_t cx = center % side;
    const std::size_t cy = center / side;
    std::vector<std::size_t> vertex_map(n);
    for (std::size_t y = 0; y < side; ++y) {
      for (std::size_t x = 0; x < side; ++x) {
        const std::size_t a = (x + side - cx) % side;
        const std::size_t b = (y + side - cy) % side;
        vertex_map[y * side + x] = ((cy + a) % side) * side + (cx + side - b) % side;
      }
    }
    return {symmetry::lift_label_permutation(vertex_map, {2, 3, 1, 0}, n)};
  }
  throw std::invalid_argument("unknown group '" + tag +
                              "' (supported: trivial, bit-perms, reflection, rotation4)");
}

int cmd_quotient(const QuotientParams& params) {
  const graphs::ColoredGraph g =
      build_graph(parse_graph_tag(params.graph), parse_pairing(params.pairing));
  operators::CoinSpec coin = parse_coin(params.coin);
  if (params.marked) {
    coin = coin.with_marked(*params.marked);
  }
  const SparseOperator shift = operators::build_shift(g);
  const SparseOperator flip = operators::build_coin_flip(g, coin);

  const std::vector<symmetry::Permutation> gens =
      resolve_group(params.group, g, params.marked ? *params.marked : params.marked_center);

  for (std::size_t k = 0; k < gens.size(); ++k) {
    const symmetry::SymmetryReport report = symmetry::check_symmetry(gens[k], shift, flip);
    if (!report.passed()) {
      std::cerr << "quotient: generator " << k << " does not commute with the walk"
                << " (residuals: S " << report.shift_residual << ", F " << report.coin_residual
                << ", SF " << report.step_residual << ")\n";
      return kExitPrecondition;
    }
  }

  const symmetry::OrbitBasis basis = symmetry::build_orbit_basis(gens, g.dim(), g.num_vertices);
  const symmetry::ReducedOperator s_red = symmetry::reduce_operator(shift, basis);
  const symmetry::ReducedOperator f_red = symmetry::reduce_operator(flip, basis);
  const SparseOperator h_full = operators::build_hamiltonian(
      shift, flip, operators::HamiltonianForm::s_plus_f_minus_2i);
  const symmetry::ReducedOperator h_red = symmetry::reduce_operator(h_full, basis);
  const graphs::CoinedGraph quotient = symmetry::quotient_graph(basis, h_red);

  const symmetry::EquivalenceReport equivalence = symmetry::reduction_equivalence_check(
      shift, flip, basis, uniform_state(g.dim()), parse_double_list(params.t_values),
      parse_double_list(params.s_values));

  json out;
  out["version"] = kVersion;
  out["command"] = "quotient";
  out["tolerances"] = {{"equivalence", 1e-9}, {"span_leak", 1e-10}, {"edge_threshold", 1e-12}};
  {
    json config;
    config["graph"] = params.graph;
    config["coin"] = params.coin;
    config["pairing"] = params.pairing;
    config["group"] = params.group;
    config["t"] = parse_double_list(params.t_values);
    config["s"] = parse_double_list(params.s_values);
    if (params.marked) config["marked"] = *params.marked;
    out["config"] = config;
  }
  out["group"] = {{"tag", params.group}, {"generator_count", gens.size()}};
  if (gens.empty()) {
    out["group"]["order"] = 1;
  } else {
    try {
      out["group"]["order"] = symmetry::group_closure(gens).size();
    } catch (const std::runtime_error&) {
      out["group"]["order"] = nullptr;  // generated group exceeds the closure cap
    }
  }
  out["orbit_count"] = basis.size();
  out["orbits"] = basis.orbits;
  out["vertex_grouping"] = basis.vertex_grouping;
  out["reduced"] = {{"dim", basis.size()},
                    {"shift", coordinate_json(s_red.to_sparse(1e-14))},
                    {"coin_flip", coordinate_json(f_red.to_sparse(1e-14))},
                    {"hamiltonian", coordinate_json(h_red.to_sparse(1e-14))},
                    {"span_leak_shift", s_red.span_leak},
                    {"span_leak_coin", f_red.span_leak}};
  {
    json edges = json::array();
    for (const auto& [a, b] : quotient.edges) {
      edges.push_back({a, b});
    }
    out["quotient"] = {{"node_count", quotient.node_count},
                       {"edges", edges},
                       {"grouping", quotient.grouping}};
  }
  {
    json rows = json::array();
    for (const auto& row : equivalence.rows) {
      rows.push_back({{"kind", row.is_family ? "family" : "hamiltonian"},
                      {"parameter", row.parameter},
                      {"deviation", row.deviation}});
    }
    out["equivalence"] = {{"rows", rows}, {"max_deviation", equivalence.max_deviation}};
  }
  io::write_text_atomic(params.out, out.dump(2) + "\n");

  if (!equivalence.passed(1e-9)) {
    std::cerr << "quotient: full vs reduced evolution deviates by " << equivalence.max_deviation
              << " (tolerance 1e-9)\n";
    return kExitPartial;
  }
  return kExitOk;
}

// ------------------------------------------------------------- classical-demo

struct ClassicalParams {
  std::size_t states = 2;
  double tau = 1.0;
  std::string eps_values = "0.1,0.05,0.025";
  std::string out;
};

int cmd_classical_demo(const ClassicalParams& params) {
  const std::size_t n = params.states;
  if (n < 2) {
    throw std::invalid_argument("classical-demo needs at least 2 states");
  }
  // symmetric walk on the n-cycle
  std::vector<double> m(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    m[((j + 1) % n) * n + j] += 0.5;
    m[((j + n - 1) % n) * n + j] += 0.5;
  }
  std::vector<double> p0(n, 0.0);
  p0[0] = 1.0;

  const std::vector<walks::ClassicalLimitRow> rows =
      walks::classical_limit_demo(m, n, p0, params.tau, parse_double_list(params.eps_values));

  json config;
  config["states"] = n;
  config["tau"] = params.tau;
  config["eps"] = parse_double_list(params.eps_values);

  std::ostringstream body;
  body << io::csv_header(header_lines("classical-demo", config),
                         {"epsilon", "n", "tv_error"});
  for (const auto& row : rows) {
    body << io::format_g17(row.epsilon) << "," << row.steps << ","
         << io::format_g17(row.tv_error) << "\n";
  }
  io::write_text_atomic(params.out, body.str());
  return kExitOk;
}

// ------------------------------------------------------------------- validate

struct ValidateParams {
  std::string graph;
  std::string pairing = "flip_flop";
  std::string from_json;
  std::string out;
};

int cmd_validate(const ValidateParams& params) {
  graphs::ColoredGraph g;
  if (!params.from_json.empty()) {
    g = graphs::graph_from_json(io::read_text(params.from_json), /*validate_on_load=*/false);
  } else if (!params.graph.empty()) {
    g = build_graph(parse_graph_tag(params.graph), parse_pairing(params.pairing));
  } else {
    throw std::invalid_argument("validate needs --graph or --from-json");
  }

  const graphs::ValidationReport report = graphs::validate(g);
  if (!params.out.empty()) {
    json out;
    out["version"] = kVersion;
    out["command"] = "validate";
    out["graph"] = {{"name", g.name}, {"N", g.num_vertices}, {"d", g.degree}};
    out["violations"] = report.violations;
    out["ok"] = report.ok();
    io::write_text_atomic(params.out, out.dump(2) + "\n");
  }
  if (report.ok()) {
    std::cout << "valid: " << g.name << " (N=" << g.num_vertices << ", d=" << g.degree << ")\n";
    return kExitOk;
  }
  std::cerr << "invalid: " << g.name << "\n";
  for (const auto& v : report.violations) {
    std::cerr << "  " << v << "\n";
  }
  return kExitPrecondition;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("qwalk");
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  return run(static_cast<int>(argv.size()), argv.data());
}

int run(int argc, const char* const* argv) {
  CLI::App app{"coined quantum walks, their continuous-time limit, torus search, and "
               "quotient-graph reductions"};
  app.require_subcommand(1);

  SearchScanParams scan;
  auto* scan_cmd = app.add_subcommand("search-scan", "scaling scan of the CTQW torus search");
  scan_cmd->add_option("--sides", scan.sides, "comma-separated even sides");
  scan_cmd->add_option("--pairing", scan.pairing, "flip_flop or edge_colored");
  scan_cmd->add_option("--alpha-method", scan.alpha_method,
                       "theta_alpha extraction: sector or dense");
  scan_cmd->add_option("--tol", scan.tol, "propagation error budget per run");
  scan_cmd->add_option("--threshold", scan.threshold, "eigenvector overlap threshold");
  scan_cmd->add_option("--out", scan.out, "output CSV path")->required();

  SearchRunParams srun;
  auto* srun_cmd = app.add_subcommand("search-run", "single CTQW search run, p_x(t) curve");
  srun_cmd->add_option("--side", srun.side, "torus side (even)");
  srun_cmd->add_option("--marked", srun.marked, "marked vertex");
  srun_cmd->add_option("--pairing", srun.pairing, "flip_flop or edge_colored");
  srun_cmd->add_option("--t-max", srun.t_max, "scan end time (default: auto)");
  srun_cmd->add_option("--dt", srun.dt, "sample spacing (default: auto)");
  srun_cmd->add_option("--tol", srun.tol, "propagation error budget");
  srun_cmd->add_option("--out", srun.out, "output CSV path")->required();

  EvolveParams evolve;
  auto* evolve_cmd = app.add_subcommand("evolve", "evolve a state, write the final distribution");
  evolve_cmd->add_option("--graph", evolve.graph, "cycle:n, torus:side or hypercube:d")->required();
  evolve_cmd->add_option("--coin", evolve.coin, "grover or hadamard");
  evolve_cmd->add_option("--pairing", evolve.pairing, "flip_flop or edge_colored");
  evolve_cmd->add_option("--marked", evolve.marked, "marked vertex (C1 = -I)");
  evolve_cmd->add_option("--mode", evolve.mode, "ctqw-limit, ctqw-search, dtqw or family");
  evolve_cmd->add_option("--time", evolve.time, "evolution time (ctqw modes)");
  evolve_cmd->add_option("--steps", evolve.steps, "step count (dtqw/family modes)");
  evolve_cmd->add_option("--s", evolve.s, "family parameter in (0,1]");
  evolve_cmd->add_option("--initial", evolve.initial, "uniform or basis:<coin>,<vertex>");
  evolve_cmd->add_option("--tol", evolve.tol, "propagation error budget");
  evolve_cmd->add_option("--out", evolve.out, "output CSV path")->required();

  LimitCheckParams limit;
  auto* limit_cmd = app.add_subcommand("limit-check", "first-order continuous-limit convergence");
  limit_cmd->add_option("--graph", limit.graph, "cycle:n, torus:side or hypercube:d")->required();
  limit_cmd->add_option("--coin", limit.coin, "grover or hadamard");
  limit_cmd->add_option("--pairing", limit.pairing, "flip_flop or edge_colored");
  limit_cmd->add_option("--tau", limit.tau, "dimensionless horizon; n = round(tau/s)");
  limit_cmd->add_option("--s", limit.s_values, "comma-separated s values in (0,1]");
  limit_cmd->add_option("--initial", limit.initial, "uniform or basis:<coin>,<vertex>");
  limit_cmd->add_option("--out", limit.out, "output CSV path")->required();

  SpectrumParams spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "dense spectrum of a walk Hamiltonian");
  spectrum_cmd->add_option("--graph", spectrum.graph, "cycle:n, torus:side or hypercube:d")
      ->required();
  spectrum_cmd->add_option("--coin", spectrum.coin, "grover or hadamard");
  spectrum_cmd->add_option("--pairing", spectrum.pairing, "flip_flop or edge_colored");
  spectrum_cmd->add_option("--marked", spectrum.marked, "marked vertex (C1 = -I)");
  spectrum_cmd->add_option("--form", spectrum.form, "s_minus_f or s_plus_f_minus_2i");
  spectrum_cmd->add_option("--dump-operator", spectrum.dump_operator,
                           "also write the operator in coordinate text format");
  spectrum_cmd->add_option("--out", spectrum.out, "output CSV path")->required();

  QuotientParams quotient;
  auto* quotient_cmd = app.add_subcommand("quotient", "orbit basis, reduced operators, quotient graph");
  quotient_cmd->add_option("--graph", quotient.graph, "cycle:n, torus:side or hypercube:d")
      ->required();
  quotient_cmd->add_option("--coin", quotient.coin, "grover or hadamard");
  quotient_cmd->add_option("--pairing", quotient.pairing, "flip_flop or edge_colored");
  quotient_cmd->add_option("--marked", quotient.marked, "marked vertex (C1 = -I)");
  quotient_cmd->add_option("--group", quotient.group,
                           "trivial, bit-perms, reflection or rotation4");
  quotient_cmd->add_option("--center", quotient.marked_center,
                           "rotation center when no marked vertex is set");
  quotient_cmd->add_option("--t", quotient.t_values, "comma-separated Hamiltonian times");
  quotient_cmd->add_option("--s", quotient.s_values, "comma-separated family parameters");
  quotient_cmd->add_option("--out", quotient.out, "output JSON path")->required();

  ClassicalParams classical;
  auto* classical_cmd =
      app.add_subcommand("classical-demo", "classical discrete-to-continuous limit");
  classical_cmd->add_option("--states", classical.states, "chain length");
  classical_cmd->add_option("--tau", classical.tau, "horizon; n = round(tau/eps)");
  classical_cmd->add_option("--eps", classical.eps_values, "comma-separated epsilon values");
  classical_cmd->add_option("--out", classical.out, "output CSV path")->required();

  ValidateParams validate;
  auto* validate_cmd = app.add_subcommand("validate", "check the ColoredGraph invariants");
  validate_cmd->add_option("--graph", validate.graph, "cycle:n, torus:side or hypercube:d");
  validate_cmd->add_option("--pairing", validate.pairing, "flip_flop or edge_colored");
  validate_cmd->add_option("--from-json", validate.from_json, "load the graph from a JSON file");
  validate_cmd->add_option("--out", validate.out, "optional JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (scan_cmd->parsed()) return cmd_search_scan(scan);
    if (srun_cmd->parsed()) return cmd_search_run(srun);
    if (evolve_cmd->parsed()) return cmd_evolve(evolve);
    if (limit_cmd->parsed()) return cmd_limit_check(limit);
    if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum);
    if (quotient_cmd->parsed()) return cmd_quotient(quotient);
    if (classical_cmd->parsed()) return cmd_classical_demo(classical);
    if (validate_cmd->parsed()) return cmd_validate(validate);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  std::cerr << "no subcommand given\n";
  return kExitUsage;
}

}  // namespace qwalk::cli
