// Times the OpenMP kernels against their serial references: spmv, the fused
// Chebyshev update, and a full e^{-iHt} application on torus search operators.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qwalk/kernels.hpp"
#include "qwalk/linalg.hpp"
#include "qwalk/operators.hpp"
#include "qwalk/search.hpp"

using namespace qwalk;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

StateVector random_state(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  StateVector psi(dim);
  for (auto& a : psi.amp) {
    a = Complex{g(rng), g(rng)};
  }
  psi.normalize();
  return psi;
}

void bench_spmv(const SparseOperator& h, const char* label) {
  const std::size_t dim = h.dim;
  const StateVector x = random_state(dim, 7);
  StateVector y(dim);

  const int reps = std::max<int>(5, static_cast<int>(2'000'000 / std::max<std::size_t>(1, h.nnz())));

  auto t0 = clock_type::now();
  for (int r = 0; r < reps; ++r) {
    kernels::spmv_serial(h, x.data(), y.data());
  }
  const double serial = seconds_since(t0) / reps;

  t0 = clock_type::now();
  for (int r = 0; r < reps; ++r) {
    kernels::spmv(h, x.data(), y.data());
  }
  const double parallel = seconds_since(t0) / reps;

  std::printf("%-28s dim %7zu nnz %8zu  serial %9.3f us  omp %9.3f us  speedup %.2fx\n",
              label, dim, h.nnz(), serial * 1e6, parallel * 1e6, serial / parallel);
}

void bench_expm(const SparseOperator& h, double t, const char* label) {
  const StateVector psi = random_state(h.dim, 11);
  linalg::ExpmOptions opts;
  opts.backend = linalg::ExpmOptions::Backend::chebyshev;
  const linalg::Propagator prop(h, opts);

  auto t0 = clock_type::now();
  const StateVector out = prop.apply(psi, t, 1e-10);
  const double elapsed = seconds_since(t0);
  std::printf("%-28s dim %7zu t=%5.1f  chebyshev apply %9.3f ms  (norm drift %.2e)\n", label,
              h.dim, t, elapsed * 1e3, std::abs(out.norm() - 1.0));
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP: disabled at build time\n");
#endif

  for (const std::size_t side : {16, 32, 64, 128}) {
    const search::SearchInstance inst = search::setup(side, 0, graphs::PairingMode::flip_flop);
    char label[64];
    std::snprintf(label, sizeof(label), "spmv S-F torus %zu", side);
    bench_spmv(inst.hamiltonian, label);
  }

  {
    const std::size_t dim = 1 << 16;
    const StateVector w = random_state(dim, 3);
    const StateVector tc = random_state(dim, 4);
    StateVector tp = random_state(dim, 5);
    StateVector acc(dim);
    const int reps = 50;

    auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) {
      kernels::chebyshev_update_serial(w.data(), tc.data(), tp.data(), acc.data(), 1.0, 0.1,
                                       Complex{0.3, 0.1}, dim);
    }
    const double serial = seconds_since(t0) / reps;
    t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) {
      kernels::chebyshev_update(w.data(), tc.data(), tp.data(), acc.data(), 1.0, 0.1,
                                Complex{0.3, 0.1}, dim);
    }
    const double parallel = seconds_since(t0) / reps;
    std::printf("%-28s dim %7zu               serial %9.3f us  omp %9.3f us  speedup %.2fx\n",
                "chebyshev_update", dim, serial * 1e6, parallel * 1e6, serial / parallel);
  }

  for (const std::size_t side : {32, 64}) {
    const search::SearchInstance inst = search::setup(side, 0, graphs::PairingMode::flip_flop);
    char label[64];
    std::snprintf(label, sizeof(label), "expm torus %zu", side);
    bench_expm(inst.hamiltonian, 0.5 * std::sqrt(static_cast<double>(inst.num_vertices)), label);
  }
  return 0;
}
