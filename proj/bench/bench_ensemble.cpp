// Timing comparison of the serial reference drivers against the OpenMP ones.
// Build target `bench_ensemble`; not part of the test suite.

#include <chrono>
#include <cstdio>

#include "shemass/ensemble.hpp"
#include "shemass/exec.hpp"
#include "shemass/kernels.hpp"

using namespace shemass;

namespace {

template <typename F>
double time_seconds(F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  long n_paths = 256;
  if (argc > 1) n_paths = std::strtol(argv[1], nullptr, 10);

  std::printf("threads available: %d\n", exec_thread_count());

  const GridSpec grid = GridSpec::make_default_dt(8.0, 1.0 / 32, 1.0, 0.25);
  const Profile u0 = make_indicator(-1.0, 1.0, 1.0, grid.window());
  const Profile v0 = make_indicator(-0.5, 1.5, 1.0, grid.window());
  const NonlinearitySpec lin = NonlinearitySpec::linear(1.0);
  const auto saves = save_steps_from_stride(grid, grid.n_steps());

  EnsembleStats serial_stats, parallel_stats;
  const double t_serial = time_seconds([&] {
    serial_stats = run_ensemble_serial(grid, u0, &v0, lin, lin, 1, n_paths, saves);
  });
  const double t_parallel = time_seconds([&] {
    parallel_stats = run_ensemble(grid, u0, &v0, lin, lin, 1, n_paths, saves, Exec::openmp);
  });

  const bool identical =
      serial_stats.rows.back().mean_mass_u == parallel_stats.rows.back().mean_mass_u &&
      serial_stats.rows.back().cov_uv == parallel_stats.rows.back().cov_uv;

  std::printf("ensemble  paths=%ld steps=%ld nodes=%ld\n", n_paths, grid.n_steps(),
              grid.n_nodes());
  std::printf("  serial reference : %8.3f s\n", t_serial);
  std::printf("  openmp driver    : %8.3f s  (speedup %.2fx, results %s)\n", t_parallel,
              t_serial / t_parallel, identical ? "bit-identical" : "DIFFER");

  const GridWindow window{-16.0, 1.0 / 64, 2049};
  const Profile f = make_gaussian_bump(0.0, 0.5, 1.0, window);
  auto t0 = std::chrono::steady_clock::now();
  const ResolventResult conv_serial = resolvent_apply(1.0, f, DiffusionParams{1.0}, Exec::serial);
  const double c_serial = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  t0 = std::chrono::steady_clock::now();
  const ResolventResult conv_parallel = resolvent_apply(1.0, f, DiffusionParams{1.0}, Exec::openmp);
  const double c_parallel = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool conv_same = conv_serial.values.samples() == conv_parallel.values.samples();

  std::printf("resolvent convolution  n=%zu\n", f.size());
  std::printf("  serial reference : %8.3f s\n", c_serial);
  std::printf("  openmp driver    : %8.3f s  (speedup %.2fx, results %s)\n", c_parallel,
              c_serial / c_parallel, conv_same ? "bit-identical" : "DIFFER");

  return (identical && conv_same) ? 0 : 1;
}
