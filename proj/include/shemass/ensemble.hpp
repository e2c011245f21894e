#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "shemass/exec.hpp"
#include "shemass/simulate.hpp"

namespace shemass {

// Monte Carlo aggregates at one saved time.
struct TimePointStats {
  double t = 0.0;
  double mean_mass_u = 0.0;
  double se_mass_u = 0.0;
  double mean_mass_v = 0.0;  // nan when the run has a single field
  double se_mass_v = 0.0;
  double cov_uv = 0.0;       // sample covariance of (mass_u, mass_v)
  double se_cov = 0.0;       // delete-one jackknife
  double var_mass_u = 0.0;
  double se_var_mass_u = 0.0;
  double cov_rhs = 0.0;      // mean accumulated identity right-hand side
  double se_cov_rhs = 0.0;
  double min_value_frac_negative = 0.0;
};

struct EnsembleStats {
  std::vector<TimePointStats> rows;
  long n_paths = 0;
  std::uint64_t seed = 0;
  bool has_v = false;
  double min_value_seen = 0.0;  // most negative raw sample over the ensemble
};

// Fixed-order reduction of per-path results; identical output no matter how
// the paths were produced.
EnsembleStats aggregate_paths(const std::vector<PathResult>& paths);

// OpenMP driver: paths are embarrassingly parallel, each owns its state and
// noise stream.
EnsembleStats run_ensemble(const GridSpec& grid, const Profile& u0, const Profile* v0,
                           const NonlinearitySpec& sigma1, const NonlinearitySpec& sigma2,
                           std::uint64_t seed, long n_paths, const std::vector<long>& save_steps,
                           Exec exec = Exec::openmp);

// Plain-loop reference implementation; must agree bit for bit with the
// parallel driver.
EnsembleStats run_ensemble_serial(const GridSpec& grid, const Profile& u0, const Profile* v0,
                                  const NonlinearitySpec& sigma1, const NonlinearitySpec& sigma2,
                                  std::uint64_t seed, long n_paths,
                                  const std::vector<long>& save_steps);

// CSV columns: t, mean_mass_u, se_mass_u, mean_mass_v, se_mass_v, cov_uv,
// se_cov, cov_rhs, se_cov_rhs, min_value_frac_negative.
void ensemble_to_csv(const EnsembleStats& stats, std::ostream& os);

}  // namespace shemass
