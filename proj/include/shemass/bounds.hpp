#pragma once

#include <vector>

#include "shemass/kernels.hpp"

namespace shemass {

struct BoundReport {
  double beta = 0.0;
  double t = 0.0;
  double lip1 = 0.0;
  double lip2 = 0.0;
  double theta = 1.0;
  double energy = 0.0;
  double energy_error = 0.0;
  double bound_value = 0.0;
  bool admissible = false;    // beta > (lip1*lip2)^2 / (4*theta)
  bool at_grid_edge = false;  // set by optimize_beta when the minimizer is an endpoint
  EnergyRoute route = EnergyRoute::real_space;
};

// (lip1*lip2)^2 / (4*theta); the covariance bound requires beta above this.
double admissibility_threshold(double lip1, double lip2, double theta);

// bound = [2 sqrt(beta theta) lip1 lip2 / (2 sqrt(beta theta) - lip1 lip2)]
//         * exp(beta t) * energy.
BoundReport theorem_bound(double beta, double t, double lip1, double lip2, double theta,
                          double energy);

// Scans an admissible beta grid, recomputing the mutual energy per candidate,
// and returns the report with the smallest bound.
BoundReport optimize_beta(double t, double lip1, double lip2, double theta, const Profile& u0,
                          const Profile& v0, const std::vector<double>& beta_grid,
                          EnergyRoute route = EnergyRoute::fourier, Exec exec = Exec::openmp);

// Separated-support decorrelation bound with the schedule
// beta = (delta_scale/4) * (Delta/t)^2, so sqrt(beta/theta) = Delta/(2t)
// sqrt(delta_scale/theta) and the exponent is negative whenever
// delta_scale < 4*theta at delta_scale = theta (the default).  Negativity of
// the exponent is checked per call.
double corollary1_bound(double t, double delta, double lip1, double lip2, double theta,
                        double l1_u0, double l1_v0, double delta_scale);

// (2 pi beta)^{-1} * l1_u0 * l1_v0 * overlap_measure, an upper bound for the
// mutual beta-energy via the spectral-overlap chain.
double corollary2_energy_bound(double beta, double l1_u0, double l1_v0, double overlap_measure);

// Variance ceiling for the truncated bounded-initial-datum run:
// A * exp(beta t) * beta^{-1} * linf_u0 * mean_mass with A the covariance
// bound prefactor at lip1 = lip2 = lip.
double pam_variance_budget(double beta, double t, double lip, double theta, double linf_u0,
                           double mean_mass);

}  // namespace shemass
