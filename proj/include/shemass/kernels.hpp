#pragma once

#include "shemass/exec.hpp"
#include "shemass/profiles.hpp"

namespace shemass {

struct DiffusionParams {
  double theta = 1.0;  // diffusion scale; the drift coefficient is theta/2
};

// Gaussian transition density with variance theta*r:
//   p_r(a) = (2*pi*theta*r)^(-1/2) * exp(-a^2 / (2*theta*r)),  r > 0.
double heat_kernel(double r, double a, const DiffusionParams& params);

// Two-sided exponential resolvent kernel:
//   r_beta(x) = exp(-|x| sqrt(beta/theta)) / (2 sqrt(beta*theta)),  beta > 0.
// Equals the Laplace transform in time of p_{2t}(x).
double resolvent_kernel(double beta, double x, const DiffusionParams& params);

struct ResolventResult {
  Profile values;          // (r_beta * f) sampled on f's grid
  double error_estimate;   // max-norm mesh-pair (h vs 2h) comparison
};

// Convolution quadrature of r_beta against a sampled profile: composite
// trapezoid on the profile grid plus the analytic correction for the kernel
// kink, which sits on a grid point by construction.
ResolventResult resolvent_apply(double beta, const Profile& f, const DiffusionParams& params,
                                Exec exec = Exec::openmp);

enum class EnergyRoute { real_space, fourier };

struct EnergyReport {
  double beta = 0.0;
  double value = 0.0;  // E_beta(u0, v0) >= 0
  EnergyRoute route = EnergyRoute::real_space;
  double quadrature_error_estimate = 0.0;  // |E(h) - E(2h)|
};

// Mutual beta-energy <u0, r_beta * v0>.  The real-space route reuses the
// convolution quadrature; the fourier route integrates
//   (2*pi)^{-1} u0hat(z) conj(v0hat(z)) / (beta + theta z^2)
// over the discrete frequency grid (4x zero-padded transform).
EnergyReport mutual_energy(const Profile& u0, const Profile& v0, double beta,
                           const DiffusionParams& params, EnergyRoute route,
                           Exec exec = Exec::openmp);

const char* energy_route_name(EnergyRoute route);

}  // namespace shemass
