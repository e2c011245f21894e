#include "shemass/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace shemass {

namespace {

void check_theta(const DiffusionParams& p) {
  if (!(p.theta > 0.0) || !std::isfinite(p.theta))
    throw std::domain_error("diffusion parameter theta must be positive and finite");
}

}  // namespace

double heat_kernel(double r, double a, const DiffusionParams& params) {
  check_theta(params);
  if (!(r > 0.0) || !std::isfinite(r)) throw std::domain_error("heat kernel needs time r > 0");
  const double var = params.theta * r;
  return std::exp(-a * a / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

double resolvent_kernel(double beta, double x, const DiffusionParams& params) {
  check_theta(params);
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::domain_error("resolvent kernel needs beta > 0");
  const double s = std::sqrt(beta / params.theta);
  return std::exp(-std::abs(x) * s) / (2.0 * std::sqrt(beta * params.theta));
}

namespace {

// Trapezoid convolution of r_beta against the sampled profile, with the
// Euler-Maclaurin correction for the kernel kink.  The kink of r_beta(x - y)
// sits at y = x, a grid node, where the one-sided derivatives jump by
// -v(x)/theta; the resulting h^2/12 trapezoid defect is removed analytically:
//   (r_beta * v)(x_i) ~= h * sum_j w_j r_beta(x_i - x_j) v_j - h^2 v_i/(12 theta).
std::vector<double> convolve_resolvent(double beta, const Profile& f,
                                       const DiffusionParams& params, Exec exec) {
  const long n = static_cast<long>(f.size());
  const double h = f.dx();
  // Kernel values at node distances; the inner loop is then multiply-add only.
  std::vector<double> kern(n);
  for (long k = 0; k < n; ++k)
    kern[k] = resolvent_kernel(beta, static_cast<double>(k) * h, params);
  const auto& v = f.samples();
  std::vector<double> out(n);
  const double kink = h * h / (12.0 * params.theta);
#pragma omp parallel for schedule(static) if (exec == Exec::openmp)
  for (long i = 0; i < n; ++i) {
    double acc = 0.5 * (kern[i] * v[0] + kern[n - 1 - i] * v[n - 1]);
    for (long j = 1; j < n - 1; ++j) acc += kern[std::labs(i - j)] * v[j];
    out[i] = h * acc - kink * v[i];
  }
  return out;
}

double trapezoid_inner(const Profile& u, const std::vector<double>& g) {
  const long n = static_cast<long>(u.size());
  double acc = 0.5 * (u[0] * g[0] + u[n - 1] * g[n - 1]);
  for (long i = 1; i < n - 1; ++i) acc += u[i] * g[i];
  return u.dx() * acc;
}

double energy_real(const Profile& u0, const Profile& v0, double beta,
                   const DiffusionParams& params, Exec exec) {
  return trapezoid_inner(u0, convolve_resolvent(beta, v0, params, exec));
}

double energy_fourier(const Profile& u0, const Profile& v0, double beta,
                      const DiffusionParams& params) {
  // 4x zero padding refines the frequency mesh; the integrand is evaluated at
  // the exact continuous frequencies.
  const Spectrum su = spectrum(u0, 4);
  const Spectrum sv = spectrum(v0, 4);
  double acc = 0.0;
  for (std::size_t k = 0; k < su.z.size(); ++k) {
    const double z = su.z[k];
    const double w = 1.0 / (beta + params.theta * z * z);
    acc += w * (su.fhat[k].real() * sv.fhat[k].real() + su.fhat[k].imag() * sv.fhat[k].imag());
  }
  return su.dz * acc / (2.0 * std::numbers::pi);
}

}  // namespace

ResolventResult resolvent_apply(double beta, const Profile& f, const DiffusionParams& params,
                                Exec exec) {
  check_theta(params);
  if (!(beta > 0.0)) throw std::domain_error("resolvent_apply needs beta > 0");
  if (f.size() == 0) throw std::domain_error("resolvent_apply: empty grid");

  std::vector<double> fine = convolve_resolvent(beta, f, params, exec);
  double err = 0.0;
  if (f.size() >= 5) {
    const Profile coarse = f.coarsened();
    const std::vector<double> cg = convolve_resolvent(beta, coarse, params, exec);
    for (std::size_t i = 0; i < cg.size(); ++i)
      err = std::max(err, std::abs(cg[i] - fine[2 * i]));
  }
  // The convolution can dip a hair below zero at the far tail; clamp the
  // roundoff so the result is a valid Profile.
  for (double& g : fine)
    if (g < 0.0 && g > -1e-300) g = 0.0;
  return ResolventResult{Profile::from_samples(f.grid_origin(), f.dx(), std::move(fine)), err};
}

EnergyReport mutual_energy(const Profile& u0, const Profile& v0, double beta,
                           const DiffusionParams& params, EnergyRoute route, Exec exec) {
  check_theta(params);
  if (!(beta > 0.0)) throw std::domain_error("mutual_energy needs beta > 0");
  if (!u0.same_grid(v0)) throw std::domain_error("mutual_energy requires a common grid");

  EnergyReport rep;
  rep.beta = beta;
  rep.route = route;
  if (route == EnergyRoute::real_space) {
    rep.value = energy_real(u0, v0, beta, params, exec);
    if (u0.size() >= 5)
      rep.quadrature_error_estimate =
          std::abs(rep.value - energy_real(u0.coarsened(), v0.coarsened(), beta, params, exec));
  } else {
    rep.value = energy_fourier(u0, v0, beta, params);
    if (u0.size() >= 5)
      rep.quadrature_error_estimate =
          std::abs(rep.value - energy_fourier(u0.coarsened(), v0.coarsened(), beta, params));
  }
  if (rep.value < 0.0 && rep.value > -1e-300) rep.value = 0.0;
  return rep;
}

const char* energy_route_name(EnergyRoute route) {
  return route == EnergyRoute::real_space ? "real_space" : "fourier";
}

}  // namespace shemass
