#include "shemass/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace shemass {

namespace {

void check_lips(double lip1, double lip2, double theta) {
  if (!(lip1 >= 0.0) || !(lip2 >= 0.0))
    throw std::domain_error("Lipschitz constants must be nonnegative");
  if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
}

}  // namespace

double admissibility_threshold(double lip1, double lip2, double theta) {
  check_lips(lip1, lip2, theta);
  const double ll = lip1 * lip2;
  return ll * ll / (4.0 * theta);
}

BoundReport theorem_bound(double beta, double t, double lip1, double lip2, double theta,
                          double energy) {
  check_lips(lip1, lip2, theta);
  if (!(t >= 0.0)) throw std::domain_error("theorem_bound needs t >= 0");
  if (!(energy >= 0.0)) throw std::domain_error("theorem_bound needs energy >= 0");
  const double threshold = admissibility_threshold(lip1, lip2, theta);
  if (!(beta > threshold))
    throw std::domain_error("beta = " + std::to_string(beta) +
                            " is inadmissible; need beta > (lip1*lip2)^2/(4*theta) = " +
                            std::to_string(threshold));
  BoundReport rep;
  rep.beta = beta;
  rep.t = t;
  rep.lip1 = lip1;
  rep.lip2 = lip2;
  rep.theta = theta;
  rep.energy = energy;
  rep.admissible = true;
  const double root = 2.0 * std::sqrt(beta * theta);
  const double ll = lip1 * lip2;
  rep.bound_value = root * ll / (root - ll) * std::exp(beta * t) * energy;
  return rep;
}

BoundReport optimize_beta(double t, double lip1, double lip2, double theta, const Profile& u0,
                          const Profile& v0, const std::vector<double>& beta_grid,
                          EnergyRoute route, Exec exec) {
  if (beta_grid.empty()) throw std::domain_error("optimize_beta: empty beta grid");
  const double threshold = admissibility_threshold(lip1, lip2, theta);
  for (double b : beta_grid)
    if (!(b > threshold))
      throw std::domain_error("optimize_beta: beta grid entry " + std::to_string(b) +
                              " is inadmissible (threshold " + std::to_string(threshold) + ")");
  const DiffusionParams params{theta};
  BoundReport best;
  std::size_t best_idx = 0;
  bool have = false;
  for (std::size_t i = 0; i < beta_grid.size(); ++i) {
    const EnergyReport e = mutual_energy(u0, v0, beta_grid[i], params, route, exec);
    BoundReport rep = theorem_bound(beta_grid[i], t, lip1, lip2, theta, e.value);
    rep.energy_error = e.quadrature_error_estimate;
    rep.route = route;
    if (!have || rep.bound_value < best.bound_value) {
      best = rep;
      best_idx = i;
      have = true;
    }
  }
  best.at_grid_edge = (best_idx == 0 || best_idx + 1 == beta_grid.size());
  return best;
}

double corollary1_bound(double t, double delta, double lip1, double lip2, double theta,
                        double l1_u0, double l1_v0, double delta_scale) {
  check_lips(lip1, lip2, theta);
  if (!(delta > 0.0)) throw std::domain_error("corollary1_bound needs separation Delta > 0");
  if (!(t > 0.0)) throw std::domain_error("corollary1_bound needs t > 0");
  if (!(l1_u0 >= 0.0) || !(l1_v0 >= 0.0)) throw std::domain_error("masses must be nonnegative");
  if (!(delta_scale > 0.0)) throw std::domain_error("delta_scale must be positive");

  const double ratio = delta / t;
  const double beta = 0.25 * delta_scale * ratio * ratio;
  const double threshold = admissibility_threshold(lip1, lip2, theta);
  if (!(beta > threshold))
    throw std::domain_error("corollary1_bound: induced beta = " + std::to_string(beta) +
                            " is inadmissible (threshold " + std::to_string(threshold) +
                            "); increase delta_scale or decrease t");
  const double exponent = beta * t - delta * std::sqrt(beta / theta);
  if (!(exponent < 0.0))
    throw std::domain_error(
        "corollary1_bound: nonnegative exponent beta*t - Delta*sqrt(beta/theta) = " +
        std::to_string(exponent) + "; the bound does not decay here (delta_scale too large)");
  const double root = 2.0 * std::sqrt(beta * theta);
  const double k = lip1 * lip2 * l1_u0 * l1_v0;
  return k * std::exp(exponent) / (root - lip1 * lip2);
}

double corollary2_energy_bound(double beta, double l1_u0, double l1_v0, double overlap_measure) {
  if (!(beta > 0.0)) throw std::domain_error("corollary2_energy_bound needs beta > 0");
  if (!(l1_u0 >= 0.0) || !(l1_v0 >= 0.0)) throw std::domain_error("masses must be nonnegative");
  if (!(overlap_measure >= 0.0)) throw std::domain_error("overlap measure must be nonnegative");
  return l1_u0 * l1_v0 * overlap_measure / (2.0 * std::numbers::pi * beta);
}

double pam_variance_budget(double beta, double t, double lip, double theta, double linf_u0,
                           double mean_mass) {
  check_lips(lip, lip, theta);
  if (!(t >= 0.0)) throw std::domain_error("pam_variance_budget needs t >= 0");
  if (!(linf_u0 >= 0.0) || !(mean_mass >= 0.0))
    throw std::domain_error("pam_variance_budget needs nonnegative norms");
  const double ll = lip * lip;
  const double threshold = ll * ll / (4.0 * theta);
  if (!(beta > threshold))
    throw std::domain_error("pam_variance_budget: beta = " + std::to_string(beta) +
                            " inadmissible; need beta > lip^4/(4*theta) = " +
                            std::to_string(threshold));
  const double root = 2.0 * std::sqrt(beta * theta);
  const double prefactor = root * ll / (root - ll);
  return prefactor * std::exp(beta * t) * linf_u0 * mean_mass / beta;
}

}  // namespace shemass
