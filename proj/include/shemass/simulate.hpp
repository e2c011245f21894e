#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "shemass/profiles.hpp"

namespace shemass {

enum class Boundary { dirichlet_zero, neumann_zero };

const char* boundary_name(Boundary b);
Boundary boundary_from_name(const std::string& name);

// Truncated domain [-L, L] with nodes x_j = -L + j*dx, j = 0..m-1, explicit
// Euler stepping to t_end.  L/dx and t_end/dt are snapped to integers at
// construction; the CFL condition (theta/2)*dt/dx^2 <= 1/2 is enforced.
class GridSpec {
 public:
  static GridSpec make(double half_length, double dx, double dt, double theta, double t_end,
                       Boundary boundary = Boundary::dirichlet_zero);
  // dt defaulted to half the CFL limit, dx^2/(2*theta).
  static GridSpec make_default_dt(double half_length, double dx, double theta, double t_end,
                                  Boundary boundary = Boundary::dirichlet_zero);

  double half_length() const { return half_length_; }
  double dx() const { return dx_; }
  double dt() const { return dt_; }
  double theta() const { return theta_; }
  double t_end() const { return t_end_; }
  Boundary boundary() const { return boundary_; }

  long n_nodes() const { return n_cells_ + 1; }
  long n_interior() const { return n_cells_ - 1; }
  long n_steps() const { return n_steps_; }
  double cfl_number() const;  // (theta/2) dt / dx^2

  GridWindow window() const {
    return GridWindow{-half_length_, dx_, static_cast<std::size_t>(n_nodes())};
  }
  // Step index whose time is nearest to t.
  long step_of_time(double t) const;

 private:
  GridSpec() = default;
  double half_length_ = 0, dx_ = 0, dt_ = 0, theta_ = 0, t_end_ = 0;
  Boundary boundary_ = Boundary::dirichlet_zero;
  long n_cells_ = 0, n_steps_ = 0;
};

enum class SigmaKind { zero, linear_lambda, lipschitz_bounded_custom };

// Noise coefficient sigma with sigma(0) = 0, sigma >= 0 on the domain the
// scheme feeds it (nonnegative arguments), and a declared Lipschitz constant.
class NonlinearitySpec {
 public:
  static NonlinearitySpec zero();
  static NonlinearitySpec linear(double lambda);
  // Validated by dense sampling: nonnegativity, sigma(0)=0, declared Lipschitz
  // constant not exceeded.
  static NonlinearitySpec custom(std::function<double(double)> fn, double lip_constant);

  SigmaKind kind() const { return kind_; }
  double lip_constant() const { return lip_; }
  double lambda() const { return lambda_; }

  double eval(double x) const {
    switch (kind_) {
      case SigmaKind::zero: return 0.0;
      case SigmaKind::linear_lambda: return lambda_ * x;
      default: return fn_(x);
    }
  }

 private:
  SigmaKind kind_ = SigmaKind::zero;
  double lip_ = 0.0;
  double lambda_ = 0.0;
  std::function<double(double)> fn_;
};

// Counter-derived N(0,1) stream: the draw for (seed, path, step, cell) is a
// pure function of those four integers, so results do not depend on how
// paths are scheduled across threads.
struct NoiseStream {
  NoiseStream(std::uint64_t seed, std::uint64_t path_index);
  std::uint64_t seed = 0;
  std::uint64_t path_index = 0;
  std::uint64_t base = 0;  // premixed (seed, path) key
};

void fill_step_noise(const NoiseStream& stream, std::uint64_t step_index, std::span<double> out);
double noise_draw(std::uint64_t seed, std::uint64_t path_index, std::uint64_t step_index,
                  std::uint64_t cell_index);

// Per-path record: total masses and the covariance-identity accumulator at
// each saved step.
struct PathResult {
  std::vector<double> times;
  std::vector<double> mass_u;
  std::vector<double> mass_v;        // empty when no second field
  std::vector<double> cov_rhs;       // dt*dx*sum_j sigma1(u)*sigma2(v), accumulated to each time
  std::vector<double> neg_fraction;  // fraction of raw samples < 0 up to each time
  double min_value_seen = 0.0;
  std::uint64_t seed = 0;
  long path_index = 0;
  bool has_v = false;
};

// Sorted unique step indices (always containing 0) from a stride.
std::vector<long> save_steps_from_stride(const GridSpec& grid, long save_stride);
// Nearest step indices for a list of times.
std::vector<long> save_steps_from_times(const GridSpec& grid, const std::vector<double>& times);

// Final-time fields, for diagnostics and scheme-accuracy checks.
struct FieldPair {
  std::vector<double> u;
  std::vector<double> v;
};

// Advance u (and v when given) to t_end with one shared noise realization per
// step:
//   u^{n+1}_j = u^n_j + (theta dt / (2 dx^2)) (u^n_{j+1} - 2 u^n_j + u^n_{j-1})
//             + sigma(max(u^n_j, 0)) sqrt(dt/dx) N_{n,j}.
// The field itself is never clamped; min_value_seen records undershoot.
PathResult simulate_pair(const GridSpec& grid, const Profile& u0, const Profile* v0,
                         const NonlinearitySpec& sigma1, const NonlinearitySpec& sigma2,
                         std::uint64_t seed, long path_index, const std::vector<long>& save_steps,
                         FieldPair* final_fields = nullptr);

PathResult simulate_pair(const GridSpec& grid, const Profile& u0, const Profile* v0,
                         const NonlinearitySpec& sigma1, const NonlinearitySpec& sigma2,
                         std::uint64_t seed, long path_index, long save_stride);

}  // namespace shemass
