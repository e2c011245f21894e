#include "shemass/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shemass/errors.hpp"

namespace shemass {

const char* boundary_name(Boundary b) {
  return b == Boundary::dirichlet_zero ? "dirichlet_zero" : "neumann_zero";
}

Boundary boundary_from_name(const std::string& name) {
  if (name == "dirichlet_zero" || name == "dirichlet") return Boundary::dirichlet_zero;
  if (name == "neumann_zero" || name == "neumann") return Boundary::neumann_zero;
  throw ConfigError("unknown boundary kind: " + name);
}

GridSpec GridSpec::make(double half_length, double dx, double dt, double theta, double t_end,
                        Boundary boundary) {
  if (!(half_length > 0) || !(dx > 0) || !(dt > 0) || !(theta > 0) || !(t_end > 0) ||
      !std::isfinite(half_length + dx + dt + theta + t_end))
    throw ConfigError("grid parameters must be positive and finite");
  GridSpec g;
  g.n_cells_ = std::max<long>(2, std::llround(2.0 * half_length / dx));
  g.dx_ = dx;
  g.half_length_ = 0.5 * static_cast<double>(g.n_cells_) * dx;  // snap L/dx to an integer
  g.n_steps_ = std::max<long>(1, std::llround(t_end / dt));
  g.dt_ = dt;
  g.t_end_ = static_cast<double>(g.n_steps_) * dt;  // snap t_end/dt to an integer
  g.theta_ = theta;
  g.boundary_ = boundary;
  if (g.cfl_number() > 0.5 + 1e-12)
    throw ConfigError("CFL violation: (theta/2)*dt/dx^2 = " + std::to_string(g.cfl_number()) +
                      " exceeds 1/2; shrink dt or grow dx");
  return g;
}

GridSpec GridSpec::make_default_dt(double half_length, double dx, double theta, double t_end,
                                   Boundary boundary) {
  return make(half_length, dx, dx * dx / (2.0 * theta), theta, t_end, boundary);
}

double GridSpec::cfl_number() const { return 0.5 * theta_ * dt_ / (dx_ * dx_); }

long GridSpec::step_of_time(double t) const {
  const long s = std::llround(t / dt_);
  return std::clamp<long>(s, 0, n_steps_);
}

NonlinearitySpec NonlinearitySpec::zero() {
  NonlinearitySpec s;
  s.kind_ = SigmaKind::zero;
  return s;
}

NonlinearitySpec NonlinearitySpec::linear(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::domain_error("linear nonlinearity needs lambda >= 0");
  NonlinearitySpec s;
  s.kind_ = SigmaKind::linear_lambda;
  s.lambda_ = lambda;
  s.lip_ = lambda;
  return s;
}

NonlinearitySpec NonlinearitySpec::custom(std::function<double(double)> fn, double lip_constant) {
  if (!fn) throw std::domain_error("custom nonlinearity needs a callable");
  if (!(lip_constant >= 0.0)) throw std::domain_error("Lipschitz constant must be nonnegative");
  // Dense validation sweep: sigma(0) = 0, sigma >= 0, declared slope honored.
  if (std::abs(fn(0.0)) > 1e-12) throw std::domain_error("custom nonlinearity: sigma(0) != 0");
  const double range = 64.0;
  const int n = 8193;
  double prev = fn(-range);
  const double hx = 2.0 * range / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = -range + i * hx;
    const double y = fn(x);
    if (!(y >= 0.0)) throw std::domain_error("custom nonlinearity: sigma must be nonnegative");
    if (i > 0 && std::abs(y - prev) > lip_constant * hx * (1.0 + 1e-9) + 1e-12)
      throw std::domain_error("custom nonlinearity exceeds its declared Lipschitz constant");
    prev = y;
  }
  NonlinearitySpec s;
  s.kind_ = SigmaKind::lipschitz_bounded_custom;
  s.fn_ = std::move(fn);
  s.lip_ = lip_constant;
  return s;
}

namespace {

// splitmix64 finalizer; full-avalanche bijection on 64 bits.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Box-Muller pair from two counter-derived uniforms.
inline void pair_normals(std::uint64_t step_key, std::uint64_t pair_index, double& z0, double& z1) {
  const std::uint64_t a = mix64(step_key ^ (pair_index * 0xd1342543de82ef95ULL));
  const std::uint64_t b = mix64(a ^ 0xda442d24ce78c0e7ULL);
  const double u1 = static_cast<double>((a >> 11) + 1) * 0x1.0p-53;  // (0,1]
  const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;        // [0,1)
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  z0 = r * std::cos(phi);
  z1 = r * std::sin(phi);
}

inline std::uint64_t step_key_of(const NoiseStream& stream, std::uint64_t step_index) {
  return mix64(stream.base ^ (step_index * 0x9e3779b97f4a7c15ULL));
}

}  // namespace

NoiseStream::NoiseStream(std::uint64_t seed_in, std::uint64_t path_in)
    : seed(seed_in), path_index(path_in) {
  base = mix64(mix64(seed_in) ^ mix64(path_in ^ 0x6a09e667f3bcc909ULL));
}

void fill_step_noise(const NoiseStream& stream, std::uint64_t step_index, std::span<double> out) {
  const std::uint64_t key = step_key_of(stream, step_index);
  const std::size_t n = out.size();
  for (std::size_t p = 0; 2 * p < n; ++p) {
    double z0, z1;
    pair_normals(key, p, z0, z1);
    out[2 * p] = z0;
    if (2 * p + 1 < n) out[2 * p + 1] = z1;
  }
}

double noise_draw(std::uint64_t seed, std::uint64_t path_index, std::uint64_t step_index,
                  std::uint64_t cell_index) {
  const NoiseStream stream(seed, path_index);
  double z0, z1;
  pair_normals(step_key_of(stream, step_index), cell_index / 2, z0, z1);
  return (cell_index % 2 == 0) ? z0 : z1;
}

std::vector<long> save_steps_from_stride(const GridSpec& grid, long save_stride) {
  if (save_stride < 1) throw std::domain_error("save_stride must be >= 1");
  std::vector<long> steps;
  for (long s = 0; s < grid.n_steps(); s += save_stride) steps.push_back(s);
  steps.push_back(grid.n_steps());
  return steps;
}

std::vector<long> save_steps_from_times(const GridSpec& grid, const std::vector<double>& times) {
  std::vector<long> steps;
  steps.reserve(times.size());
  for (double t : times) steps.push_back(grid.step_of_time(t));
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  if (steps.empty()) throw std::domain_error("no save steps requested");
  return steps;
}

namespace {

void check_profile_on_grid(const Profile& p, const GridSpec& grid, const char* which) {
  const GridWindow w = grid.window();
  if (p.size() != w.n || std::abs(p.grid_origin() - w.origin) > 1e-9 * w.dx ||
      std::abs(p.dx() - w.dx) > 1e-12 * w.dx)
    throw std::domain_error(std::string(which) + " is not sampled on the simulation grid");
}

struct FieldScan {
  double sum = 0.0;
  long negatives = 0;
  double min_value = 0.0;
};

// Fixed left-to-right pass so mass sums are reduction-order independent.
inline FieldScan scan_field(const std::vector<double>& a) {
  FieldScan s;
  s.min_value = a[0];
  for (double x : a) {
    s.sum += x;
    if (x < 0.0) ++s.negatives;
    if (x < s.min_value) s.min_value = x;
  }
  return s;
}

}  // namespace

PathResult simulate_pair(const GridSpec& grid, const Profile& u0, const Profile* v0,
                         const NonlinearitySpec& sigma1, const NonlinearitySpec& sigma2,
                         std::uint64_t seed, long path_index, const std::vector<long>& save_steps,
                         FieldPair* final_fields) {
  check_profile_on_grid(u0, grid, "u0");
  const bool has_v = v0 != nullptr;
  if (has_v) check_profile_on_grid(*v0, grid, "v0");
  if (save_steps.empty()) throw std::domain_error("save_steps must be nonempty");
  for (std::size_t i = 0; i < save_steps.size(); ++i) {
    if (save_steps[i] < 0 || save_steps[i] > grid.n_steps() ||
        (i > 0 && save_steps[i] <= save_steps[i - 1]))
      throw std::domain_error("save_steps must be strictly increasing within [0, n_steps]");
  }

  const long m = grid.n_nodes();
  const long nsteps = grid.n_steps();
  const double dx = grid.dx();
  const double dt = grid.dt();
  const double diff = 0.5 * grid.theta() * dt / (dx * dx);
  const double noise_scale = std::sqrt(dt / dx);
  const bool dirichlet = grid.boundary() == Boundary::dirichlet_zero;
  const bool noise_needed = sigma1.kind() != SigmaKind::zero ||
                            (has_v && sigma2.kind() != SigmaKind::zero);
  const bool track_rhs = has_v;

  std::vector<double> u = u0.samples();
  std::vector<double> un(m);
  std::vector<double> v, vn;
  if (has_v) {
    v = v0->samples();
    vn.resize(m);
  }
  std::vector<double> noise(static_cast<std::size_t>(grid.n_interior()), 0.0);
  const NoiseStream stream(seed, static_cast<std::uint64_t>(path_index));

  PathResult res;
  res.seed = seed;
  res.path_index = path_index;
  res.has_v = has_v;
  res.min_value_seen = std::numeric_limits<double>::infinity();

  double cov_accum = 0.0;
  long neg_count = 0;
  long sample_count = 0;

  FieldScan su = scan_field(u);
  FieldScan sv;
  if (has_v) sv = scan_field(v);
  res.min_value_seen = std::min(su.min_value, has_v ? sv.min_value : su.min_value);

  auto record = [&](long step) {
    res.times.push_back(static_cast<double>(step) * dt);
    res.mass_u.push_back(dx * su.sum);
    if (has_v) res.mass_v.push_back(dx * sv.sum);
    res.cov_rhs.push_back(cov_accum);
    res.neg_fraction.push_back(
        sample_count > 0 ? static_cast<double>(neg_count) / static_cast<double>(sample_count)
                         : 0.0);
  };

  std::size_t save_pos = 0;
  if (save_steps[save_pos] == 0) {
    record(0);
    ++save_pos;
  }

  auto advance = [&](const std::vector<double>& a, std::vector<double>& b,
                     const NonlinearitySpec& sg) {
    for (long j = 1; j < m - 1; ++j) {
      const double arg = a[j] > 0.0 ? a[j] : 0.0;  // clamp sigma's argument, not the field
      b[j] = a[j] + diff * (a[j + 1] - 2.0 * a[j] + a[j - 1]) +
             sg.eval(arg) * noise_scale * noise[j - 1];
    }
    if (dirichlet) {
      b[0] = 0.0;
      b[m - 1] = 0.0;
    } else {  // reflecting ghosts, no noise on the end nodes
      b[0] = a[0] + diff * 2.0 * (a[1] - a[0]);
      b[m - 1] = a[m - 1] + diff * 2.0 * (a[m - 2] - a[m - 1]);
    }
  };

  for (long step = 0; step < nsteps; ++step) {
    if (noise_needed) fill_step_noise(stream, static_cast<std::uint64_t>(step), noise);
    if (track_rhs) {
      // Identity right-hand side at the pre-step state, with the same clamped
      // sigma arguments that multiply the noise.
      double rhs = 0.0;
      for (long j = 1; j < m - 1; ++j) {
        const double au = u[j] > 0.0 ? u[j] : 0.0;
        const double av = v[j] > 0.0 ? v[j] : 0.0;
        rhs += sigma1.eval(au) * sigma2.eval(av);
      }
      cov_accum += rhs * dt * dx;
    }

    advance(u, un, sigma1);
    u.swap(un);
    su = scan_field(u);
    neg_count += su.negatives;
    sample_count += m;
    if (su.min_value < res.min_value_seen) res.min_value_seen = su.min_value;
    if (!std::isfinite(su.sum))
      throw BlowupError("field u became non-finite at step " + std::to_string(step + 1), step + 1);

    if (has_v) {
      advance(v, vn, sigma2);
      v.swap(vn);
      sv = scan_field(v);
      neg_count += sv.negatives;
      sample_count += m;
      if (sv.min_value < res.min_value_seen) res.min_value_seen = sv.min_value;
      if (!std::isfinite(sv.sum))
        throw BlowupError("field v became non-finite at step " + std::to_string(step + 1),
                          step + 1);
    }

    if (save_pos < save_steps.size() && save_steps[save_pos] == step + 1) {
      record(step + 1);
      ++save_pos;
    }
  }
  if (final_fields) {
    final_fields->u = u;
    final_fields->v = v;
  }
  return res;
}

PathResult simulate_pair(const GridSpec& grid, const Profile& u0, const Profile* v0,
                         const NonlinearitySpec& sigma1, const NonlinearitySpec& sigma2,
                         std::uint64_t seed, long path_index, long save_stride) {
  return simulate_pair(grid, u0, v0, sigma1, sigma2, seed, path_index,
                       save_steps_from_stride(grid, save_stride));
}

}  // namespace shemass
