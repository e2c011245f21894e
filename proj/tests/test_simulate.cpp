#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "shemass/errors.hpp"
#include "shemass/simulate.hpp"

using namespace shemass;

TEST_CASE("grid snaps counts and enforces the CFL condition") {
  const GridSpec g = GridSpec::make(16.0, 1.0 / 32, 1.0 / 2048, 1.0, 0.5);
  CHECK(g.n_nodes() == 1025);
  CHECK(g.n_steps() == 1024);
  CHECK(g.half_length() == 16.0);
  CHECK(g.t_end() == 0.5);
  CHECK(g.cfl_number() == doctest::Approx(0.25));

  // dt above the stability limit
  CHECK_THROWS_AS(GridSpec::make(4.0, 1.0 / 32, 1.0 / 500, 1.0, 0.1), ConfigError);
  CHECK_THROWS_AS(GridSpec::make(-1.0, 0.1, 1e-3, 1.0, 0.1), ConfigError);

  const GridSpec d = GridSpec::make_default_dt(4.0, 1.0 / 16, 2.0, 0.25);
  CHECK(d.cfl_number() == doctest::Approx(0.25));
}

TEST_CASE("nonlinearity specs validate their contracts") {
  const NonlinearitySpec z = NonlinearitySpec::zero();
  CHECK(z.eval(3.0) == 0.0);
  CHECK(z.lip_constant() == 0.0);

  const NonlinearitySpec lin = NonlinearitySpec::linear(2.5);
  CHECK(lin.eval(2.0) == 5.0);
  CHECK(lin.lip_constant() == 2.5);
  CHECK_THROWS_AS(NonlinearitySpec::linear(-1.0), std::domain_error);

  const NonlinearitySpec bounded =
      NonlinearitySpec::custom([](double x) { return std::min(std::abs(x), 1.0); }, 1.0);
  CHECK(bounded.eval(0.25) == 0.25);
  CHECK(bounded.eval(7.0) == 1.0);

  // sigma(0) != 0
  CHECK_THROWS_AS(NonlinearitySpec::custom([](double) { return 1.0; }, 1.0), std::domain_error);
  // negative values
  CHECK_THROWS_AS(NonlinearitySpec::custom([](double x) { return x; }, 1.0), std::domain_error);
  // declared Lipschitz constant too small
  CHECK_THROWS_AS(NonlinearitySpec::custom([](double x) { return 2.0 * std::abs(x); }, 1.0),
                  std::domain_error);
}

TEST_CASE("noise stream is a pure function of its counters") {
  const NoiseStream s(42, 7);
  std::vector<double> a(513), b(513);
  fill_step_noise(s, 11, a);
  fill_step_noise(s, 11, b);
  CHECK(a == b);

  // single-draw accessor matches the bulk fill
  for (std::size_t c : {0u, 1u, 2u, 255u, 512u})
    CHECK(noise_draw(42, 7, 11, c) == a[c]);

  // different counters decorrelate
  std::vector<double> other(513);
  fill_step_noise(s, 12, other);
  CHECK(a != other);
  const NoiseStream s2(42, 8);
  fill_step_noise(s2, 11, other);
  CHECK(a != other);
}

TEST_CASE("noise moments match the standard normal") {
  const NoiseStream s(20240817, 0);
  const std::size_t n = 1'000'000;
  std::vector<double> buf(n);
  fill_step_noise(s, 0, buf);
  double sum = 0.0, sumsq = 0.0;
  for (double x : buf) {
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sumsq / static_cast<double>(n) - mean * mean;
  CHECK(std::abs(mean) <= 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(var > 0.99);
  CHECK(var < 1.01);
}

TEST_CASE("zero noise coefficient reproduces deterministic heat flow") {
  // u0 = p_1 sampled; after time t the exact solution is p_{1+t}.  Max-norm
  // error of the explicit scheme is second order in dx at dt = dx^2/2.
  for (double dx : {1.0 / 32, 1.0 / 64}) {
    const double theta = 1.0;
    const double t_end = 0.25;
    const GridSpec g = GridSpec::make_default_dt(8.0, dx, theta, t_end);
    const Profile u0 = make_gaussian_bump(0.0, 1.0, 1.0, g.window());
    const NonlinearitySpec z = NonlinearitySpec::zero();
    FieldPair fields;
    const PathResult res =
        simulate_pair(g, u0, nullptr, z, z, 1, 0, save_steps_from_stride(g, g.n_steps()),
                      &fields);
    CHECK(res.mass_u.back() == doctest::Approx(1.0).epsilon(1e-8));
    double max_err = 0.0;
    for (long j = 0; j < g.n_nodes(); ++j) {
      const double exact = oracles::heat_kernel_ref(1.0 + t_end, -8.0 + j * dx, theta);
      max_err = std::max(max_err, std::abs(fields.u[j] - exact));
    }
    CHECK(max_err <= 0.05 * dx * dx);
  }
}

TEST_CASE("zero initial datum stays zero under any admissible sigma") {
  const GridSpec g = GridSpec::make_default_dt(4.0, 1.0 / 16, 1.0, 0.125);
  const Profile zero = make_constant(0.0, g.window());
  const NonlinearitySpec lin = NonlinearitySpec::linear(1.0);
  const PathResult res = simulate_pair(g, zero, nullptr, lin, lin, 3, 5, 8L);
  for (double mass : res.mass_u) CHECK(mass == 0.0);
  CHECK(res.min_value_seen == 0.0);
}

TEST_CASE("same seed and path index reproduce the path bit for bit") {
  const GridSpec g = GridSpec::make_default_dt(4.0, 1.0 / 16, 1.0, 0.125);
  const Profile u0 = make_indicator(-1.0, 1.0, 1.0, g.window());
  const Profile v0 = make_indicator(-0.5, 1.5, 1.0, g.window());
  const NonlinearitySpec lin = NonlinearitySpec::linear(1.0);
  const PathResult a = simulate_pair(g, u0, &v0, lin, lin, 99, 3, 8L);
  const PathResult b = simulate_pair(g, u0, &v0, lin, lin, 99, 3, 8L);
  CHECK(a.mass_u == b.mass_u);
  CHECK(a.mass_v == b.mass_v);
  CHECK(a.cov_rhs == b.cov_rhs);
  CHECK(a.min_value_seen == b.min_value_seen);
}

TEST_CASE("identical inputs share the noise realization exactly") {
  const GridSpec g = GridSpec::make_default_dt(4.0, 1.0 / 16, 1.0, 0.125);
  const Profile u0 = make_indicator(-1.0, 1.0, 1.0, g.window());
  const NonlinearitySpec lin = NonlinearitySpec::linear(1.0);
  const PathResult res = simulate_pair(g, u0, &u0, lin, lin, 5, 0, 4L);
  for (std::size_t k = 0; k < res.mass_u.size(); ++k)
    CHECK(res.mass_u[k] == res.mass_v[k]);
}

TEST_CASE("runaway coefficients raise a blowup error naming the step") {
  // big enough that sigma(u)*noise overflows once |u| is moderately large
  const GridSpec g = GridSpec::make_default_dt(2.0, 1.0 / 16, 1.0, 0.25);
  const Profile u0 = make_indicator(-1.0, 1.0, 1.0, g.window());
  const NonlinearitySpec wild = NonlinearitySpec::linear(1e300);
  try {
    simulate_pair(g, u0, nullptr, wild, wild, 1, 0, g.n_steps());
    FAIL("expected a blowup");
  } catch (const BlowupError& e) {
    CHECK(e.step() > 0);
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
}

TEST_CASE("save step helpers") {
  const GridSpec g = GridSpec::make(2.0, 1.0 / 16, 1.0 / 512, 1.0, 0.125);
  CHECK(g.n_steps() == 64);
  const std::vector<long> strided = save_steps_from_stride(g, 16);
  CHECK(strided == std::vector<long>{0, 16, 32, 48, 64});
  const std::vector<long> timed = save_steps_from_times(g, {0.0, 0.0311, 0.0625, 0.125});
  CHECK(timed == std::vector<long>{0, 16, 32, 64});
  CHECK_THROWS_AS(save_steps_from_stride(g, 0), std::domain_error);
}

TEST_CASE("profiles must live on the simulation grid") {
  const GridSpec g = GridSpec::make_default_dt(4.0, 1.0 / 16, 1.0, 0.125);
  const Profile wrong = make_indicator(-1.0, 1.0, 1.0, GridWindow{-4.0, 1.0 / 32, 257});
  const NonlinearitySpec z = NonlinearitySpec::zero();
  CHECK_THROWS_AS(simulate_pair(g, wrong, nullptr, z, z, 1, 0, 8L), std::domain_error);
}

TEST_CASE("neumann boundary conserves deterministic mass") {
  const GridSpec g =
      GridSpec::make(4.0, 1.0 / 16, 1.0 / 512, 1.0, 0.25, Boundary::neumann_zero);
  const Profile u0 = make_indicator(-1.0, 1.0, 1.0, g.window());
  const NonlinearitySpec z = NonlinearitySpec::zero();
  const PathResult res = simulate_pair(g, u0, nullptr, z, z, 1, 0, g.n_steps());
  CHECK(res.mass_u.back() == doctest::Approx(res.mass_u.front()).epsilon(1e-8));
}
