#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "shemass/kernels.hpp"

using namespace shemass;

namespace {
const DiffusionParams kUnit{1.0};
}

TEST_CASE("heat kernel peak and symmetry") {
  // (2*pi)^{-1/2}
  CHECK(heat_kernel(1.0, 0.0, kUnit) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
  for (double x : {0.1, 0.7, 2.5, 11.0}) {
    CHECK(heat_kernel(1.0, x, kUnit) == heat_kernel(1.0, -x, kUnit));
    CHECK(heat_kernel(1.0, x, kUnit) > 0.0);
  }
}

TEST_CASE("heat kernel integrates to one") {
  for (auto [r, theta] : {std::pair{0.5, 1.0}, std::pair{1.0, 2.0}}) {
    const DiffusionParams p{theta};
    const double mass =
        oracles::trapezoid([&](double a) { return heat_kernel(r, a, p); },
                           -20.0 * std::sqrt(theta * r), 20.0 * std::sqrt(theta * r), 40001);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("heat kernel domain errors") {
  CHECK_THROWS_AS(heat_kernel(0.0, 0.0, kUnit), std::domain_error);
  CHECK_THROWS_AS(heat_kernel(-1.0, 0.0, kUnit), std::domain_error);
  CHECK_THROWS_AS(heat_kernel(1.0, 0.0, DiffusionParams{0.0}), std::domain_error);
  CHECK_THROWS_AS(heat_kernel(1.0, 0.0, DiffusionParams{-2.0}), std::domain_error);
}

TEST_CASE("resolvent kernel peak values") {
  CHECK(resolvent_kernel(1.0, 0.0, kUnit) == 0.5);
  CHECK(resolvent_kernel(4.0, 0.0, kUnit) == 0.25);
  CHECK_THROWS_AS(resolvent_kernel(0.0, 0.0, kUnit), std::domain_error);
  CHECK_THROWS_AS(resolvent_kernel(-1.0, 0.0, kUnit), std::domain_error);
}

TEST_CASE("resolvent kernel peak identity on a log grid") {
  for (double beta : {0.5, 1.0, 2.0, 4.0, 16.0}) {
    for (double theta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const DiffusionParams p{theta};
      const double expected = 1.0 / (2.0 * std::sqrt(beta * theta));
      CHECK(resolvent_kernel(beta, 0.0, p) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("resolvent kernel is even and decreasing in |x|") {
  const DiffusionParams p{2.0};
  double prev = resolvent_kernel(1.0, 0.0, p);
  for (double x : {0.25, 0.5, 1.0, 3.0, 9.0}) {
    CHECK(resolvent_kernel(1.0, x, p) == resolvent_kernel(1.0, -x, p));
    CHECK(resolvent_kernel(1.0, x, p) < prev);
    prev = resolvent_kernel(1.0, x, p);
  }
}

TEST_CASE("resolvent kernel mass is 1/beta") {
  for (double beta : {0.5, 1.0, 2.0, 4.0}) {
    for (double theta : {0.5, 1.0, 2.0, 4.0}) {
      const DiffusionParams p{theta};
      const double s = std::sqrt(beta / theta);
      const double cut = 42.0 / s;
      const double body = oracles::simpson(
          [&](double x) { return resolvent_kernel(beta, x, p); }, 0.0, cut, 200001);
      const double tail = resolvent_kernel(beta, cut, p) / s;  // exact exponential tail
      CHECK(2.0 * (body + tail) == doctest::Approx(1.0 / beta).epsilon(1e-10));
    }
  }
}

TEST_CASE("resolvent kernel equals its Laplace-transform quadrature") {
  for (double beta : {0.5, 1.0, 4.0}) {
    for (double theta : {0.5, 1.0, 2.0}) {
      const DiffusionParams p{theta};
      for (double x : {0.0, 0.5, 1.0, 2.0}) {
        const double direct = resolvent_kernel(beta, x, p);
        const double via_laplace = oracles::laplace_resolvent(beta, x, theta);
        CHECK(std::abs(direct - via_laplace) < 1e-8);
      }
    }
  }
}

TEST_CASE("resolvent_apply on the zero profile is zero") {
  const GridWindow grid{-2.0, 1.0 / 64, 257};
  const Profile zero = make_constant(0.0, grid);
  const ResolventResult res = resolvent_apply(1.0, zero, kUnit);
  for (double g : res.values.samples()) CHECK(g == 0.0);
}

TEST_CASE("resolvent_apply of a wide constant is value/beta inside") {
  // integral of r_beta is 1/beta, so a constant c maps to ~c/beta far from
  // the window edges.
  const double beta = 2.0;
  const GridWindow grid{-40.0, 1.0 / 16, 1281};
  const Profile c = make_constant(3.0, grid);
  const ResolventResult res = resolvent_apply(beta, c, kUnit);
  const std::size_t mid = grid.n / 2;
  CHECK(res.values[mid] == doctest::Approx(3.0 / beta).epsilon(1e-6));
}

TEST_CASE("resolvent_apply matches the nested two-dimensional oracle") {
  // Production-style check at a fine mesh: the oracle rebuilds the kernel from
  // its defining time integral and convolves on the half mesh.
  const double beta = 1.0;
  const double h = 1.0 / 512;
  const GridWindow grid{-2.0, h, 2049};
  const Profile f = make_indicator(-1.0, 1.0, 1.0, grid);
  const ResolventResult res = resolvent_apply(beta, f, kUnit);
  const std::size_t mid = grid.n / 2;  // x = 0
  CHECK(res.values.x_at(mid) == doctest::Approx(0.0).epsilon(1e-12));

  // quadrature window extends past the support so the edge half-samples are
  // interior points of the integration domain
  const GridWindow fine{-1.25, h / 2, 2561};
  const Profile f2 = make_indicator(-1.0, 1.0, 1.0, fine);
  double oracle = 0.0;
  {
    double acc = 0.0;
    for (std::size_t j = 0; j < fine.n; ++j) {
      if (f2[j] == 0.0) continue;
      acc += f2[j] * oracles::laplace_resolvent(beta, -fine.x_at(j), 1.0, 4001);
    }
    oracle = acc * fine.dx;
  }
  CHECK(res.values[mid] == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("resolvent_apply serial and openmp agree bitwise") {
  const GridWindow grid{-4.0, 1.0 / 32, 257};
  const Profile f = make_gaussian_bump(0.5, 0.5, 1.0, grid);
  const ResolventResult a = resolvent_apply(1.5, f, kUnit, Exec::serial);
  const ResolventResult b = resolvent_apply(1.5, f, kUnit, Exec::openmp);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("resolvent_apply error cases") {
  const GridWindow grid{-1.0, 0.25, 9};
  const Profile f = make_constant(1.0, grid);
  CHECK_THROWS_AS(resolvent_apply(0.0, f, kUnit), std::domain_error);
  CHECK_THROWS_AS(resolvent_apply(-1.0, f, kUnit), std::domain_error);
}

TEST_CASE("mutual energy of anything with the zero profile is zero") {
  const GridWindow grid{-4.0, 1.0 / 32, 257};
  const Profile u = make_gaussian_bump(0.0, 0.5, 1.0, grid);
  const Profile zero = make_constant(0.0, grid);
  for (EnergyRoute route : {EnergyRoute::real_space, EnergyRoute::fourier}) {
    const EnergyReport rep = mutual_energy(u, zero, 1.0, kUnit, route);
    CHECK(rep.value == 0.0);
  }
}

TEST_CASE("mutual energy is symmetric") {
  const GridWindow grid{-8.0, 1.0 / 32, 513};
  const Profile u = make_gaussian_bump(-1.0, 0.4, 1.0, grid);
  const Profile v = make_indicator(0.5, 2.5, 0.7, grid);
  for (EnergyRoute route : {EnergyRoute::real_space, EnergyRoute::fourier}) {
    const double uv = mutual_energy(u, v, 1.0, kUnit, route).value;
    const double vu = mutual_energy(v, u, 1.0, kUnit, route).value;
    CHECK(uv == doctest::Approx(vu).epsilon(1e-13));
  }
}

TEST_CASE("mutual energy is monotone decreasing in beta") {
  const GridWindow grid{-8.0, 1.0 / 32, 513};
  const Profile u = make_gaussian_bump(0.0, 0.6, 1.0, grid);
  const Profile v = make_gaussian_bump(0.5, 0.4, 2.0, grid);
  double prev = std::numeric_limits<double>::infinity();
  for (double beta : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double e = mutual_energy(u, v, beta, kUnit, EnergyRoute::real_space).value;
    CHECK(e < prev);
    CHECK(e >= 0.0);
    prev = e;
  }
}

TEST_CASE("dual routes agree to 1e-6 relative for gaussian bumps") {
  const GridWindow grid{-16.0, 1.0 / 32, 1025};
  const Profile u = make_gaussian_bump(-0.5, 0.5, 1.0, grid);
  const Profile v = make_gaussian_bump(1.0, 0.7, 1.5, grid);
  for (double beta : {0.5, 1.0, 4.0}) {
    const double er = mutual_energy(u, v, beta, kUnit, EnergyRoute::real_space).value;
    const double ef = mutual_energy(u, v, beta, kUnit, EnergyRoute::fourier).value;
    CHECK(std::abs(er - ef) / std::max(er, 1e-300) < 1e-6);
  }
}

TEST_CASE("dual routes agree to 1e-3 relative for indicators") {
  const GridWindow grid{-8.0, 1.0 / 32, 513};
  const Profile u = make_indicator(0.0, 1.0, 1.0, grid);
  const Profile v = make_indicator(0.0, 1.0, 1.0, grid);
  const double er = mutual_energy(u, v, 1.0, kUnit, EnergyRoute::real_space).value;
  const double ef = mutual_energy(u, v, 1.0, kUnit, EnergyRoute::fourier).value;
  CHECK(std::abs(er - ef) / std::max(er, 1e-300) < 1e-3);
}

TEST_CASE("separated supports obey the exponential envelope") {
  // E_beta(u0,v0) <= (2 sqrt(beta theta))^{-1} |u0|_1 |v0|_1 exp(-Delta sqrt(beta/theta))
  const double delta = 10.0;
  const GridWindow grid{-16.0, 1.0 / 32, 1025};
  const Profile u = make_indicator(0.0, 1.0, 1.0, grid);
  const Profile v = make_indicator(delta + 1.0, delta + 2.0, 1.0, grid);
  for (double beta : {0.5, 1.0}) {
    const double e = mutual_energy(u, v, beta, kUnit, EnergyRoute::real_space).value;
    const double envelope = u.l1_norm() * v.l1_norm() *
                            std::exp(-delta * std::sqrt(beta)) / (2.0 * std::sqrt(beta));
    CHECK(e <= envelope);
    CHECK(e >= 0.0);
  }
}

TEST_CASE("mutual energy rejects mismatched grids") {
  const Profile u = make_constant(1.0, GridWindow{-1.0, 0.25, 9});
  const Profile v = make_constant(1.0, GridWindow{-1.0, 0.125, 17});
  CHECK_THROWS_AS(mutual_energy(u, v, 1.0, kUnit, EnergyRoute::real_space), std::domain_error);
}

TEST_CASE("energy reports carry a usable quadrature error estimate") {
  const GridWindow grid{-8.0, 1.0 / 64, 1025};
  const Profile u = make_gaussian_bump(0.0, 0.5, 1.0, grid);
  const EnergyReport rr = mutual_energy(u, u, 1.0, kUnit, EnergyRoute::real_space);
  const EnergyReport rf = mutual_energy(u, u, 1.0, kUnit, EnergyRoute::fourier);
  CHECK(rr.quadrature_error_estimate >= 0.0);
  CHECK(rf.quadrature_error_estimate >= 0.0);
  // The two routes differ by far less than the sum of their mesh-pair
  // estimates.
  CHECK(std::abs(rr.value - rf.value) <=
        2.0 * (rr.quadrature_error_estimate + rf.quadrature_error_estimate) + 1e-12);
}
