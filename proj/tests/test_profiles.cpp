#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "shemass/profiles.hpp"

using namespace shemass;

TEST_CASE("indicator mass lands within one cell of the exact value") {
  const GridWindow grid{-8.0, 1.0 / 32, 513};
  const Profile p = make_indicator(-1.0, 1.0, 1.0, grid);
  CHECK(std::abs(p.l1_norm() - 2.0) <= grid.dx);
  // edges on grid points: the half-sample convention makes the sum exact
  CHECK(p.l1_norm() == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(p.linf_norm() == 1.0);
}

TEST_CASE("indicator with off-grid edges still lands within one cell") {
  const GridWindow grid{-8.0, 1.0 / 32, 513};
  const Profile p = make_indicator(-1.001, 1.0015, 2.0, grid);
  CHECK(std::abs(p.l1_norm() - 2.0 * 2.0025) <= 2.0 * grid.dx);
}

TEST_CASE("constant profile mass") {
  const double n_half = 6.0;
  const GridWindow grid{-n_half, 1.0 / 16, 193};
  const Profile p = make_constant(1.0, grid);
  CHECK(p.l1_norm() == doctest::Approx(2.0 * n_half).epsilon(1e-2));
}

TEST_CASE("gaussian bump reproduces its requested mass") {
  const GridWindow grid{-16.0, 1.0 / 32, 1025};
  for (auto [w, m] : {std::pair{0.5, 1.0}, std::pair{1.2, 3.5}}) {
    const Profile p = make_gaussian_bump(0.25, w, m, grid);
    CHECK(std::abs(p.l1_norm() - m) / m < 1e-6);
  }
}

TEST_CASE("profiles reject negative samples") {
  const GridWindow grid{0.0, 0.5, 4};
  CHECK_THROWS_AS(make_custom({1.0, -0.5, 0.0, 2.0}, grid), std::domain_error);
  CHECK_THROWS_AS(Profile::from_samples(0.0, 0.5, {0.0, -1e-9}), std::domain_error);
}

TEST_CASE("norms equal their recomputation") {
  const GridWindow grid{-2.0, 0.125, 33};
  const Profile p = make_gaussian_bump(0.0, 0.5, 2.0, grid);
  double sum = 0.0, mx = 0.0;
  for (double s : p.samples()) {
    sum += s;
    mx = std::max(mx, s);
  }
  CHECK(p.l1_norm() == p.dx() * sum);
  CHECK(p.linf_norm() == mx);
}

TEST_CASE("support separation on the spec examples") {
  const GridWindow grid{-8.0, 1.0 / 32, 513};
  const Profile a = make_indicator(0.0, 1.0, 1.0, grid);
  const Profile b = make_indicator(-2.0, -1.0, 1.0, grid);
  const Profile c = make_indicator(3.0, 5.0, 1.0, grid);
  const Profile wide = make_indicator(-0.5, 0.5, 1.0, grid);

  const GridWindow big{-16.0, 1.0 / 32, 1025};
  const Profile far_a = make_indicator(0.0, 1.0, 1.0, big);
  const Profile far_b = make_indicator(10.0, 11.0, 1.0, big);
  CHECK(support_separation(far_a, far_b) == doctest::Approx(9.0).epsilon(1e-12));

  CHECK(support_separation(a, wide) == 0.0);
  CHECK(support_separation(b, c) == doctest::Approx(4.0).epsilon(1e-12));
  // symmetry
  CHECK(support_separation(b, c) == support_separation(c, b));
}

TEST_CASE("support separation rejects the zero profile") {
  const GridWindow grid{-1.0, 0.25, 9};
  const Profile z = make_constant(0.0, grid);
  const Profile one = make_constant(1.0, grid);
  CHECK_THROWS_AS(support_separation(z, one), std::domain_error);
  CHECK_THROWS_AS(support_separation(one, z), std::domain_error);
}

TEST_CASE("spectrum modulus never exceeds the L1 norm") {
  const GridWindow grid{-8.0, 1.0 / 32, 513};
  for (const Profile& p : {make_indicator(-1.0, 1.0, 1.0, grid),
                           make_gaussian_bump(0.5, 0.4, 2.0, grid),
                           make_constant(0.3, grid)}) {
    const Spectrum sp = spectrum(p, 1);
    CHECK(sp.max_modulus() <= p.l1_norm() + 1e-9);
    // peak is at frequency zero for nonnegative data
    CHECK(sp.max_modulus() == doctest::Approx(p.l1_norm()).epsilon(1e-12));
  }
}

TEST_CASE("spectrum matches the analytic transform of a gaussian") {
  // |fhat(z)| = m * exp(-w^2 z^2 / 2)
  const GridWindow grid{-16.0, 1.0 / 32, 1025};
  const Profile p = make_gaussian_bump(1.0, 0.5, 2.0, grid);
  const Spectrum sp = spectrum(p, 1);
  for (std::size_t k = 0; k < sp.z.size(); k += 97) {
    const double z = sp.z[k];
    if (std::abs(z) > 20.0) continue;
    const double expect = 2.0 * std::exp(-0.5 * 0.5 * 0.5 * z * z);  // m exp(-w^2 z^2/2), w=0.5
    CHECK(std::abs(sp.fhat[k]) == doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("overlap measure with a zero profile is zero") {
  const GridWindow grid{-4.0, 1.0 / 16, 129};
  const Profile u = make_indicator(-1.0, 1.0, 1.0, grid);
  const Profile z = make_constant(0.0, grid);
  CHECK(fourier_overlap_measure(u, z, 1e-6) == 0.0);
}

TEST_CASE("overlap of a bump with itself is positive and shrinks as eps grows") {
  const GridWindow grid{-8.0, 1.0 / 32, 513};
  const Profile u = make_gaussian_bump(0.0, 0.5, 1.0, grid);
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {1e-8, 1e-4, 1e-2, 0.5}) {
    const double m = fourier_overlap_measure(u, u, eps);
    CHECK(m >= 0.0);
    CHECK(m <= prev);
    prev = m;
  }
  CHECK(fourier_overlap_measure(u, u, 1e-8) > 0.0);
}

TEST_CASE("overlap is bounded by each profile's own support measure") {
  const GridWindow grid{-8.0, 1.0 / 32, 513};
  const Profile u = make_indicator(-1.0, 1.0, 1.0, grid);
  const Profile v = make_gaussian_bump(0.0, 0.7, 1.0, grid);
  const double eps = 1e-3;
  const double both = fourier_overlap_measure(u, v, eps);
  CHECK(both <= spectrum_support(u, eps).measure());
  CHECK(both <= spectrum_support(v, eps).measure());
}

TEST_CASE("indicator overlap agrees with a doubled-resolution recomputation") {
  const GridWindow grid{-8.0, 1.0 / 32, 513};
  const Profile u = make_indicator(-1.0, 1.0, 1.0, grid);
  const double eps = 0.01 * spectrum(u, 1).max_modulus();
  const double coarse = fourier_overlap_measure(u, u, eps);
  const double refined = fourier_overlap_measure(u, u, eps, 2);
  const double bin = spectrum(u, 1).dz;
  CHECK(std::abs(coarse - refined) <= bin);
}

TEST_CASE("overlap requires a common grid and positive threshold") {
  const Profile u = make_constant(1.0, GridWindow{-1.0, 0.25, 9});
  const Profile v = make_constant(1.0, GridWindow{-1.0, 0.125, 17});
  CHECK_THROWS_AS(fourier_overlap_measure(u, v, 1e-6), std::domain_error);
  CHECK_THROWS_AS(fourier_overlap_measure(u, u, 0.0), std::domain_error);
  CHECK_THROWS_AS(fourier_overlap_measure(u, u, -1.0), std::domain_error);
}

TEST_CASE("csv round trip is exact") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> samples(64);
    for (double& s : samples) s = unif(rng);
    const Profile p = Profile::from_samples(-1.75, 1.0 / 32, samples);
    std::stringstream ss;
    profile_to_csv(p, ss);
    const Profile q = profile_from_csv(ss);
    REQUIRE(q.size() == p.size());
    CHECK(q.grid_origin() == p.grid_origin());
    CHECK(q.dx() == p.dx());
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(q[i] == p[i]);
    CHECK(q.l1_norm() == p.l1_norm());
  }
}

TEST_CASE("json descriptor round trip") {
  const GridWindow grid{-4.0, 1.0 / 16, 129};
  ProfileDescriptor d;
  d.kind = ProfileKind::indicator;
  d.lo = -1.0;
  d.hi = 2.0;
  d.amplitude = 0.5;
  const std::string text = profile_descriptor_to_json(d, grid);
  const std::string path = "test_profile_roundtrip.json";
  {
    std::ofstream os(path);
    os << text;
  }
  const Profile p = profile_from_json_file(path);
  const Profile q = make_profile(d, grid);
  REQUIRE(p.size() == q.size());
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == q[i]);
  std::remove(path.c_str());
}
