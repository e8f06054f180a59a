#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "paw/classical.hpp"
#include "paw/coherent.hpp"
#include "paw/error.hpp"
#include "paw/pawstate.hpp"
#include "paw/quadrature.hpp"

using namespace paw;

namespace {

const double kRoot2 = std::sqrt(2.0);

PawState j3_example() {
  return PawState::build(6, parse_rational("3/4"), 4, {{2, 1.0 / kRoot2}, {6, 1.0 / kRoot2}});
}

PawState large_j(int J) {
  return PawState::build(2 * J, Rational(3, 4 * J), 1, {{2 * J / 3, 1.0}, {2 * J, 1.0}});
}

}  // namespace

TEST_CASE("energy of theta") {
  const ClockSpec clock(6, 0.75);
  CHECK(energy_of_theta(clock, 0.0) == 0.0);
  CHECK(energy_of_theta(clock, kPi) == doctest::Approx(2 * 3 * 0.75));
  // εJ = 3ω/4
  CHECK(energy_of_theta(ClockSpec(1140, 3.0 / 4.0 / 570.0), std::acos(1.0 / 3.0)) == doctest::Approx(0.5));
  CHECK(clock_energy_expectation(clock, 1.2) == doctest::Approx(energy_of_theta(clock, 1.2)));
}

TEST_CASE("oscillator energy expectation") {
  const OscillatorSpec osc(170, 1.0);
  CHECK(oscillator_energy_expectation(osc, 0.0) == doctest::Approx(0.5));
  CHECK(oscillator_energy_expectation(osc, std::sqrt(1.0)) == doctest::Approx(170.5));
  CHECK(oscillator_energy_expectation(osc, 1.0) / (170.0) == doctest::Approx(1.0 + 1.0 / 340.0));
  // θ = arccos(1/3) with εJ = 3ω/4 matches the n = 0 level at α = 0
  CHECK(oscillator_energy_expectation(OscillatorSpec(1, 1.0), 0.0) ==
        doctest::Approx(energy_of_theta(ClockSpec(60, 0.025), std::acos(1.0 / 3.0))));
}

TEST_CASE("stationary residual") {
  // pure |4⟩ at θ = π with 2Jε = 9ω/2
  CHECK(stationary_residual(j3_example(), kPi, 0.3) <= 1e-12);

  double previous = 1e9;
  for (int J : {30, 120, 570}) {
    const auto s = large_j(J);
    const double peak = chi2_local_maxima(s).front();
    const double r = stationary_residual(s, peak, 0.0);
    CHECK(r <= 0.05 * s.omega());
    CHECK(r <= previous + 1e-15);
    previous = r;
  }

  // equal-weight point between the two J = 3 peaks: tan⁸(θ/2) = 15
  const double between = 2.0 * std::atan(std::pow(15.0, 0.125));
  CHECK(stationary_residual(j3_example(), between, 0.0) > 0.5 * 1.0);
}

TEST_CASE("beta amplitude") {
  // single-pair support factorizes
  const auto single = PawState::forge(6, parse_rational("3/4"), 4, {{2, 1, 1.0}});
  const SphereCoordinate om(1.1, 0.4);
  const std::complex<double> a(0.3, -0.2);
  const double lhs = beta_amplitude(single, om, a).log_probability();
  const double rhs = scs_overlap(om, 6, 2).log_probability() + hcs_overlap(a, 4, 1).log_probability();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));

  CHECK(beta_amplitude(j3_example(), {0.0, 0.2}, a).is_zero());

  // direct complex sum
  const auto s = j3_example();
  std::complex<double> direct = 0.0;
  for (const auto& c : s.components()) {
    direct += c.c * scs_overlap(om, 6, c.m_plus_J).to_complex() * hcs_overlap(a, 4, c.n).to_complex();
  }
  CHECK(std::abs(beta_amplitude(s, om, a).to_complex() - direct) < 1e-14);
}

TEST_CASE("beta is normalized over both phase spaces") {
  const auto s = PawState::build(6, parse_rational("3/4"), 4, {{2, {0.6, 0.2}}, {6, {-0.3, 0.7}}});
  const auto radial = gauss_legendre(80, 0.0, 6.0);  // radius in (Q, P)
  const std::size_t n_angle = 16;
  const double total = integrate_sphere(
      [&](double theta, double phi) {
        double plane = 0.0;
        for (std::size_t i = 0; i < radial.size(); ++i) {
          const double rho = radial.nodes[i];
          double ring = 0.0;
          for (std::size_t j = 0; j < n_angle; ++j) {
            const double ang = 2.0 * kPi * double(j) / double(n_angle);
            const auto z = PlaneCoordinate::from_QP(rho * std::cos(ang), rho * std::sin(ang));
            ring += std::exp(beta_amplitude(s, {theta, phi}, z.alpha).log_probability());
          }
          plane += radial.weights[i] * rho * ring * 2.0 * kPi / double(n_angle);
        }
        return plane * plane_measure_weight(s.M());
      },
      6, 12, 12, 2.0 * kPi);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("energy matching on the ridge") {
  const auto s = PawState::build_from_levels(510, parse_rational("1/2"), 170,
                                             {{170, 1.0 / kRoot2}, {85, 1.0 / kRoot2}});
  for (const auto& c : s.components()) {
    // χ² peak of component m + J sits at sin²(θ/2) = (m + J)/2J
    const double theta = 2.0 * std::asin(std::sqrt(double(c.m_plus_J) / 510.0));
    double best = -1e300, best_r = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double r = 2.0 * double(i) / 4000.0;
      const double v = beta_amplitude(s, {theta, 0.0}, r).log_probability();
      if (v > best) best = v, best_r = r;
    }
    const double gap = std::abs(170.0 * best_r * best_r - energy_of_theta(s.clock(), theta));
    CHECK(gap <= 0.5 + 2.0 / std::sqrt(170.0));
  }
}

TEST_CASE("surviving configurations") {
  const auto s = PawState::build_from_levels(510, parse_rational("1/2"), 170,
                                             {{170, 1.0 / kRoot2}, {85, 1.0 / kRoot2}});
  const auto conf = surviving_configurations(s);
  REQUIRE(conf.size() == 2);
  CHECK(conf[0].n == 85);
  CHECK(conf[0].radius == doctest::Approx(1.0));
  CHECK(conf[1].radius == doctest::Approx(kRoot2));
  CHECK(conf[1].energy == doctest::Approx(170.5));
  CHECK(conf[1].energy_asymptotic == doctest::Approx(170.0));
  CHECK(conf[1].radius_exact == doctest::Approx(std::sqrt(341.0 / 170.0)));
  CHECK(conf[1].e == doctest::Approx(170.5 / 170.0));

  for (std::int64_t M : {20, 50, 400}) {
    const auto dense = PawState::build_uniform(int(3 * M), parse_rational("1/2"), M);
    CHECK(dense.ratios().kappa == Rational(3, 4));
    CHECK(dense.ratios().r == Rational(2, 3));
    const auto d = surviving_configurations(dense);
    CHECK(d.size() == std::size_t(3 * M / 2));
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i].radius == doctest::Approx(std::sqrt(2.0 * double(d[i].n) / double(M))));
      CHECK(d[i].radius <= std::sqrt(3.0));
      CHECK(d[i].e < 1.5);
      if (i > 0) CHECK(d[i].energy - d[i - 1].energy == doctest::Approx(dense.omega()));
    }
  }
}

TEST_CASE("classical orbit") {
  const double Mw = 170.0;
  for (const auto& c : classical_orbit(OrbitParams::canonical(0.0, Mw), std::vector<double>{0.0, 0.1, 3.0})) {
    CHECK(c.q == 0.0);
    CHECK(c.p == 0.0);
  }
  const auto start = orbit_point(OrbitParams::canonical(2.0, Mw), 0.0);
  CHECK(start.q == doctest::Approx(2.0 / Mw));
  CHECK(start.p == doctest::Approx(0.0).scale(1e-15));

  // E = Mω: q√(Mω) has amplitude √2 and period 2π/(Mω)
  const auto params = OrbitParams::canonical(Mw, Mw);
  const double period = 2.0 * kPi / Mw;
  std::vector<double> ts;
  for (int i = 0; i < 1000; ++i) ts.push_back(period * i / 1000.0);
  double qmax = 0.0;
  for (const auto& c : classical_orbit(params, ts)) {
    qmax = std::max(qmax, c.Q(Mw));
    CHECK(std::abs(oscillator_hamiltonian(c.q, c.p, Mw) - Mw) <= 1e-12 * Mw);
  }
  CHECK(qmax == doctest::Approx(kRoot2));
  CHECK(orbit_point(params, 0.37 + period).q == doctest::Approx(orbit_point(params, 0.37).q).epsilon(1e-10));

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const OrbitParams p{100.0 * u(rng), 5.0 * u(rng), 6.0 * u(rng), 0.5 + 50.0 * u(rng)};
    const auto c = orbit_point(p, 10.0 * u(rng));
    if (p.E > 0) CHECK(std::abs(oscillator_hamiltonian(c.q, c.p, p.M_omega) - p.E) <= 1e-12 * p.E);
  }
}

TEST_CASE("hamilton residuals") {
  for (double eta_factor : {1.0, 2.0}) {
    const double Mw = 3.0;
    const OrbitParams p{5.0, eta_factor * Mw, 0.2, Mw};
    const double dt = 1e-4 / Mw;
    const auto [rq, rp] = hamilton_residual(p, 0.8, dt);
    // central difference truncation: amplitude · η³ dt² / 6
    const double eta3 = std::pow(p.eta, 3) * dt * dt / 6.0;
    CHECK(rq <= 1.01 * std::sqrt(2 * p.E) / Mw * eta3 + 1e-12);
    CHECK(rp <= 1.01 * std::sqrt(2 * p.E) * eta3 + 1e-12);
    const auto [rq2, rp2] = hamilton_residual(p, 0.8, 2 * dt);
    CHECK(rq2 > rq);
    CHECK(rp2 > rp);
  }
  const auto [zq, zp] = hamilton_residual(OrbitParams::canonical(0.0, 2.0), 1.0, 1e-3);
  CHECK(zq == 0.0);
  CHECK(zp == 0.0);
}

TEST_CASE("clock to oscillator map") {
  const auto p = OrbitParams::canonical(170.0, 170.0, 0.1);
  const auto a = clock_to_oscillator(p, 0.01);
  CHECK(std::abs(a) == doctest::Approx(1.0));
  CHECK(std::arg(a) == doctest::Approx(std::remainder(-(170.0 * 0.01 + 0.1), 2 * kPi)));
  // the chart image of the orbit point is the GCS label of the same configuration
  const auto c = orbit_point(p, 0.01);
  const auto z = PlaneCoordinate::from_qp(c.q, c.p, 170.0);
  CHECK(std::abs(z.alpha - a) < 1e-12);
}

TEST_CASE("mu labelling") {
  CHECK(mu_of(0, 6) == -1.0);
  CHECK(mu_of(6, 6) == 1.0);
  CHECK(mu_of(3, 6) == 0.0);
  for (int two_J : {5, 6, 101}) {
    for (std::int64_t k = 0; k <= two_J; ++k) CHECK(nearest_m_plus_J(mu_of(k, two_J), two_J) == k);
  }
  CHECK(nearest_m_plus_J(0.0, 5) == 3);  // m + J = 2.5 rounds away from zero
  CHECK_THROWS_AS(nearest_m_plus_J(1.5, 6), Error);
}

TEST_CASE("orbit csv") {
  std::ostringstream out;
  const auto configs = classical_orbit(OrbitParams::canonical(1.0, 2.0), std::vector<double>{0.0});
  write_orbit_csv(out, configs, 2.0);
  CHECK(out.str().rfind("E,t,q,p,Q,P\n", 0) == 0);
  CHECK(out.str().find("0.70710678118654757") != std::string::npos);  // q = √2 / 2
}
