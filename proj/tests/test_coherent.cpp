#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "paw/coherent.hpp"
#include "paw/error.hpp"
#include "paw/logmath.hpp"
#include "paw/quadrature.hpp"

using namespace paw;

namespace {

// Direct products in double precision, only usable for small arguments.
double naive_binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::complex<double> naive_scs(double theta, double phi, int two_J, int k) {
  const double mag = std::sqrt(naive_binomial(two_J, k)) * std::pow(std::cos(theta / 2), two_J - k) *
                     std::pow(std::sin(theta / 2), k);
  return std::polar(mag, -phi * k);
}

std::complex<double> naive_hcs(std::complex<double> alpha, int M, int n) {
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  const double a = std::abs(alpha);
  const double mag = std::exp(-M * a * a / 2) * std::pow(std::sqrt(double(M)) * a, n) / std::sqrt(fact);
  return std::polar(mag, -n * std::arg(alpha));
}

double rel_err(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace

TEST_CASE("log_factorial and log_binomial") {
  CHECK(log_factorial(0) == 0.0L);
  CHECK(log_factorial(1) == 0.0L);
  CHECK(double(log_factorial(10)) == doctest::Approx(std::log(3628800.0)).epsilon(1e-15));
  CHECK(double(log_binomial(10, 3)) == doctest::Approx(std::log(120.0)).epsilon(1e-15));
  CHECK(log_binomial(6, 7) == -std::numeric_limits<long double>::infinity());
  CHECK(log_binomial(6, -1) == -std::numeric_limits<long double>::infinity());
  CHECK(double(log_binomial_real(6.0L, 2.0L)) == doctest::Approx(std::log(15.0)).epsilon(1e-14));
  CHECK(double(log_factorial_real(4.0L)) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
}

TEST_CASE("log_sum_exp and log_sum") {
  const std::vector<double> xs{1000.0, 1000.0};
  CHECK(log_sum_exp(xs) == doctest::Approx(1000.0 + std::log(2.0)));
  CHECK(log_sum_exp(std::vector<double>{}) == kNegInf);
  CHECK(log_sum_exp(std::vector<double>{kNegInf, kNegInf}) == kNegInf);
  CHECK(log_sum_exp(std::vector<double>{kNegInf, 0.0}) == 0.0);

  const std::vector<LogAmplitude> cancel{LogAmplitude::from_complex({1.0, 0.0}),
                                         LogAmplitude::from_complex({-1.0, 0.0})};
  CHECK(log_sum(cancel).magnitude() < 1e-15);
  const std::vector<LogAmplitude> mixed{LogAmplitude::from_complex({0.3, 0.4}),
                                        LogAmplitude::from_complex({-1.1, 2.0})};
  CHECK(rel_err(log_sum(mixed).to_complex(), {-0.8, 2.4}) < 1e-14);
  CHECK(LogAmplitude::from_complex({0.0, 0.0}).is_zero());
}

TEST_CASE("sphere coordinate validation") {
  CHECK_NOTHROW(SphereCoordinate(0.0, 0.0));
  CHECK_NOTHROW(SphereCoordinate(kPi, 100.0));
  CHECK_THROWS_AS(SphereCoordinate(-0.1, 0.0), Error);
  CHECK_THROWS_AS(SphereCoordinate(3.2, 0.0), Error);
  CHECK_THROWS_AS(SphereCoordinate(1.0, -0.5), Error);
  CHECK_THROWS_AS(SphereCoordinate(std::nan(""), 0.0), Error);
}

TEST_CASE("spin coherent overlap: poles and a worked value") {
  // |⟨θ=0|J,−J⟩| = 1, the rest vanish; θ = π selects m = J
  CHECK(scs_overlap({0.0, 0.3}, 6, 0).magnitude() == 1.0);
  CHECK(scs_overlap({0.0, 0.3}, 6, 1).is_zero());
  CHECK(scs_overlap({kPi, 0.3}, 6, 6).magnitude() == doctest::Approx(1.0));
  CHECK(scs_overlap({kPi, 0.3}, 6, 5).is_zero());
  // J = 3, m = −1, θ = π/2: binom(6,2)/64
  CHECK(std::exp(scs_log_probability(kPi / 2, 6, 2)) == doctest::Approx(15.0 / 64.0).epsilon(1e-14));
  // phase −φ(m + J)
  CHECK(scs_overlap({1.0, 0.25}, 6, 2).phase == doctest::Approx(-0.5));
}

TEST_CASE("spin coherent overlap matches naive products for 2J <= 40") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> theta(0.0, kPi), phi(0.0, 20.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int two_J = 1 + int(rng() % 40);
    const int k = int(rng() % (two_J + 1));
    const double t = theta(rng), f = phi(rng);
    const auto naive = naive_scs(t, f, two_J, k);
    if (std::abs(naive) < 1e-250) continue;
    CHECK(rel_err(scs_overlap({t, f}, two_J, k).to_complex(), naive) < 1e-10);
  }
}

TEST_CASE("Dicke completeness: sum over m of |<Omega|J,m>|^2 is 1") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> theta(0.0, kPi);
  for (int two_J : {1, 2, 7, 40, 100, 511, 1200}) {
    for (int trial = 0; trial < 20; ++trial) {
      const double t = trial == 0 ? 0.0 : (trial == 1 ? kPi : theta(rng));
      std::vector<double> logs;
      for (int k = 0; k <= two_J; ++k) logs.push_back(scs_log_probability(t, two_J, k));
      CHECK(std::abs(std::exp(log_sum_exp(logs)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("glauber coherent overlap") {
  CHECK(hcs_overlap({0.0, 0.0}, 4, 0).magnitude() == 1.0);
  CHECK(hcs_overlap({0.0, 0.0}, 4, 3).is_zero());
  CHECK(hcs_overlap({0.6, 0.8}, 1, 2).phase == doctest::Approx(-2.0 * std::atan2(0.8, 0.6)));
  // Poisson pmf with mean 4 at n = 2
  CHECK(std::exp(hcs_log_probability(4.0, 2)) == doctest::Approx(8.0 * std::exp(-4.0)).epsilon(1e-14));
  CHECK(std::exp(hcs_log_probability(0.0, 0)) == 1.0);

  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 400; ++trial) {
    const std::complex<double> a(u(rng), u(rng));
    const int M = 1 + int(rng() % 10), n = int(rng() % 30);
    const auto naive = naive_hcs(a, M, n);
    if (std::abs(naive) < 1e-250) continue;
    CHECK(rel_err(hcs_overlap(a, M, n).to_complex(), naive) < 1e-10);
  }
}

TEST_CASE("Poisson normalization: sum over n of |<alpha|n>|^2 is 1") {
  for (double x : {0.0, 0.5, 3.0, 40.0, 700.0, 5000.0}) {
    std::vector<double> logs;
    const auto n_max = std::int64_t(x + 40.0 * std::sqrt(x + 1.0) + 50.0);
    for (std::int64_t n = 0; n <= n_max; ++n) logs.push_back(hcs_log_probability(x, n));
    CHECK(std::abs(std::exp(log_sum_exp(logs)) - 1.0) < 1e-12);
  }
}

TEST_CASE("phase plane charts round-trip") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-5.0, 5.0), mw(0.1, 500.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double q = u(rng), p = u(rng), Mw = mw(rng);
    const auto z = PlaneCoordinate::from_qp(q, p, Mw);
    CHECK(z.q(Mw) == doctest::Approx(q).epsilon(1e-13));
    CHECK(z.p(Mw) == doctest::Approx(p).epsilon(1e-13));
    const auto w = PlaneCoordinate::from_QP(z.Q(), z.P());
    CHECK(std::abs(w.alpha - z.alpha) <= 1e-13 * (1.0 + std::abs(z.alpha)));
    CHECK(z.Q() == doctest::Approx(q * std::sqrt(Mw)).epsilon(1e-13));
    CHECK(std::abs(z.alpha) == doctest::Approx(std::hypot(z.Q(), z.P()) / std::sqrt(2.0)));
  }
}

TEST_CASE("plane measure resolves the identity") {
  // ∫ dμ(α) |⟨α|n⟩|² = 1 in polar form over Q, P
  const auto check = [](std::int64_t M, std::int64_t n) {
    const double R = std::sqrt(2.0 * (n + 12.0 * std::sqrt(n + 1.0) + 40.0) / M) * 1.0;
    const auto rule = gauss_legendre(400, 0.0, R * std::sqrt(2.0));
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double rho = rule.nodes[i];  // radius in (Q, P)
      const double x = M * rho * rho / 2.0;
      total += rule.weights[i] * 2.0 * kPi * rho * std::exp(hcs_log_probability(x, n));
    }
    return total * plane_measure_weight(M);
  };
  CHECK(check(4, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(check(9, 3) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(plane_measure_weight(4) == doctest::Approx(4.0 / (2.0 * kPi)));
}

TEST_CASE("sphere measure resolves the identity") {
  for (int two_J : {1, 6, 30}) {
    for (int k = 0; k <= two_J; k += std::max(1, two_J / 5)) {
      const double total = integrate_sphere(
          [&](double t, double) { return std::exp(scs_log_probability(t, two_J, k)); }, two_J,
          std::size_t(two_J + 4), 1, 2.0 * kPi);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK(sphere_measure_weight(kPi / 2, 6) == doctest::Approx(7.0 / (4.0 * kPi)));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  for (std::size_t n : {1u, 2u, 5u, 32u, 300u}) {
    const auto rule = gauss_legendre(n, 0.0, 2.0);
    for (std::size_t d = 0; d <= 2 * n - 1 && d <= 40; ++d) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i] / 2.0, double(d));
      CHECK(s == doctest::Approx(2.0 / double(d + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("parallel_for visits every index and propagates exceptions") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS(parallel_for(10, [](std::size_t i) {
    if (i == 7) throw std::runtime_error("boom");
  }));
}
