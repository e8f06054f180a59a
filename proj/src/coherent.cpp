#include "paw/coherent.hpp"

#include <algorithm>
#include <string>

#include "paw/error.hpp"

namespace paw {

long double log_factorial(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "log_factorial of negative integer");
  if (n < 2) return 0.0L;
  return std::lgamma(static_cast<long double>(n) + 1.0L);
}

long double log_factorial_real(long double x) {
  if (x < 0.0L) throw Error(ErrorCode::InvalidArgument, "log_factorial_real of negative value");
  return std::lgamma(x + 1.0L);
}

long double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<long double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

long double log_binomial_real(long double n, long double k) {
  if (k < 0.0L || k > n) return -std::numeric_limits<long double>::infinity();
  return log_factorial_real(n) - log_factorial_real(k) - log_factorial_real(n - k);
}

double log_sum_exp(std::span<const double> log_terms) {
  double peak = kNegInf;
  for (double x : log_terms) peak = std::max(peak, x);
  if (peak == kNegInf) return kNegInf;
  long double acc = 0.0L;
  for (double x : log_terms) {
    if (x != kNegInf) acc += std::exp(static_cast<long double>(x) - peak);
  }
  return static_cast<double>(peak + std::log(acc));
}

LogAmplitude LogAmplitude::from_complex(std::complex<double> z) {
  const double mag = std::abs(z);
  if (mag == 0.0) return zero();
  return {std::log(mag), std::arg(z)};
}

std::complex<double> LogAmplitude::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_magnitude), phase);
}

LogAmplitude log_sum(std::span<const LogAmplitude> terms) {
  double peak = kNegInf;
  for (const auto& t : terms) peak = std::max(peak, t.log_magnitude);
  if (peak == kNegInf) return LogAmplitude::zero();
  std::complex<double> acc{0.0, 0.0};
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    acc += std::polar(std::exp(t.log_magnitude - peak), t.phase);
  }
  const double mag = std::abs(acc);
  if (mag == 0.0) return LogAmplitude::zero();
  return {peak + std::log(mag), std::arg(acc)};
}

SphereCoordinate::SphereCoordinate(double theta_, double phi_) : theta(theta_), phi(phi_) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw Error(ErrorCode::InvalidArgument, "theta outside [0, pi]: " + std::to_string(theta));
  }
  if (!(phi >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "phi must be >= 0: " + std::to_string(phi));
  }
}

HalfAngleLogs HalfAngleLogs::at(double theta) {
  constexpr long double inf = std::numeric_limits<long double>::infinity();
  if (theta <= 0.0) return {0.0L, -inf};
  if (theta >= kPi) return {-inf, 0.0L};
  const long double half = 0.5L * static_cast<long double>(theta);
  return {std::log(std::cos(half)), std::log(std::sin(half))};
}

PlaneCoordinate PlaneCoordinate::from_qp(double q, double p, double M_omega) {
  return {std::sqrt(0.5 * M_omega) * std::complex<double>(q, p / M_omega)};
}

PlaneCoordinate PlaneCoordinate::from_QP(double Q, double P) {
  return {std::complex<double>(Q, P) / std::sqrt(2.0)};
}

double PlaneCoordinate::q(double M_omega) const {
  return alpha.real() * std::sqrt(2.0 / M_omega);
}

double PlaneCoordinate::p(double M_omega) const {
  return alpha.imag() * std::sqrt(2.0 * M_omega);
}

double PlaneCoordinate::Q() const { return alpha.real() * std::sqrt(2.0); }
double PlaneCoordinate::P() const { return alpha.imag() * std::sqrt(2.0); }

namespace {

long double scs_log_magnitude(const HalfAngleLogs& logs, int two_J, std::int64_t k) {
  const long double lm = 0.5L * log_binomial(two_J, k);
  const std::int64_t cos_exp = two_J - k;
  const long double c = cos_exp == 0 ? 0.0L : static_cast<long double>(cos_exp) * logs.log_cos;
  const long double s = k == 0 ? 0.0L : static_cast<long double>(k) * logs.log_sin;
  return lm + c + s;
}

void check_ladder(int two_J, std::int64_t m_plus_J) {
  if (two_J < 1 || m_plus_J < 0 || m_plus_J > two_J) {
    throw Error(ErrorCode::InvalidArgument,
                "m+J = " + std::to_string(m_plus_J) + " outside {0..2J}");
  }
}

}  // namespace

LogAmplitude scs_overlap(const SphereCoordinate& omega, int two_J, std::int64_t m_plus_J) {
  check_ladder(two_J, m_plus_J);
  const auto logs = HalfAngleLogs::at(omega.theta);
  const double lm = static_cast<double>(scs_log_magnitude(logs, two_J, m_plus_J));
  if (lm == kNegInf) return LogAmplitude::zero();
  return {lm, -omega.phi * static_cast<double>(m_plus_J)};
}

double scs_log_probability(double theta, int two_J, std::int64_t m_plus_J) {
  check_ladder(two_J, m_plus_J);
  return static_cast<double>(2.0L * scs_log_magnitude(HalfAngleLogs::at(theta), two_J, m_plus_J));
}

LogAmplitude hcs_overlap(std::complex<double> alpha, std::int64_t M, std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "Fock index must be >= 0");
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "M must be >= 1");
  const long double abs_alpha = std::abs(std::complex<long double>(alpha.real(), alpha.imag()));
  const long double x = static_cast<long double>(M) * abs_alpha * abs_alpha;
  const long double radial = std::sqrt(static_cast<long double>(M)) * abs_alpha;
  const long double lm = -0.5L * x + log_power(radial, n) - 0.5L * log_factorial(n);
  if (std::isinf(lm)) return LogAmplitude::zero();
  const double phase = n == 0 ? 0.0 : -static_cast<double>(n) * std::arg(alpha);
  return {static_cast<double>(lm), phase};
}

double hcs_log_probability(double M_abs_alpha_sq, std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "Fock index must be >= 0");
  const long double x = M_abs_alpha_sq;
  return static_cast<double>(-x + log_power(x, n) - log_factorial(n));
}

double sphere_measure_weight(double theta, int two_J) {
  return (two_J + 1.0) / (4.0 * kPi) * std::sin(theta);
}

double plane_measure_weight(std::int64_t M) { return static_cast<double>(M) / (2.0 * kPi); }

}  // namespace paw
