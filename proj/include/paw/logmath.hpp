#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>

namespace paw {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// ln n!, extended precision internally so differences of large log-factorials stay accurate.
long double log_factorial(std::int64_t n);

/// ln Γ(x + 1) for real x ≥ 0 (factorial extended through the Gamma function).
long double log_factorial_real(long double x);

/// ln binom(n, k); −∞ outside 0 ≤ k ≤ n.
long double log_binomial(std::int64_t n, std::int64_t k);

/// ln binom(n, k) with real k via Γ.
long double log_binomial_real(long double n, long double k);

/// exponent · ln(base) with the convention 0 · ln 0 = 0.
inline long double log_power(long double base, std::int64_t exponent) {
  if (exponent == 0) return 0.0L;
  if (base == 0.0L) return -std::numeric_limits<long double>::infinity();
  return static_cast<long double>(exponent) * std::log(base);
}

/// ln Σ exp(x_i) with max-shift; −∞ for an empty or all −∞ input.
double log_sum_exp(std::span<const double> log_terms);

/// Complex amplitude carried as (ln|a|, arg a).
struct LogAmplitude {
  double log_magnitude = kNegInf;
  double phase = 0.0;

  static LogAmplitude zero() { return {}; }
  static LogAmplitude from_complex(std::complex<double> z);

  bool is_zero() const { return log_magnitude == kNegInf; }
  double magnitude() const { return std::exp(log_magnitude); }
  double log_probability() const { return 2.0 * log_magnitude; }
  std::complex<double> to_complex() const;

  friend LogAmplitude operator*(const LogAmplitude& a, const LogAmplitude& b) {
    return {a.log_magnitude + b.log_magnitude, a.phase + b.phase};
  }
};

/// Phase-aware sum of amplitudes: shifts by the largest magnitude before exponentiating.
LogAmplitude log_sum(std::span<const LogAmplitude> terms);

}  // namespace paw
