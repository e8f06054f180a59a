#pragma once

// Exact solution of the stationarity constraint n + 1/2 = κr (m + J).
//
// Spin quantum numbers are carried as integers: 2J, and the ladder index
// m + J ∈ {0, …, 2J}. All comparisons against κr are exact rationals.

#include <cstdint>
#include <utility>
#include <vector>

#include "paw/rational.hpp"

namespace paw {

struct ClockSpec {
  int two_J = 1;
  double epsilon = 1.0;  // energy per ladder step; Ĥ_C = εJ ĵ₀ + F

  ClockSpec() = default;
  ClockSpec(int two_J, double epsilon);

  double J() const { return 0.5 * two_J; }
  /// Gauge offset making Ĥ_C|J,−J⟩ = 0.
  double F() const { return epsilon * J(); }
};

struct OscillatorSpec {
  std::int64_t M = 1;
  double omega = 1.0;

  OscillatorSpec() = default;
  OscillatorSpec(std::int64_t M, double omega);
};

struct CouplingRatios {
  Rational kappa;      // εJ/(ωM)
  Rational r;          // M/J
  Rational kappa_r;    // ε/ω
  Rational kappa_r_J;  // εJ/ω

  /// Built from the exact ratio ε/ω; throws Error{InvalidArgument} unless everything is positive.
  static CouplingRatios from(const Rational& epsilon_over_omega, int two_J, std::int64_t M);
};

/// κr = (2 i_n + 1) / (2 i_m) in lowest terms.
struct ReducedRatio {
  std::int64_t i_n = 0;
  std::int64_t i_m = 1;

  Rational kappa_r() const;
  friend bool operator==(const ReducedRatio&, const ReducedRatio&) = default;
};

struct AllowedPair {
  std::int64_t m_plus_J = 0;
  std::int64_t n = 0;
  std::int64_t l = 0;

  /// 2m; m itself is half-integer when 2J is odd.
  std::int64_t two_m(int two_J) const { return 2 * m_plus_J - two_J; }
  double m(int two_J) const { return m_plus_J - 0.5 * two_J; }

  friend bool operator==(const AllowedPair&, const AllowedPair&) = default;
};

struct PairFamily {
  ReducedRatio ratio;
  int two_J = 1;
  std::vector<AllowedPair> pairs;  // ascending l

  double J() const { return 0.5 * two_J; }
};

/// Throws Error{NoOddOverEvenForm} when the reduced fraction is not odd/even.
ReducedRatio reduce_ratio(const Rational& kappa_r);

/// Closed-form enumeration: m + J = i_m(2l+1), n = i_n(2l+1) + l.
PairFamily enumerate_pairs(const ReducedRatio& ratio, int two_J);

/// Largest l, or -1 when no pair fits.
std::int64_t max_l(const ReducedRatio& ratio, int two_J);

/// Exhaustive exact scan over m + J ∈ {0..2J}, n ∈ {0..n_max}; returns (m + J, n).
std::vector<std::pair<std::int64_t, std::int64_t>> brute_force_pairs(
    const Rational& kappa_r, int two_J, std::int64_t n_max);

bool is_entanglement_admissible(const PairFamily& family);

/// J ≥ 3 i_m / 2, evaluated in integers.
bool entanglement_threshold_met(const ReducedRatio& ratio, int two_J);

/// Exact test of n + 1/2 = κr (m + J).
bool satisfies_constraint(const Rational& kappa_r, std::int64_t m_plus_J, std::int64_t n);

}  // namespace paw
