#pragma once

// Overlaps of spin coherent states ⟨Ω|J,m⟩ and Glauber coherent states ⟨α|n⟩,
// plus their invariant measures. Everything is returned in log-space.

#include <complex>
#include <cstdint>

#include "paw/logmath.hpp"

namespace paw {

struct SphereCoordinate {
  double theta = 0.0;  // [0, π]
  double phi = 0.0;    // [0, ∞); not reduced mod 2π

  SphereCoordinate() = default;
  SphereCoordinate(double theta, double phi);
};

/// ln cos(θ/2) and ln sin(θ/2) with exact poles at θ = 0 and θ = π.
struct HalfAngleLogs {
  long double log_cos;
  long double log_sin;
  static HalfAngleLogs at(double theta);
};

/// Point of the oscillator phase plane. α = √(Mω/2)(q + i p/(Mω)) = (Q + iP)/√2.
struct PlaneCoordinate {
  std::complex<double> alpha;

  static PlaneCoordinate from_alpha(std::complex<double> a) { return {a}; }
  static PlaneCoordinate from_qp(double q, double p, double M_omega);
  /// Dimensionless Q = q√(Mω), P = p/√(Mω).
  static PlaneCoordinate from_QP(double Q, double P);

  double q(double M_omega) const;
  double p(double M_omega) const;
  double Q() const;
  double P() const;
};

/// ⟨Ω|J,m⟩ = binom(2J, m+J)^{1/2} cos(θ/2)^{J−m} sin(θ/2)^{J+m} e^{−iφ(J+m)}.
LogAmplitude scs_overlap(const SphereCoordinate& omega, int two_J, std::int64_t m_plus_J);

/// ln |⟨Ω|J,m⟩|², the binomial pmf at p = sin²(θ/2).
double scs_log_probability(double theta, int two_J, std::int64_t m_plus_J);

/// ⟨α|n⟩ = e^{−M|α|²/2} (√M|α|)^n / √(n!) · e^{−i n arg α}.
LogAmplitude hcs_overlap(std::complex<double> alpha, std::int64_t M, std::int64_t n);

/// ln |⟨α|n⟩|² as a function of x = M|α|² alone (Poisson pmf at mean x).
double hcs_log_probability(double M_abs_alpha_sq, std::int64_t n);

/// (2J+1)/(4π) sin θ: density of dμ(Ω) per unit dθ dφ.
double sphere_measure_weight(double theta, int two_J);

/// M/(2π): density of dμ(α) = (M/2π) dα dα* per unit dQ dP, i.e. per 2·d(Re α)d(Im α).
double plane_measure_weight(std::int64_t M);

}  // namespace paw
