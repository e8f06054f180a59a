#pragma once

// Crossover diagnostics and the classical picture: energies read off the clock,
// the joint amplitude β(Ω, α), surviving orbits and Hamilton's equations.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "paw/coherent.hpp"
#include "paw/pawstate.hpp"

namespace paw {

/// E(θ) = Jε(1 − cos θ) = ⟨Ω|Ĥ_C|Ω⟩.
double energy_of_theta(const ClockSpec& clock, double theta);

double clock_energy_expectation(const ClockSpec& clock, double theta);

/// ⟨α|Ĥ_Γ|α⟩ = ω(M|α|² + 1/2).
double oscillator_energy_expectation(const OscillatorSpec& oscillator, std::complex<double> alpha);

/// ‖Ĥ_Γ φ_θ(φ) − E(θ) φ_θ(φ)‖₂; small only where χ² is dominated by one m.
double stationary_residual(const PawState& state, double theta_peak, double phi);

/// β(Ω, α) = Σ_m c_m ⟨Ω|J,m⟩⟨α|n_m⟩.
LogAmplitude beta_amplitude(const PawState& state, const SphereCoordinate& omega,
                            std::complex<double> alpha);

struct SurvivingConfiguration {
  std::int64_t m_plus_J = 0;
  std::int64_t n = 0;
  double energy = 0.0;             // ω(n + 1/2)
  double energy_asymptotic = 0.0;  // (Mω) n / M
  double radius = 0.0;             // √(2n/M) in (Q, P)
  double radius_exact = 0.0;       // √((2n+1)/M), the orbit at energy ω(n + 1/2)
  double e = 0.0;                  // energy / (Mω)
};

/// One entry per component with c_m ≠ 0, ascending n.
std::vector<SurvivingConfiguration> surviving_configurations(const PawState& state);

struct OrbitParams {
  double E = 0.0;
  double eta = 1.0;
  double phi0 = 0.0;
  double M_omega = 1.0;

  /// η = Mω, the choice under which t = φ/ε is Hamilton time.
  static OrbitParams canonical(double E, double M_omega, double phi0 = 0.0);
};

struct ClassicalConfig {
  double E = 0.0;
  double t = 0.0;
  double q = 0.0;
  double p = 0.0;

  double Q(double M_omega) const;
  double P(double M_omega) const;
};

/// H_Γ(q, p) = p²/2 + (Mω)² q²/2.
double oscillator_hamiltonian(double q, double p, double M_omega);

ClassicalConfig orbit_point(const OrbitParams& params, double t);

std::vector<ClassicalConfig> classical_orbit(const OrbitParams& params,
                                             std::span<const double> t_grid);

/// Central-difference residuals (|dq/dt − (η/Mω)∂H/∂p|, |dp/dt + (η/Mω)∂H/∂q|).
std::pair<double, double> hamilton_residual(const OrbitParams& params, double t, double dt);

/// Map F: α = √(E/(Mω)) e^{−i(ηt + φ₀)}.
std::complex<double> clock_to_oscillator(const OrbitParams& params, double t);

/// Large-J label μ = m/J ∈ [−1, 1] of the ladder index m + J.
double mu_of(std::int64_t m_plus_J, int two_J);

/// Nearest ladder index m + J for a given μ (round half away from zero).
std::int64_t nearest_m_plus_J(double mu, int two_J);

/// CSV with header E,t,q,p,Q,P and 17 significant digits.
void write_orbit_csv(std::ostream& out, std::span<const ClassicalConfig> configs, double M_omega,
                     bool header = true);

}  // namespace paw
