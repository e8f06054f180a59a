#pragma once

// The global stationary state |Ψ⟩⟩ = Σ_m c_m |J,m⟩|n_m⟩ and the quantities
// obtained by projecting it on spin coherent states: χ²(θ) and |φ_θ(φ)⟩.

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "json.hpp"
#include "paw/coherent.hpp"
#include "paw/constraints.hpp"

namespace paw {

struct PawComponent {
  std::int64_t m_plus_J = 0;
  std::int64_t n = 0;
  std::complex<double> c{0.0, 0.0};
};

/// Coefficients keyed by the ladder index m + J.
using CoefficientMap = std::map<std::int64_t, std::complex<double>>;

class PawState {
 public:
  /// Validated construction: support must lie in the allowed family, the family must
  /// have ≥ 2 pairs and at least two coefficients must be nonzero. Normalizes Σ|c|² = 1.
  /// Throws Error{NoOddOverEvenForm, NotAdmissible, UnsupportedIndex, ZeroState}.
  static PawState build(int two_J, const Rational& epsilon_over_omega, std::int64_t M,
                        const CoefficientMap& coefficients, double omega = 1.0);

  /// Equal weights on every allowed pair.
  static PawState build_uniform(int two_J, const Rational& epsilon_over_omega, std::int64_t M,
                                double omega = 1.0);

  /// Coefficients keyed by Fock level n_m instead of m + J.
  static PawState build_from_levels(int two_J, const Rational& epsilon_over_omega,
                                    std::int64_t M,
                                    const std::map<std::int64_t, std::complex<double>>& by_level,
                                    double omega = 1.0);

  /// Diagnostic constructor: takes components verbatim (normalized, zeros dropped) without
  /// checking the constraint or entanglement. Used for forged states and product states.
  static PawState forge(int two_J, const Rational& epsilon_over_omega, std::int64_t M,
                        std::vector<PawComponent> components, double omega = 1.0);

  const ClockSpec& clock() const { return clock_; }
  const OscillatorSpec& oscillator() const { return oscillator_; }
  const CouplingRatios& ratios() const { return ratios_; }
  /// Empty when forged from a ratio without odd/even form.
  const PairFamily& family() const { return family_; }
  std::span<const PawComponent> components() const { return components_; }

  int two_J() const { return clock_.two_J; }
  std::int64_t M() const { return oscillator_.M; }
  double omega() const { return oscillator_.omega; }
  double epsilon() const { return clock_.epsilon; }
  const Rational& epsilon_over_omega() const { return ratios_.kappa_r; }

  friend bool operator==(const PawState& a, const PawState& b);

 private:
  PawState() = default;
  static PawState assemble(int two_J, const Rational& epsilon_over_omega, std::int64_t M,
                           double omega, std::vector<PawComponent> components);

  ClockSpec clock_;
  OscillatorSpec oscillator_;
  CouplingRatios ratios_;
  PairFamily family_;
  std::vector<PawComponent> components_;  // ascending m + J, all c ≠ 0
};

/// Free-function spelling of PawState::build.
PawState build_state(int two_J, const Rational& epsilon_over_omega, std::int64_t M,
                     const CoefficientMap& coefficients, double omega = 1.0);

struct FockAmplitude {
  std::int64_t n = 0;
  std::int64_t m_plus_J = 0;
  std::complex<double> amplitude{0.0, 0.0};
};

struct ConditionalState {
  double theta = 0.0;
  double phi = 0.0;
  std::vector<FockAmplitude> amplitudes;  // same order as the state's components
  double norm_chi2 = 0.0;

  double norm() const;
};

/// ln χ² below which a clock reading is treated as unphysical.
inline constexpr double kDefaultLogChiTolerance = -690.0;

double log_chi_squared(const PawState& state, double theta);

/// χ²(θ) = Σ |c_m|² |⟨Ω|J,m⟩|², independent of φ.
double chi_squared(const PawState& state, double theta);

/// Norm ‖Φ_θ(φ)‖² summed directly from the projected amplitudes (φ-dependent route).
double projected_norm_squared(const PawState& state, double theta, double phi);

/// |φ_θ(φ)⟩ = Σ c_m⟨Ω|J,m⟩|n_m⟩ / √χ²(θ). Throws Error{DegenerateTheta}.
ConditionalState conditional_state(const PawState& state, double theta, double phi,
                                   double log_tolerance = kDefaultLogChiTolerance);

/// max |ε(m+J) − ω(n_m + 1/2)| over the support, evaluated exactly.
double paw_constraint_residual(const PawState& state);

/// ‖ iε (φ(φ+h) − φ(φ−h))/(2h) − Ĥ_Γ φ(φ) ‖₂.
double schrodinger_residual(const PawState& state, double theta, double phi, double dphi);

/// 1e−3 of the period of the fastest phase e^{−iφ·2J}.
double default_dphi(const PawState& state);

/// Number of nonzero c_m.
std::size_t schmidt_rank(const PawState& state);

/// Local maxima of χ² over θ ∈ [0, π], refined by golden section; ascending θ.
std::vector<double> chi2_local_maxima(const PawState& state, std::size_t samples = 4096);

/// Full width at half maximum of the χ² peak at `peak` (interior peaks, in radians).
double chi2_fwhm(const PawState& state, double peak);

nlohmann::json to_json(const PawState& state);

/// Inverse of to_json through the validated constructor; unknown keys are rejected.
PawState state_from_json(const nlohmann::json& doc);

}  // namespace paw
