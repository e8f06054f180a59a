#pragma once

// Marginal distributions of |β(Ω, α)|²: over the oscillator plane (Q, P), over the
// clock's energy-time chart (e, t), and over space-time (Q, t).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "paw/pawstate.hpp"

namespace paw {

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;

  double at(std::size_t i) const;
  double step() const;
  /// Trapezoid weight of node i.
  double weight(std::size_t i) const;

  friend bool operator==(const Axis&, const Axis&) = default;
};

struct DistributionGrid {
  std::vector<Axis> axes;     // 1 or 2 axes; values are row-major with axes[0] outermost
  std::vector<double> values;
  std::string measure;        // what one unit of the integral means

  double& at(std::size_t i, std::size_t j = 0);
  double at(std::size_t i, std::size_t j = 0) const;
  /// Trapezoid integral over all axes.
  double integral() const;
  /// Integral over the second axis only, as a function of the first.
  std::vector<double> integrate_second_axis() const;
};

/// (M/2π) Σ|c_m|² e^{−x} x^{n_m}/n_m!, x = M(Q² + P²)/2; density per dQ dP.
double phase_space_density(const PawState& state, double Q, double P);

DistributionGrid marginal_phase_space(const PawState& state, const Axis& Q, const Axis& P);

Axis default_phase_axis(const std::string& name);

/// ((2J+1)/2κ) Σ|c_m|² binom(2J, m+J) (1 − e/2κ)^{J−m} (e/2κ)^{J+m}; throws Error{EOutOfRange}.
double energy_time_density(const PawState& state, double e);

/// Constant along t. Throws Error{EOutOfRange} if the e axis leaves [0, 2κ].
DistributionGrid marginal_energy_time(const PawState& state, const Axis& e, const Axis& t);

Axis default_energy_axis(const PawState& state);
/// One oscillator period 2π/(Mω), 256 samples.
Axis default_time_axis(const PawState& state);

struct InterferenceReport {
  double I1 = 0.0;
  double I2 = 0.0;
  double I_int = 0.0;
  double ratio = 0.0;
  double clock_suppression_factor = 1.0;
  double oscillator_suppression_factor = 1.0;
};

nlohmann::json to_json(const InterferenceReport& report);

/// binom(2J,k₁)^{1/2} binom(2J,k₂)^{1/2} / binom(2J,(k₁+k₂)/2) and
/// Γ((n₁+n₂)/2 + 1)/√(n₁! n₂!), both in log-space; k = m + J.
InterferenceReport interference_suppression(int two_J, std::int64_t k1, std::int64_t k2,
                                            std::int64_t M, std::int64_t n1, std::int64_t n2);

struct SpaceTimeOptions {
  std::size_t p_nodes = 4001;  // trapezoid nodes for the momentum integral
  std::size_t e_order = 0;     // Gauss–Legendre order in e; 0 picks one exact for degree 2J
};

struct SpaceTimeMarginal {
  DistributionGrid total;
  DistributionGrid diagonal;      // Σ_i I_i, t-independent
  DistributionGrid interference;  // I_int
  InterferenceReport report;
};

/// Integrates |β|² over e ∈ [0, 2κ] with (2J+1)/(2κ) de and P ∈ ℝ with (M/2π) dP.
/// The report's I1, I2 are the diagonal masses of the first two components, I_int the
/// largest ∫|I_int| dQ over the t axis and ratio = I_int / Σ_i I_i.
SpaceTimeMarginal marginal_space_time(const PawState& state, const Axis& Q, const Axis& t,
                                      const SpaceTimeOptions& options = {});

/// Clock overlap integral (2J+1)/(2κ) ∫ de |⟨Ω|J,m₁⟩||⟨Ω|J,m₂⟩| by Gauss–Legendre.
double clock_overlap_integral(int two_J, std::int64_t k1, std::int64_t k2, std::size_t order = 0);

/// M → ∞ section Σ|c_m|² Θ(2n_m/M − Q²) / (π√(2n_m/M − Q²)).
double classical_space_time_density(const PawState& state, double Q);

/// Positive-Q local maxima of the P ≈ 0 row of a (Q, P) grid, ascending.
std::vector<double> ridge_radii(const DistributionGrid& phase_space);

/// Interior local maxima of a 1D profile sampled on an axis.
std::vector<double> local_maxima(const Axis& axis, const std::vector<double>& values);

/// One row per node: coordinates then value, 17 significant digits.
void write_grid_csv(std::ostream& out, const DistributionGrid& grid);

nlohmann::json grid_metadata(const DistributionGrid& grid);

}  // namespace paw
