#include "paw/classical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "paw/error.hpp"

namespace paw {

double energy_of_theta(const ClockSpec& clock, double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw Error(ErrorCode::InvalidArgument, "theta outside [0, pi]");
  }
  return clock.J() * clock.epsilon * (1.0 - std::cos(theta));
}

double clock_energy_expectation(const ClockSpec& clock, double theta) {
  return energy_of_theta(clock, theta);
}

double oscillator_energy_expectation(const OscillatorSpec& oscillator,
                                     std::complex<double> alpha) {
  return oscillator.omega * (static_cast<double>(oscillator.M) * std::norm(alpha) + 0.5);
}

double stationary_residual(const PawState& state, double theta_peak, double phi) {
  const auto cond = conditional_state(state, theta_peak, phi);
  const double E = energy_of_theta(state.clock(), theta_peak);
  long double s = 0.0L;
  for (const auto& a : cond.amplitudes) {
    const double level = state.omega() * (static_cast<double>(a.n) + 0.5);
    s += std::norm(a.amplitude) * (level - E) * (level - E);
  }
  return static_cast<double>(std::sqrt(s));
}

LogAmplitude beta_amplitude(const PawState& state, const SphereCoordinate& omega,
                            std::complex<double> alpha) {
  std::vector<LogAmplitude> terms;
  terms.reserve(state.components().size());
  for (const auto& comp : state.components()) {
    terms.push_back(LogAmplitude::from_complex(comp.c) *
                    scs_overlap(omega, state.two_J(), comp.m_plus_J) *
                    hcs_overlap(alpha, state.M(), comp.n));
  }
  return log_sum(terms);
}

std::vector<SurvivingConfiguration> surviving_configurations(const PawState& state) {
  std::vector<SurvivingConfiguration> out;
  const double M = static_cast<double>(state.M());
  const double M_omega = M * state.omega();
  for (const auto& comp : state.components()) {
    if (std::abs(comp.c) == 0.0) continue;
    SurvivingConfiguration s;
    s.m_plus_J = comp.m_plus_J;
    s.n = comp.n;
    s.energy = state.omega() * (static_cast<double>(comp.n) + 0.5);
    s.energy_asymptotic = M_omega * static_cast<double>(comp.n) / M;
    s.radius = std::sqrt(2.0 * static_cast<double>(comp.n) / M);
    s.radius_exact = std::sqrt((2.0 * static_cast<double>(comp.n) + 1.0) / M);
    s.e = s.energy / M_omega;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(),
            [](const SurvivingConfiguration& a, const SurvivingConfiguration& b) {
              return a.n < b.n;
            });
  return out;
}

OrbitParams OrbitParams::canonical(double E, double M_omega, double phi0) {
  return OrbitParams{E, M_omega, phi0, M_omega};
}

double ClassicalConfig::Q(double M_omega) const { return q * std::sqrt(M_omega); }
double ClassicalConfig::P(double M_omega) const { return p / std::sqrt(M_omega); }

double oscillator_hamiltonian(double q, double p, double M_omega) {
  return 0.5 * p * p + 0.5 * M_omega * M_omega * q * q;
}

ClassicalConfig orbit_point(const OrbitParams& params, double t) {
  if (!(params.E >= 0.0)) throw Error(ErrorCode::InvalidArgument, "orbit energy must be >= 0");
  if (!(params.M_omega > 0.0)) throw Error(ErrorCode::InvalidArgument, "M*omega must be > 0");
  const double amplitude = std::sqrt(2.0 * params.E);
  const double angle = params.eta * t + params.phi0;
  return {params.E, t, amplitude / params.M_omega * std::cos(angle),
          -amplitude * std::sin(angle)};
}

std::vector<ClassicalConfig> classical_orbit(const OrbitParams& params,
                                             std::span<const double> t_grid) {
  std::vector<ClassicalConfig> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back(orbit_point(params, t));
  return out;
}

std::pair<double, double> hamilton_residual(const OrbitParams& params, double t, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be > 0");
  const auto fwd = orbit_point(params, t + dt);
  const auto bwd = orbit_point(params, t - dt);
  const auto here = orbit_point(params, t);
  const double rate = params.eta / params.M_omega;
  const double dq_dt = (fwd.q - bwd.q) / (2.0 * dt);
  const double dp_dt = (fwd.p - bwd.p) / (2.0 * dt);
  const double dH_dp = here.p;
  const double dH_dq = params.M_omega * params.M_omega * here.q;
  return {std::fabs(dq_dt - rate * dH_dp), std::fabs(dp_dt + rate * dH_dq)};
}

std::complex<double> clock_to_oscillator(const OrbitParams& params, double t) {
  return std::polar(std::sqrt(params.E / params.M_omega), -(params.eta * t + params.phi0));
}

double mu_of(std::int64_t m_plus_J, int two_J) {
  return (2.0 * static_cast<double>(m_plus_J) - two_J) / two_J;
}

std::int64_t nearest_m_plus_J(double mu, int two_J) {
  if (!(mu >= -1.0 && mu <= 1.0)) throw Error(ErrorCode::InvalidArgument, "mu outside [-1, 1]");
  return static_cast<std::int64_t>(std::llround(0.5 * two_J * (mu + 1.0)));
}

void write_orbit_csv(std::ostream& out, std::span<const ClassicalConfig> configs, double M_omega,
                     bool header) {
  if (header) out << "E,t,q,p,Q,P\n";
  char buf[256];
  for (const auto& c : configs) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", c.E, c.t, c.q, c.p,
                  c.Q(M_omega), c.P(M_omega));
    out << buf;
  }
}

}  // namespace paw
