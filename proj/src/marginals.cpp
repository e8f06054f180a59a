#include "paw/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>

#include "paw/coherent.hpp"
#include "paw/error.hpp"
#include "paw/quadrature.hpp"

namespace paw {

double Axis::at(std::size_t i) const {
  if (count == 1) return min;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

double Axis::step() const {
  return count > 1 ? (max - min) / static_cast<double>(count - 1) : 0.0;
}

double Axis::weight(std::size_t i) const {
  if (count == 1) return 1.0;
  return (i == 0 || i + 1 == count) ? 0.5 * step() : step();
}

double& DistributionGrid::at(std::size_t i, std::size_t j) {
  const std::size_t inner = axes.size() > 1 ? axes[1].count : 1;
  return values[i * inner + j];
}

double DistributionGrid::at(std::size_t i, std::size_t j) const {
  const std::size_t inner = axes.size() > 1 ? axes[1].count : 1;
  return values[i * inner + j];
}

double DistributionGrid::integral() const {
  long double total = 0.0L;
  const std::size_t inner = axes.size() > 1 ? axes[1].count : 1;
  for (std::size_t i = 0; i < axes[0].count; ++i) {
    long double row = 0.0L;
    for (std::size_t j = 0; j < inner; ++j) {
      row += at(i, j) * (axes.size() > 1 ? axes[1].weight(j) : 1.0);
    }
    total += row * axes[0].weight(i);
  }
  return static_cast<double>(total);
}

std::vector<double> DistributionGrid::integrate_second_axis() const {
  if (axes.size() < 2) throw Error(ErrorCode::InvalidArgument, "grid has a single axis");
  std::vector<double> out(axes[0].count);
  for (std::size_t i = 0; i < axes[0].count; ++i) {
    long double row = 0.0L;
    for (std::size_t j = 0; j < axes[1].count; ++j) row += at(i, j) * axes[1].weight(j);
    out[i] = static_cast<double>(row);
  }
  return out;
}

namespace {

void check_axis(const Axis& axis) {
  if (axis.count == 0 || !(axis.max >= axis.min) || (axis.count > 1 && axis.max == axis.min)) {
    throw Error(ErrorCode::InvalidArgument, "degenerate axis '" + axis.name + "'");
  }
}

DistributionGrid make_grid(const Axis& a, const Axis& b, std::string measure) {
  check_axis(a);
  check_axis(b);
  DistributionGrid g;
  g.axes = {a, b};
  g.values.assign(a.count * b.count, 0.0);
  g.measure = std::move(measure);
  return g;
}

double kappa_of(const PawState& state) { return to_double(state.ratios().kappa); }

}  // namespace

double phase_space_density(const PawState& state, double Q, double P) {
  const double x = 0.5 * static_cast<double>(state.M()) * (Q * Q + P * P);
  long double s = 0.0L;
  for (const auto& comp : state.components()) {
    const double lp = hcs_log_probability(x, comp.n);
    if (lp != kNegInf) s += std::norm(comp.c) * std::exp(static_cast<long double>(lp));
  }
  return static_cast<double>(s) * plane_measure_weight(state.M());
}

DistributionGrid marginal_phase_space(const PawState& state, const Axis& Q, const Axis& P) {
  DistributionGrid g = make_grid(Q, P, "probability per dQ dP");
  parallel_for(Q.count, [&](std::size_t i) {
    for (std::size_t j = 0; j < P.count; ++j) g.at(i, j) = phase_space_density(state, Q.at(i), P.at(j));
  });
  return g;
}

Axis default_phase_axis(const std::string& name) { return Axis{name, -2.5, 2.5, 801}; }

double energy_time_density(const PawState& state, double e) {
  const double two_kappa = 2.0 * kappa_of(state);
  if (!(e >= 0.0 && e <= two_kappa)) {
    throw Error(ErrorCode::EOutOfRange,
                "e = " + std::to_string(e) + " outside [0, 2 kappa = " +
                    std::to_string(two_kappa) + "]");
  }
  const long double x = static_cast<long double>(e) / two_kappa;
  const int two_J = state.two_J();
  long double s = 0.0L;
  for (const auto& comp : state.components()) {
    const std::int64_t k = comp.m_plus_J;
    const long double lp =
        log_binomial(two_J, k) + log_power(x, k) + log_power(1.0L - x, two_J - k);
    if (!std::isinf(lp)) s += std::norm(comp.c) * std::exp(lp);
  }
  return static_cast<double>(s * (two_J + 1.0L) / two_kappa);
}

DistributionGrid marginal_energy_time(const PawState& state, const Axis& e, const Axis& t) {
  const double two_kappa = 2.0 * kappa_of(state);
  if (e.min < 0.0 || e.max > two_kappa) {
    throw Error(ErrorCode::EOutOfRange, "energy axis leaves [0, 2 kappa]");
  }
  DistributionGrid g = make_grid(e, t, "probability per de, per unit t-sweep");
  for (std::size_t i = 0; i < e.count; ++i) {
    const double value = energy_time_density(state, e.at(i));
    for (std::size_t j = 0; j < t.count; ++j) g.at(i, j) = value;
  }
  return g;
}

Axis default_energy_axis(const PawState& state) {
  return Axis{"e", 0.0, 2.0 * kappa_of(state), 2001};
}

Axis default_time_axis(const PawState& state) {
  const double M_omega = static_cast<double>(state.M()) * state.omega();
  return Axis{"t", 0.0, 2.0 * kPi / M_omega, 256};
}

nlohmann::json to_json(const InterferenceReport& r) {
  return {{"I1", r.I1},
          {"I2", r.I2},
          {"I_int", r.I_int},
          {"ratio", r.ratio},
          {"clock_suppression_factor", r.clock_suppression_factor},
          {"oscillator_suppression_factor", r.oscillator_suppression_factor}};
}

InterferenceReport interference_suppression(int two_J, std::int64_t k1, std::int64_t k2,
                                            std::int64_t M, std::int64_t n1, std::int64_t n2) {
  if (k1 < 0 || k1 > two_J || k2 < 0 || k2 > two_J || n1 < 0 || n2 < 0 || M < 1) {
    throw Error(ErrorCode::InvalidArgument, "interference indices out of range");
  }
  InterferenceReport r;
  const long double mid = 0.5L * static_cast<long double>(k1 + k2);
  r.clock_suppression_factor = static_cast<double>(
      std::exp(0.5L * (log_binomial(two_J, k1) + log_binomial(two_J, k2)) -
               log_binomial_real(two_J, mid)));
  r.oscillator_suppression_factor = static_cast<double>(
      std::exp(log_factorial_real(0.5L * static_cast<long double>(n1 + n2)) -
               0.5L * (log_factorial(n1) + log_factorial(n2))));
  return r;
}

double clock_overlap_integral(int two_J, std::int64_t k1, std::int64_t k2, std::size_t order) {
  if (order == 0) order = std::max<std::size_t>(256, static_cast<std::size_t>(two_J) / 2 + 2);
  // (2J+1)/(2κ) ∫₀^{2κ} de f(e/2κ) = (2J+1) ∫₀¹ dx f(x)
  const QuadratureRule rule = gauss_legendre(order, 0.0, 1.0);
  const long double half_binoms = 0.5L * (log_binomial(two_J, k1) + log_binomial(two_J, k2));
  const long double up = 0.5L * static_cast<long double>(k1 + k2);
  const long double down = static_cast<long double>(two_J) - up;
  long double s = 0.0L;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const long double x = rule.nodes[i];
    const long double lv = half_binoms + up * std::log(x) + down * std::log1p(-x);
    s += rule.weights[i] * std::exp(lv);
  }
  return static_cast<double>((two_J + 1.0L) * s);
}

SpaceTimeMarginal marginal_space_time(const PawState& state, const Axis& Q, const Axis& t,
                                      const SpaceTimeOptions& options) {
  const auto comps = state.components();
  const std::size_t K = comps.size();
  const int two_J = state.two_J();
  const double M = static_cast<double>(state.M());
  const double eps = state.epsilon();

  // clock Gram matrix of |z^C| overlaps, upper triangle
  std::vector<double> gram(K * K, 0.0);
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = i; j < K; ++j) {
      gram[i * K + j] =
          clock_overlap_integral(two_J, comps[i].m_plus_J, comps[j].m_plus_J, options.e_order);
    }
  }

  std::int64_t n_max = 0;
  for (const auto& c : comps) n_max = std::max(n_max, c.n);
  const double nm = static_cast<double>(n_max);
  const double P_edge = std::sqrt(2.0 * (nm + 12.0 * std::sqrt(nm) + 30.0) / M);
  const Axis P_axis{"P", -P_edge, P_edge, std::max<std::size_t>(options.p_nodes, 3)};

  // kernel[q][i*K+j] = (M/2π) ∫ dP |z_i^Γ||z_j^Γ| e^{−i(n_i−n_j) arg(Q+iP)}
  std::vector<std::vector<std::complex<double>>> kernel(Q.count);
  parallel_for(Q.count, [&](std::size_t qi) {
    const double Qv = Q.at(qi);
    std::vector<std::complex<long double>> acc(K * K, {0.0L, 0.0L});
    std::vector<double> logz(K);
    for (std::size_t pj = 0; pj < P_axis.count; ++pj) {
      const double Pv = P_axis.at(pj);
      const double x = 0.5 * M * (Qv * Qv + Pv * Pv);
      const double angle = std::atan2(Pv, Qv);
      const long double w = P_axis.weight(pj);
      for (std::size_t i = 0; i < K; ++i) logz[i] = 0.5 * hcs_log_probability(x, comps[i].n);
      for (std::size_t i = 0; i < K; ++i) {
        if (logz[i] == kNegInf) continue;
        for (std::size_t j = i; j < K; ++j) {
          if (logz[j] == kNegInf) continue;
          const long double mag = std::exp(static_cast<long double>(logz[i]) + logz[j]);
          const double dn = static_cast<double>(comps[i].n - comps[j].n);
          acc[i * K + j] += w * mag * std::polar(1.0L, static_cast<long double>(-dn * angle));
        }
      }
    }
    kernel[qi].resize(K * K);
    const long double pref = plane_measure_weight(state.M());
    for (std::size_t idx = 0; idx < K * K; ++idx) {
      kernel[qi][idx] = {static_cast<double>(pref * acc[idx].real()),
                         static_cast<double>(pref * acc[idx].imag())};
    }
  });

  SpaceTimeMarginal out;
  out.total = make_grid(Q, t, "probability per dQ, per unit t-sweep");
  out.diagonal = out.total;
  out.interference = out.total;

  std::vector<double> diag_mass(K, 0.0);
  for (std::size_t qi = 0; qi < Q.count; ++qi) {
    double diag = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      const double term = std::norm(comps[i].c) * gram[i * K + i] * kernel[qi][i * K + i].real();
      diag += term;
      diag_mass[i] += term * Q.weight(qi);
    }
    for (std::size_t ti = 0; ti < t.count; ++ti) {
      const double phi = eps * t.at(ti);
      double cross = 0.0;
      for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = i + 1; j < K; ++j) {
          const double dk = static_cast<double>(comps[i].m_plus_J - comps[j].m_plus_J);
          const std::complex<double> clock_phase = std::polar(1.0, -dk * phi);
          cross += 2.0 * std::real(comps[i].c * std::conj(comps[j].c) * gram[i * K + j] *
                                   clock_phase * kernel[qi][i * K + j]);
        }
      }
      out.diagonal.at(qi, ti) = diag;
      out.interference.at(qi, ti) = cross;
      out.total.at(qi, ti) = diag + cross;
    }
  }

  InterferenceReport& r = out.report;
  if (K >= 1) r.I1 = diag_mass[0];
  if (K >= 2) {
    r.I2 = diag_mass[1];
    const auto f = interference_suppression(two_J, comps[0].m_plus_J, comps[1].m_plus_J,
                                            state.M(), comps[0].n, comps[1].n);
    r.clock_suppression_factor = f.clock_suppression_factor;
    r.oscillator_suppression_factor = f.oscillator_suppression_factor;
  }
  for (std::size_t ti = 0; ti < t.count; ++ti) {
    long double s = 0.0L;
    for (std::size_t qi = 0; qi < Q.count; ++qi) {
      s += std::fabs(out.interference.at(qi, ti)) * Q.weight(qi);
    }
    r.I_int = std::max(r.I_int, static_cast<double>(s));
  }
  double diag_total = 0.0;
  for (double d : diag_mass) diag_total += d;
  r.ratio = diag_total > 0.0 ? r.I_int / diag_total : 0.0;
  return out;
}

double classical_space_time_density(const PawState& state, double Q) {
  double s = 0.0;
  const double M = static_cast<double>(state.M());
  for (const auto& comp : state.components()) {
    const double gap = 2.0 * static_cast<double>(comp.n) / M - Q * Q;
    if (gap > 0.0) s += std::norm(comp.c) / (kPi * std::sqrt(gap));
  }
  return s;
}

std::vector<double> local_maxima(const Axis& axis, const std::vector<double>& values) {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] >= values[i + 1]) out.push_back(axis.at(i));
  }
  return out;
}

std::vector<double> ridge_radii(const DistributionGrid& grid) {
  if (grid.axes.size() != 2) throw Error(ErrorCode::InvalidArgument, "need a (Q, P) grid");
  const Axis& Qa = grid.axes[0];
  const Axis& Pa = grid.axes[1];
  std::size_t j0 = 0;
  for (std::size_t j = 1; j < Pa.count; ++j) {
    if (std::fabs(Pa.at(j)) < std::fabs(Pa.at(j0))) j0 = j;
  }
  std::vector<double> row(Qa.count);
  for (std::size_t i = 0; i < Qa.count; ++i) row[i] = grid.at(i, j0);
  std::vector<double> out;
  for (double q : local_maxima(Qa, row)) {
    if (q > 0.0) out.push_back(q);
  }
  return out;
}

void write_grid_csv(std::ostream& out, const DistributionGrid& grid) {
  for (const auto& a : grid.axes) out << a.name << ',';
  out << "value\n";
  char buf[128];
  const std::size_t inner = grid.axes.size() > 1 ? grid.axes[1].count : 1;
  for (std::size_t i = 0; i < grid.axes[0].count; ++i) {
    for (std::size_t j = 0; j < inner; ++j) {
      if (grid.axes.size() > 1) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.axes[0].at(i),
                      grid.axes[1].at(j), grid.at(i, j));
      } else {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid.axes[0].at(i), grid.at(i));
      }
      out << buf;
    }
  }
}

nlohmann::json grid_metadata(const DistributionGrid& grid) {
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& a : grid.axes) {
    axes.push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}, {"count", a.count}});
  }
  return {{"axes", axes}, {"measure", grid.measure}, {"integral", grid.integral()}};
}

}  // namespace paw
