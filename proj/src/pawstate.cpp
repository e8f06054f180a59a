#include "paw/pawstate.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <set>
#include <string>

#include "paw/error.hpp"

namespace paw {

namespace {

void normalize(std::vector<PawComponent>& components) {
  std::erase_if(components, [](const PawComponent& p) { return p.c == std::complex<double>{}; });
  if (components.empty()) throw Error(ErrorCode::ZeroState, "all coefficients vanish");
  long double s = 0.0L;
  for (const auto& p : components) s += std::norm(p.c);
  // Leave an already unit-norm vector bit-identical so save/load cycles are stable.
  if (std::fabs(s - 1.0L) > 4.0L * DBL_EPSILON * components.size()) {
    const double scale = static_cast<double>(1.0L / std::sqrt(s));
    for (auto& p : components) p.c *= scale;
  }
  std::sort(components.begin(), components.end(),
            [](const PawComponent& a, const PawComponent& b) { return a.m_plus_J < b.m_plus_J; });
}

PairFamily family_or_empty(const Rational& kappa_r, int two_J) {
  try {
    return enumerate_pairs(reduce_ratio(kappa_r), two_J);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoOddOverEvenForm) throw;
    return PairFamily{ReducedRatio{0, 0}, two_J, {}};
  }
}

// Projected amplitudes c_m ⟨Ω|J,m⟩ as log-amplitudes; φ may be any real here.
std::vector<LogAmplitude> projected(const PawState& state, double theta, double phi) {
  const auto logs = HalfAngleLogs::at(theta);
  const int two_J = state.two_J();
  std::vector<LogAmplitude> out;
  out.reserve(state.components().size());
  for (const auto& comp : state.components()) {
    const std::int64_t k = comp.m_plus_J;
    long double lm = 0.5L * log_binomial(two_J, k);
    if (two_J - k != 0) lm += static_cast<long double>(two_J - k) * logs.log_cos;
    if (k != 0) lm += static_cast<long double>(k) * logs.log_sin;
    const LogAmplitude overlap =
        std::isinf(lm) ? LogAmplitude::zero()
                       : LogAmplitude{static_cast<double>(lm), -phi * static_cast<double>(k)};
    out.push_back(overlap * LogAmplitude::from_complex(comp.c));
  }
  return out;
}

ConditionalState conditional_unchecked(const PawState& state, double theta, double phi,
                                       double log_tolerance) {
  const double log_chi2 = log_chi_squared(state, theta);
  if (!(log_chi2 > log_tolerance)) {
    throw Error(ErrorCode::DegenerateTheta,
                "chi^2(theta) vanishes at theta = " + std::to_string(theta));
  }
  const auto amps = projected(state, theta, phi);
  ConditionalState out;
  out.theta = theta;
  out.phi = phi;
  out.norm_chi2 = std::exp(log_chi2);
  out.amplitudes.reserve(amps.size());
  const auto comps = state.components();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    LogAmplitude a = amps[i];
    a.log_magnitude -= 0.5 * log_chi2;
    out.amplitudes.push_back({comps[i].n, comps[i].m_plus_J, a.to_complex()});
  }
  return out;
}

}  // namespace

PawState PawState::assemble(int two_J, const Rational& epsilon_over_omega, std::int64_t M,
                            double omega, std::vector<PawComponent> components) {
  PawState s;
  s.ratios_ = CouplingRatios::from(epsilon_over_omega, two_J, M);
  s.oscillator_ = OscillatorSpec(M, omega);
  s.clock_ = ClockSpec(two_J, to_double(epsilon_over_omega) * omega);
  s.family_ = family_or_empty(epsilon_over_omega, two_J);
  normalize(components);
  s.components_ = std::move(components);
  return s;
}

PawState PawState::build(int two_J, const Rational& epsilon_over_omega, std::int64_t M,
                         const CoefficientMap& coefficients, double omega) {
  const PairFamily family = enumerate_pairs(reduce_ratio(epsilon_over_omega), two_J);
  if (!is_entanglement_admissible(family)) {
    throw Error(ErrorCode::NotAdmissible,
                "kappa_r = " + to_string(epsilon_over_omega) + ", 2J = " + std::to_string(two_J) +
                    " allows " + std::to_string(family.pairs.size()) +
                    " pair(s); entanglement needs at least 2");
  }
  std::vector<PawComponent> components;
  for (const auto& [k, c] : coefficients) {
    const auto it = std::find_if(family.pairs.begin(), family.pairs.end(),
                                 [k = k](const AllowedPair& p) { return p.m_plus_J == k; });
    if (it == family.pairs.end()) {
      throw Error(ErrorCode::UnsupportedIndex,
                  "m+J = " + std::to_string(k) + " is not an allowed pair");
    }
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorCode::InvalidArgument, "non-finite coefficient");
    }
    components.push_back({k, it->n, c});
  }
  const auto nonzero = std::count_if(components.begin(), components.end(),
                                     [](const PawComponent& p) { return std::abs(p.c) > 0.0; });
  if (nonzero == 0) throw Error(ErrorCode::ZeroState, "all coefficients vanish");
  if (nonzero < 2) {
    throw Error(ErrorCode::NotAdmissible,
                "a single nonzero coefficient gives a product state, not an entangled one");
  }
  return assemble(two_J, epsilon_over_omega, M, omega, std::move(components));
}

PawState PawState::build_uniform(int two_J, const Rational& epsilon_over_omega, std::int64_t M,
                                 double omega) {
  const PairFamily family = enumerate_pairs(reduce_ratio(epsilon_over_omega), two_J);
  CoefficientMap coefficients;
  const double c = family.pairs.empty() ? 0.0 : 1.0 / std::sqrt(double(family.pairs.size()));
  for (const auto& p : family.pairs) coefficients[p.m_plus_J] = c;
  return build(two_J, epsilon_over_omega, M, coefficients, omega);
}

PawState PawState::build_from_levels(int two_J, const Rational& epsilon_over_omega,
                                     std::int64_t M,
                                     const std::map<std::int64_t, std::complex<double>>& by_level,
                                     double omega) {
  const PairFamily family = enumerate_pairs(reduce_ratio(epsilon_over_omega), two_J);
  CoefficientMap coefficients;
  for (const auto& [n, c] : by_level) {
    const auto it = std::find_if(family.pairs.begin(), family.pairs.end(),
                                 [n = n](const AllowedPair& p) { return p.n == n; });
    if (it == family.pairs.end()) {
      throw Error(ErrorCode::UnsupportedIndex,
                  "Fock level n = " + std::to_string(n) + " is not paired with any m");
    }
    coefficients[it->m_plus_J] = c;
  }
  return build(two_J, epsilon_over_omega, M, coefficients, omega);
}

PawState PawState::forge(int two_J, const Rational& epsilon_over_omega, std::int64_t M,
                         std::vector<PawComponent> components, double omega) {
  std::set<std::int64_t> seen;
  for (const auto& p : components) {
    if (p.m_plus_J < 0 || p.m_plus_J > two_J || p.n < 0) {
      throw Error(ErrorCode::UnsupportedIndex, "forged component outside the ladder");
    }
    if (!seen.insert(p.m_plus_J).second) {
      throw Error(ErrorCode::UnsupportedIndex, "duplicate m+J in forged state");
    }
  }
  return assemble(two_J, epsilon_over_omega, M, omega, std::move(components));
}

bool operator==(const PawState& a, const PawState& b) {
  if (a.two_J() != b.two_J() || a.M() != b.M() || a.omega() != b.omega() ||
      a.epsilon_over_omega() != b.epsilon_over_omega() ||
      a.components_.size() != b.components_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.components_.size(); ++i) {
    const auto& x = a.components_[i];
    const auto& y = b.components_[i];
    if (x.m_plus_J != y.m_plus_J || x.n != y.n || x.c != y.c) return false;
  }
  return true;
}

PawState build_state(int two_J, const Rational& epsilon_over_omega, std::int64_t M,
                     const CoefficientMap& coefficients, double omega) {
  return PawState::build(two_J, epsilon_over_omega, M, coefficients, omega);
}

double ConditionalState::norm() const {
  long double s = 0.0L;
  for (const auto& a : amplitudes) s += std::norm(a.amplitude);
  return static_cast<double>(std::sqrt(s));
}

double log_chi_squared(const PawState& state, double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw Error(ErrorCode::InvalidArgument, "theta outside [0, pi]");
  }
  const auto amps = projected(state, theta, 0.0);
  std::vector<double> logs;
  logs.reserve(amps.size());
  for (const auto& a : amps) logs.push_back(a.log_probability());
  return log_sum_exp(logs);
}

double chi_squared(const PawState& state, double theta) {
  return std::exp(log_chi_squared(state, theta));
}

double projected_norm_squared(const PawState& state, double theta, double phi) {
  long double s = 0.0L;
  for (const auto& a : projected(state, theta, phi)) s += std::norm(a.to_complex());
  return static_cast<double>(s);
}

ConditionalState conditional_state(const PawState& state, double theta, double phi,
                                   double log_tolerance) {
  const SphereCoordinate where(theta, phi);
  return conditional_unchecked(state, where.theta, where.phi, log_tolerance);
}

double paw_constraint_residual(const PawState& state) {
  Rational worst = 0;
  const Rational half(BigInt(1), BigInt(2));
  for (const auto& p : state.components()) {
    // in units of ω: (ε/ω)(m+J) − (n + 1/2)
    Rational d = state.epsilon_over_omega() * Rational(BigInt(p.m_plus_J)) -
                 (Rational(BigInt(p.n)) + half);
    if (d < 0) d = -d;
    worst = std::max(worst, d);
  }
  return to_double(worst) * state.omega();
}

double schrodinger_residual(const PawState& state, double theta, double phi, double dphi) {
  if (!(dphi > 0.0)) throw Error(ErrorCode::InvalidArgument, "dphi must be > 0");
  const auto plus = conditional_unchecked(state, theta, phi + dphi, kDefaultLogChiTolerance);
  const auto minus = conditional_unchecked(state, theta, phi - dphi, kDefaultLogChiTolerance);
  const auto here = conditional_unchecked(state, theta, phi, kDefaultLogChiTolerance);
  const std::complex<double> i_eps(0.0, state.epsilon());
  const double omega = state.omega();
  long double s = 0.0L;
  for (std::size_t j = 0; j < here.amplitudes.size(); ++j) {
    const auto derivative =
        (plus.amplitudes[j].amplitude - minus.amplitudes[j].amplitude) / (2.0 * dphi);
    const double level = omega * (static_cast<double>(here.amplitudes[j].n) + 0.5);
    s += std::norm(i_eps * derivative - level * here.amplitudes[j].amplitude);
  }
  return static_cast<double>(std::sqrt(s));
}

double default_dphi(const PawState& state) {
  return 1e-3 * (2.0 * kPi / state.two_J());
}

std::size_t schmidt_rank(const PawState& state) {
  return static_cast<std::size_t>(
      std::count_if(state.components().begin(), state.components().end(),
                    [](const PawComponent& p) { return std::abs(p.c) > 0.0; }));
}

std::vector<double> chi2_local_maxima(const PawState& state, std::size_t samples) {
  if (samples < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 samples");
  const double step = kPi / static_cast<double>(samples - 1);
  std::vector<double> f(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    f[i] = log_chi_squared(state, std::min(kPi, step * static_cast<double>(i)));
  }
  const auto golden = [&](double a, double b) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - g * (b - a);
    double x2 = a + g * (b - a);
    double f1 = log_chi_squared(state, x1);
    double f2 = log_chi_squared(state, x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = log_chi_squared(state, x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = log_chi_squared(state, x1);
      }
    }
    return 0.5 * (a + b);
  };
  std::vector<double> peaks;
  for (std::size_t i = 0; i < samples; ++i) {
    if (f[i] == kNegInf) continue;
    const bool left_ok = i == 0 || f[i] > f[i - 1];
    const bool right_ok = i + 1 == samples || f[i] >= f[i + 1];
    if (!(left_ok && right_ok)) continue;
    if (i == 0) {
      peaks.push_back(0.0);
    } else if (i + 1 == samples) {
      // Peak on the θ = π boundary unless the maximum sits just inside.
      const double a = step * static_cast<double>(i - 1);
      const double x = golden(a, kPi);
      peaks.push_back(log_chi_squared(state, x) > f[i] ? x : kPi);
    } else {
      peaks.push_back(golden(step * static_cast<double>(i - 1),
                             std::min(kPi, step * static_cast<double>(i + 1))));
    }
  }
  return peaks;
}

double chi2_fwhm(const PawState& state, double peak) {
  const double level = log_chi_squared(state, peak) - std::log(2.0);
  const auto crossing = [&](double direction) {
    const double step = 1e-3;
    double inside = peak;
    double outside = peak;
    for (;;) {
      const double next = outside + direction * step;
      if (next <= 0.0 || next >= kPi) {
        throw Error(ErrorCode::InvalidArgument, "chi^2 peak has no half-maximum crossing");
      }
      outside = next;
      if (log_chi_squared(state, outside) < level) break;
      inside = outside;
    }
    for (int it = 0; it < 200 && std::fabs(outside - inside) > 1e-14; ++it) {
      const double mid = 0.5 * (inside + outside);
      (log_chi_squared(state, mid) < level ? outside : inside) = mid;
    }
    return 0.5 * (inside + outside);
  };
  return crossing(+1.0) - crossing(-1.0);
}

nlohmann::json to_json(const PawState& state) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& p : state.components()) {
    coeffs.push_back({{"m_plus_J", p.m_plus_J}, {"re", p.c.real()}, {"im", p.c.imag()}});
  }
  const Rational& r = state.epsilon_over_omega();
  return {
      {"two_J", state.two_J()},
      {"epsilon_over_omega",
       {to_int64(boost::multiprecision::numerator(r)),
        to_int64(boost::multiprecision::denominator(r))}},
      {"M", state.M()},
      {"coefficients", coeffs},
  };
}

namespace {

void require_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorCode::Parse, where + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end()) {
      throw Error(ErrorCode::Parse, "unknown key '" + key + "' in " + where);
    }
  }
  for (const char* key : allowed) {
    if (!obj.contains(key)) {
      throw Error(ErrorCode::Parse, "missing key '" + std::string(key) + "' in " + where);
    }
  }
}

}  // namespace

PawState state_from_json(const nlohmann::json& doc) {
  require_keys(doc, {"two_J", "epsilon_over_omega", "M", "coefficients"}, "state");
  try {
    const auto& ratio = doc.at("epsilon_over_omega");
    if (!ratio.is_array() || ratio.size() != 2) {
      throw Error(ErrorCode::Parse, "epsilon_over_omega must be [num, den]");
    }
    const Rational eps = make_rational(ratio[0].get<std::int64_t>(), ratio[1].get<std::int64_t>());
    CoefficientMap coefficients;
    for (const auto& entry : doc.at("coefficients")) {
      require_keys(entry, {"m_plus_J", "re", "im"}, "coefficient");
      const auto k = entry.at("m_plus_J").get<std::int64_t>();
      if (!coefficients.emplace(k, std::complex<double>(entry.at("re").get<double>(),
                                                        entry.at("im").get<double>()))
               .second) {
        throw Error(ErrorCode::Parse, "duplicate m_plus_J " + std::to_string(k));
      }
    }
    return PawState::build(doc.at("two_J").get<int>(), eps, doc.at("M").get<std::int64_t>(),
                           coefficients);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed state document: ") + e.what());
  }
}

}  // namespace paw
