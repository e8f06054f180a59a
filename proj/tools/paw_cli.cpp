// paw: command-line front end for clock/oscillator Page–Wootters states.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "paw/classical.hpp"
#include "paw/coherent.hpp"
#include "paw/constraints.hpp"
#include "paw/error.hpp"
#include "paw/figures.hpp"
#include "paw/marginals.hpp"
#include "paw/pawstate.hpp"
#include "paw/scenario.hpp"
#include "paw/verify.hpp"

namespace {

using namespace paw;

enum Exit : int { kOk = 0, kFailed = 1, kUsage = 2, kUnknownFigure = 3, kInadmissible = 4 };

struct StateFlags {
  std::string state_file;
  std::string config_file;
  std::optional<int> two_J;
  std::optional<std::string> kappa_r;
  std::optional<std::string> eps_over_omega;
  std::optional<std::int64_t> M;
  std::string coeffs;  // "k:re[:im],..." keyed by m + J
  std::string grid;
  std::string tol;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, StateFlags& f) {
  sub->add_option("--state", f.state_file, "state JSON file");
  sub->add_option("--config", f.config_file, "scenario JSON file");
  sub->add_option("--two-j", f.two_J, "2J, twice the clock spin");
  sub->add_option("--kappa-r", f.kappa_r, "kappa*r = epsilon/omega as N/D");
  sub->add_option("--epsilon-over-omega", f.eps_over_omega, "epsilon/omega as N/D");
  sub->add_option("--m", f.M, "oscillator M");
  sub->add_option("--coeffs", f.coeffs, "coefficients k:re[:im],... keyed by m+J");
  sub->add_option("--grid", f.grid, "axis overrides name=min:max:count,...");
  sub->add_option("--tol", f.tol, "tolerances name=value,...");
  sub->add_option("--out", f.out, "output file or directory");
  sub->add_option("--seed", f.seed, "random seed");
}

std::optional<Rational> ratio_flag(const StateFlags& f) {
  std::optional<Rational> a, b;
  if (f.kappa_r) a = parse_rational(*f.kappa_r);
  if (f.eps_over_omega) b = parse_rational(*f.eps_over_omega);
  if (a && b && *a != *b) {
    throw Error(ErrorCode::InvalidArgument, "--kappa-r and --epsilon-over-omega disagree");
  }
  return a ? a : b;
}

CoefficientMap parse_coeffs(const std::string& spec) {
  CoefficientMap out;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::vector<std::string> f;
    std::stringstream parts(item);
    std::string p;
    while (std::getline(parts, p, ':')) f.push_back(p);
    if (f.size() < 2 || f.size() > 3) throw Error(ErrorCode::Parse, "expected k:re[:im], got '" + item + "'");
    try {
      std::size_t used = 0;
      const auto k = std::stoll(f[0], &used);
      if (used != f[0].size()) throw std::invalid_argument(f[0]);
      const double re = std::stod(f[1]);
      const double im = f.size() == 3 ? std::stod(f[2]) : 0.0;
      out[k] = {re, im};
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::Parse, "bad coefficient '" + item + "'");
    }
  }
  return out;
}

bool has_state_flags(const StateFlags& f) {
  return f.two_J || f.kappa_r || f.eps_over_omega || f.M || !f.coeffs.empty();
}

ScenarioConfig resolve(const StateFlags& f) {
  ScenarioConfig config;
  if (!f.config_file.empty()) config = load_scenario(f.config_file);
  if (!f.state_file.empty()) {
    std::ifstream in(f.state_file);
    if (!in) throw Error(ErrorCode::Parse, "cannot open " + f.state_file);
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::Parse, f.state_file + ": " + e.what());
    }
    config.state = state_from_json(doc);
  }
  const auto ratio = ratio_flag(f);
  if (has_state_flags(f)) {
    const PawState& base = config.state;
    const int two_J = f.two_J.value_or(base.two_J());
    const Rational eps = ratio.value_or(base.epsilon_over_omega());
    const std::int64_t M = f.M.value_or(base.M());
    config.state = f.coeffs.empty() ? PawState::build_uniform(two_J, eps, M)
                                    : PawState::build(two_J, eps, M, parse_coeffs(f.coeffs));
  }
  if (!f.grid.empty()) {
    for (const auto& [k, v] : parse_grid_overrides(f.grid)) config.grids[k] = v;
  }
  if (!f.tol.empty()) {
    for (const auto& [k, v] : parse_tolerances(f.tol)) config.tolerances[k] = v;
  }
  if (f.seed) config.seed = *f.seed;
  if (!f.out.empty()) config.output_dir = f.out;
  return config;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string half_integer(std::int64_t twice) {
  return twice % 2 == 0 ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + out_path);
  out << text;
}

int cmd_enumerate(const StateFlags& f) {
  const auto ratio = ratio_flag(f);
  if (!ratio) throw Error(ErrorCode::InvalidArgument, "--kappa-r is required");
  if (!f.two_J) throw Error(ErrorCode::InvalidArgument, "--two-j is required");
  std::ostringstream out;
  out << "m,n\n";
  try {
    const auto family = enumerate_pairs(reduce_ratio(*ratio), *f.two_J);
    for (const auto& p : family.pairs) out << half_integer(p.two_m(*f.two_J)) << ',' << p.n << '\n';
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoOddOverEvenForm) throw;
    std::cerr << "paw: no odd/even form for kappa*r = " << to_string(*ratio) << "; no allowed pairs\n";
  }
  emit(f.out, out.str());
  return kOk;
}

int cmd_build(const StateFlags& f) {
  emit(f.out, to_json(resolve(f).state).dump(2) + "\n");
  return kOk;
}

int cmd_chi2(const StateFlags& f, std::optional<double> theta) {
  const auto config = resolve(f);
  std::ostringstream out;
  out << "theta,chi2\n";
  if (theta) {
    out << num(*theta) << ',' << num(chi_squared(config.state, SphereCoordinate(*theta, 0.0).theta)) << '\n';
  } else {
    const Axis th = apply_override({"theta", 0.0, kPi, 1000}, config.grids);
    for (std::size_t i = 0; i < th.count; ++i) {
      out << num(th.at(i)) << ',' << num(chi_squared(config.state, th.at(i))) << '\n';
    }
  }
  emit(f.out, out.str());
  return kOk;
}

int cmd_conditional(const StateFlags& f, double theta, double phi) {
  const auto config = resolve(f);
  const SphereCoordinate om(theta, phi);
  const auto cs = conditional_state(config.state, om.theta, om.phi, config.tolerance("log_chi"));
  nlohmann::json amps = nlohmann::json::array();
  for (const auto& a : cs.amplitudes) {
    amps.push_back({{"n", a.n}, {"m_plus_J", a.m_plus_J}, {"re", a.amplitude.real()}, {"im", a.amplitude.imag()}});
  }
  emit(f.out, nlohmann::json{{"theta", theta}, {"phi", phi}, {"chi2", cs.norm_chi2}, {"norm", cs.norm()},
                             {"amplitudes", amps}}.dump(2) + "\n");
  return kOk;
}

int cmd_schrodinger(const StateFlags& f, double theta, double phi, std::optional<double> dphi) {
  const auto config = resolve(f);
  const double h = dphi.value_or(default_dphi(config.state));
  const double r1 = schrodinger_residual(config.state, theta, phi, h);
  const double r2 = schrodinger_residual(config.state, theta, phi, h / 2);
  emit(f.out, nlohmann::json{{"theta", theta}, {"phi", phi}, {"dphi", h}, {"residual", r1},
                             {"residual_half_step", r2}, {"order", std::log2(r1 / r2)}}.dump(2) + "\n");
  return kOk;
}

int cmd_beta(const StateFlags& f, double theta, double phi, double Q, double P) {
  const auto config = resolve(f);
  const auto z = PlaneCoordinate::from_QP(Q, P);
  const auto b = beta_amplitude(config.state, SphereCoordinate(theta, phi), z.alpha);
  emit(f.out, nlohmann::json{{"theta", theta}, {"phi", phi}, {"Q", Q}, {"P", P},
                             {"log_magnitude", b.log_magnitude}, {"phase", b.phase},
                             {"probability", std::exp(b.log_probability())}}.dump(2) + "\n");
  return kOk;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::Parse, "bad integer '" + item + "' in list");
    }
  }
  return out;
}

void print_files(const std::vector<std::filesystem::path>& files) {
  for (const auto& p : files) std::cout << p.string() << '\n';
}

int cmd_figure(const StateFlags& f, std::string name, const std::string& j_list) {
  // on its own, --m picks the figure's two-level or dense state instead of a uniform one
  StateFlags without_m = f;
  without_m.M.reset();
  const bool explicit_state =
      !f.state_file.empty() || !f.config_file.empty() || has_state_flags(without_m);
  const auto config = resolve(explicit_state ? f : without_m);
  if (name.empty()) name = config.experiment;
  const auto& names = figure_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::cerr << "paw: unknown figure '" << name << "'; one of:";
    for (const auto& n : names) std::cerr << ' ' << n;
    std::cerr << '\n';
    return kUnknownFigure;
  }
  FigureOptions o;
  o.output_dir = config.output_dir;
  o.grids = config.grids;
  if (explicit_state) {
    o.state = config.state;
  } else if (f.M) {
    o.M = *f.M;
    o.dense_M = {*f.M};
  }
  if (!j_list.empty()) o.j_list = parse_int_list(j_list);
  print_files(write_figure(name, o));
  return kOk;
}

int cmd_orbits(const StateFlags& f, std::optional<double> eta_factor) {
  const bool explicit_state = !f.state_file.empty() || !f.config_file.empty() || has_state_flags(f);
  const auto config = resolve(f);
  const PawState s = explicit_state ? config.state : dense_state(20);
  const double Mw = static_cast<double>(s.M()) * s.omega();
  const Axis t = apply_override({"t", 0.0, 2.0 * kPi / Mw, 400}, config.grids);
  std::vector<double> ts(t.count);
  for (std::size_t i = 0; i < t.count; ++i) ts[i] = t.at(i);
  std::ostringstream out;
  bool header = true;
  for (const auto& c : surviving_configurations(s)) {
    OrbitParams p = OrbitParams::canonical(c.energy_asymptotic, Mw);
    if (eta_factor) p.eta = *eta_factor * Mw;
    write_orbit_csv(out, classical_orbit(p, ts), Mw, header);
    header = false;
  }
  emit(f.out, out.str());
  return kOk;
}

int cmd_verify(const StateFlags& f, std::int64_t forge_shift) {
  auto config = resolve(f);
  if (forge_shift != 0) config.state = shift_levels(config.state, forge_shift);
  const auto report = run_verify(config);
  std::cout << to_json(report).dump(2) << '\n';
  return report.pass() ? kOk : kFailed;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::MalformedRational:
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument:
      return kUsage;
    case ErrorCode::NoOddOverEvenForm:
    case ErrorCode::NotAdmissible:
    case ErrorCode::UnsupportedIndex:
    case ErrorCode::ZeroState:
      return kInadmissible;
    case ErrorCode::DegenerateTheta:
    case ErrorCode::EOutOfRange:
      return kFailed;
  }
  return kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Page–Wootters clock/oscillator states: enumeration, projections, marginals"};
  app.require_subcommand(1);

  StateFlags f;
  std::optional<double> theta_opt, dphi, eta_factor;
  double theta = kPi / 2, phi = 0.0, Q = 0.0, P = 0.0;
  std::string figure_name, j_list;
  std::int64_t forge_shift = 0;

  auto* enumerate = app.add_subcommand("enumerate", "list the allowed (m, n) pairs");
  add_common(enumerate, f);
  auto* build = app.add_subcommand("build", "build and print a state as JSON");
  add_common(build, f);
  auto* chi2 = app.add_subcommand("chi2", "chi^2(theta) table");
  add_common(chi2, f);
  chi2->add_option("--theta", theta_opt, "single clock reading");
  auto* conditional = app.add_subcommand("conditional", "conditional oscillator state at (theta, phi)");
  add_common(conditional, f);
  auto* schrodinger = app.add_subcommand("schrodinger", "Schrodinger-form residual at (theta, phi)");
  add_common(schrodinger, f);
  schrodinger->add_option("--dphi", dphi, "finite-difference step");
  auto* beta = app.add_subcommand("beta", "joint amplitude beta(Omega, alpha)");
  add_common(beta, f);
  beta->add_option("--Q", Q, "dimensionless position");
  beta->add_option("--P", P, "dimensionless momentum");
  for (auto* sub : {conditional, schrodinger, beta}) {
    sub->add_option("--theta", theta, "clock polar angle");
    sub->add_option("--phi", phi, "clock azimuth");
  }
  auto* figure = app.add_subcommand("figure", "write figure data (CSV + JSON)");
  add_common(figure, f);
  figure->add_option("name", figure_name, "figure name");
  figure->add_option("--j-list", j_list, "J values for chi2-largeJ, comma separated");
  auto* orbits = app.add_subcommand("orbits", "classical orbits of the surviving configurations (CSV)");
  add_common(orbits, f);
  orbits->add_option("--eta-factor", eta_factor, "eta in units of M*omega");
  auto* verify = app.add_subcommand("verify", "pass/fail JSON report of the state invariants");
  add_common(verify, f);
  verify->add_option("--forge-shift", forge_shift, "shift every Fock level before checking");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*enumerate) return cmd_enumerate(f);
    if (*build) return cmd_build(f);
    if (*chi2) return cmd_chi2(f, theta_opt);
    if (*conditional) return cmd_conditional(f, theta, phi);
    if (*schrodinger) return cmd_schrodinger(f, theta, phi, dphi);
    if (*beta) return cmd_beta(f, theta, phi, Q, P);
    if (*figure) return cmd_figure(f, figure_name, j_list);
    if (*orbits) return cmd_orbits(f, eta_factor);
    if (*verify) return cmd_verify(f, forge_shift);
  } catch (const Error& e) {
    std::cerr << "paw: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "paw: " << e.what() << '\n';
    return kFailed;
  }
  return kOk;
}
