#include "paw/figures.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "paw/classical.hpp"
#include "paw/coherent.hpp"
#include "paw/error.hpp"
#include "paw/marginals.hpp"

namespace paw {

namespace fs = std::filesystem;

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names{"chi2-j3",  "chi2-largeJ", "marg-pq",  "marg-et",
                                              "marg-qt",  "orbits-pq",   "orbits-et"};
  return names;
}

PawState two_level_state(std::int64_t M) {
  if (M < 2 || M % 2 != 0) {
    throw Error(ErrorCode::NotAdmissible, "two-level state needs an even M >= 2, got " + std::to_string(M));
  }
  const double c = 1.0 / std::sqrt(2.0);
  return PawState::build_from_levels(static_cast<int>(3 * M), parse_rational("1/2"), M,
                                     {{M, c}, {M / 2, c}});
}

PawState large_j_state(int J) {
  if (J < 3 || J % 3 != 0) {
    throw Error(ErrorCode::NotAdmissible, "large-J state needs J divisible by 3, got " + std::to_string(J));
  }
  return PawState::build(2 * J, Rational(3, 4 * J), 1, {{2 * J / 3, 1.0}, {2 * J, 1.0}});
}

PawState dense_state(std::int64_t M) {
  return PawState::build_uniform(static_cast<int>(3 * M), parse_rational("1/2"), M);
}

std::string state_fingerprint(const PawState& state) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : to_json(state).dump()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string m_label(std::int64_t m_plus_J, int two_J) {
  const std::int64_t two_m = 2 * m_plus_J - two_J;
  return two_m % 2 == 0 ? std::to_string(two_m / 2) : std::to_string(two_m) + "/2";
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

Axis theta_axis(const FigureOptions& o) {
  return apply_override({"theta", 0.0, kPi, std::max<std::size_t>(o.theta_samples, 2)}, o.grids);
}

std::vector<fs::path> chi2_j3(const FigureOptions& o) {
  const PawState s = o.state ? *o.state : default_state();
  const Axis th = theta_axis(o);
  const fs::path csv = o.output_dir / "chi2-j3.csv";
  auto out = open_out(csv);
  out << "theta";
  for (const auto& c : s.components()) out << ",term_m=" << m_label(c.m_plus_J, s.two_J());
  out << ",chi2\n";
  for (std::size_t i = 0; i < th.count; ++i) {
    const double t = th.at(i);
    out << num(t);
    for (const auto& c : s.components()) {
      out << ',' << num(std::norm(c.c) * std::exp(scs_log_probability(t, s.two_J(), c.m_plus_J)));
    }
    out << ',' << num(chi_squared(s, t)) << '\n';
  }
  const fs::path meta = o.output_dir / "chi2-j3.json";
  write_json(meta, {{"figure", "chi2-j3"},
                    {"state", to_json(s)},
                    {"fingerprint", state_fingerprint(s)},
                    {"axes", nlohmann::json::array({{{"name", th.name}, {"min", th.min}, {"max", th.max}, {"count", th.count}}})}});
  return {csv, meta};
}

std::vector<fs::path> chi2_large_j(const FigureOptions& o) {
  const Axis th = theta_axis(o);
  const fs::path csv = o.output_dir / "chi2-largeJ.csv";
  auto out = open_out(csv);
  out << "J,theta,chi2\n";
  nlohmann::json per_j = nlohmann::json::array();
  for (int J : o.j_list) {
    const auto s = large_j_state(J);
    for (std::size_t i = 0; i < th.count; ++i) {
      out << J << ',' << num(th.at(i)) << ',' << num(chi_squared(s, th.at(i))) << '\n';
    }
    const auto peaks = chi2_local_maxima(s);
    nlohmann::json entry{{"J", J}, {"peaks", peaks}, {"fingerprint", state_fingerprint(s)}};
    if (!peaks.empty() && peaks.front() < kPi) entry["interior_fwhm"] = chi2_fwhm(s, peaks.front());
    per_j.push_back(entry);
  }
  const fs::path meta = o.output_dir / "chi2-largeJ.json";
  write_json(meta, {{"figure", "chi2-largeJ"}, {"curves", per_j}});
  return {csv, meta};
}

PawState marginal_state(const FigureOptions& o) { return o.state ? *o.state : two_level_state(o.M); }

std::vector<fs::path> marg_pq(const FigureOptions& o) {
  const auto s = marginal_state(o);
  const auto grid = marginal_phase_space(s, apply_override(default_phase_axis("Q"), o.grids),
                                         apply_override(default_phase_axis("P"), o.grids));
  const fs::path csv = o.output_dir / "marg-pq.csv";
  {
    auto out = open_out(csv);
    write_grid_csv(out, grid);
  }
  nlohmann::json survivors = nlohmann::json::array();
  for (const auto& c : surviving_configurations(s)) survivors.push_back({{"n", c.n}, {"radius", c.radius}});
  const fs::path meta = o.output_dir / "marg-pq.json";
  write_json(meta, {{"figure", "marg-pq"},
                    {"grid", grid_metadata(grid)},
                    {"total_mass", grid.integral()},
                    {"ridge_radii", ridge_radii(grid)},
                    {"expected_radii", survivors},
                    {"fingerprint", state_fingerprint(s)}});
  return {csv, meta};
}

std::vector<fs::path> marg_et(const FigureOptions& o) {
  const auto s = marginal_state(o);
  const Axis e = apply_override(default_energy_axis(s), o.grids);
  const Axis t = apply_override(default_time_axis(s), o.grids);
  const auto grid = marginal_energy_time(s, e, t);
  const fs::path csv = o.output_dir / "marg-et.csv";
  {
    auto out = open_out(csv);
    write_grid_csv(out, grid);
  }
  std::vector<double> section(e.count);
  for (std::size_t i = 0; i < e.count; ++i) section[i] = grid.at(i, 0);
  const fs::path meta = o.output_dir / "marg-et.json";
  write_json(meta, {{"figure", "marg-et"},
                    {"grid", grid_metadata(grid)},
                    {"peaks", local_maxima(e, section)},
                    {"fingerprint", state_fingerprint(s)}});
  return {csv, meta};
}

std::vector<fs::path> marg_qt(const FigureOptions& o) {
  const auto s = marginal_state(o);
  const Axis Q = apply_override(default_phase_axis("Q"), o.grids);
  const Axis t = apply_override(default_time_axis(s), o.grids);
  const auto st = marginal_space_time(s, Q, t);
  const fs::path csv = o.output_dir / "marg-qt.csv";
  {
    auto out = open_out(csv);
    write_grid_csv(out, st.total);
  }
  // t = 0 section against the M → ∞ reference, both normalized to unit mass on the Q axis
  const fs::path ref = o.output_dir / "marg-qt-section.csv";
  {
    std::vector<double> finite(Q.count), classical(Q.count);
    double mf = 0.0;
    for (std::size_t i = 0; i < Q.count; ++i) {
      finite[i] = st.total.at(i, 0);
      classical[i] = classical_space_time_density(s, Q.at(i));
      mf += finite[i] * Q.weight(i);
    }
    auto out = open_out(ref);
    out << "Q,finite,diagonal,classical\n";
    for (std::size_t i = 0; i < Q.count; ++i) {
      out << num(Q.at(i)) << ',' << num(finite[i] / mf) << ',' << num(st.diagonal.at(i, 0)) << ','
          << num(classical[i]) << '\n';
    }
  }
  const fs::path meta = o.output_dir / "marg-qt.json";
  write_json(meta, {{"figure", "marg-qt"},
                    {"grid", grid_metadata(st.total)},
                    {"interference", to_json(st.report)},
                    {"fingerprint", state_fingerprint(s)}});
  return {csv, ref, meta};
}

std::vector<std::int64_t> dense_list(const FigureOptions& o) {
  if (o.state) return {o.state->M()};
  return o.dense_M;
}

std::vector<fs::path> orbits(const FigureOptions& o, bool energy_time) {
  std::vector<fs::path> files;
  for (std::int64_t M : dense_list(o)) {
    const auto s = o.state ? *o.state : dense_state(M);
    const double Mw = static_cast<double>(s.M()) * s.omega();
    const double period = 2.0 * kPi / Mw;
    std::vector<double> ts(o.orbit_samples);
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = period * static_cast<double>(i) / static_cast<double>(ts.size());

    const std::string stem = std::string(energy_time ? "orbits-et" : "orbits-pq") + "-M" + std::to_string(M);
    const fs::path csv = o.output_dir / (stem + ".csv");
    auto out = open_out(csv);
    nlohmann::json levels = nlohmann::json::array();
    if (energy_time) out << "n,e,t\n";
    bool header = !energy_time;
    for (const auto& c : surviving_configurations(s)) {
      const double E = Mw * c.e;
      if (energy_time) {
        for (double t : ts) out << c.n << ',' << num(c.e) << ',' << num(t) << '\n';
      } else {
        // the orbit through radius √(2n/M) carries the asymptotic energy ωn
        const auto conf = classical_orbit(OrbitParams::canonical(c.energy_asymptotic, Mw), ts);
        write_orbit_csv(out, conf, Mw, header);
        header = false;
      }
      levels.push_back({{"n", c.n}, {"E", E}, {"e", c.e}, {"radius", c.radius}, {"radius_exact", c.radius_exact}});
    }
    const fs::path meta = o.output_dir / (stem + ".json");
    write_json(meta, {{"figure", energy_time ? "orbits-et" : "orbits-pq"},
                      {"M", s.M()},
                      {"levels", levels},
                      {"fingerprint", state_fingerprint(s)}});
    files.push_back(csv);
    files.push_back(meta);
  }
  return files;
}

}  // namespace

std::vector<fs::path> write_figure(const std::string& name, const FigureOptions& options) {
  fs::create_directories(options.output_dir);
  if (name == "chi2-j3") return chi2_j3(options);
  if (name == "chi2-largeJ") return chi2_large_j(options);
  if (name == "marg-pq") return marg_pq(options);
  if (name == "marg-et") return marg_et(options);
  if (name == "marg-qt") return marg_qt(options);
  if (name == "orbits-pq") return orbits(options, false);
  if (name == "orbits-et") return orbits(options, true);
  throw Error(ErrorCode::InvalidArgument, "unknown figure '" + name + "'");
}

}  // namespace paw
