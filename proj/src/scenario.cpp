#include "paw/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "paw/error.hpp"

namespace paw {

PawState default_state() {
  const double c = 1.0 / std::sqrt(2.0);
  return PawState::build(6, parse_rational("3/4"), 4, {{2, c}, {6, c}});
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults{
      {"log_chi", kDefaultLogChiTolerance},
      {"chi2_normalization", 1e-8},
      {"beta_normalization", 1e-6},
      {"conditional_norm", 1e-12},
      {"phi_independence", 1e-12},
      {"convergence_order", 0.1},
  };
  return defaults;
}

double ScenarioConfig::tolerance(const std::string& name) const {
  const auto& defaults = default_tolerances();
  if (!defaults.contains(name)) throw Error(ErrorCode::Parse, "unknown tolerance '" + name + "'");
  const auto it = tolerances.find(name);
  return it != tolerances.end() ? it->second : defaults.at(name);
}

nlohmann::json to_json(const ScenarioConfig& config) {
  nlohmann::json grids = nlohmann::json::object();
  for (const auto& [name, g] : config.grids) {
    grids[name] = {{"min", g.min}, {"max", g.max}, {"count", g.count}};
  }
  nlohmann::json tols = nlohmann::json::object();
  for (const auto& [name, v] : config.tolerances) tols[name] = v;
  return {
      {"state", to_json(config.state)},
      {"experiment", config.experiment},
      {"grids", grids},
      {"output_dir", config.output_dir},
      {"tolerances", tols},
      {"seed", config.seed},
  };
}

namespace {

void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorCode::Parse, where + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw Error(ErrorCode::Parse, "unknown key '" + key + "' in " + where);
  }
}

void check_grid(const std::string& name, const GridOverride& g) {
  if (!(g.max > g.min) || g.count < 2) {
    throw Error(ErrorCode::Parse, "grid '" + name + "' needs min < max and count >= 2");
  }
}

}  // namespace

ScenarioConfig scenario_from_json(const nlohmann::json& doc) {
  reject_unknown(doc, {"state", "experiment", "grids", "output_dir", "tolerances", "seed"},
                 "scenario");
  ScenarioConfig config;
  try {
    if (doc.contains("state")) config.state = state_from_json(doc.at("state"));
    if (doc.contains("experiment")) config.experiment = doc.at("experiment").get<std::string>();
    if (doc.contains("output_dir")) config.output_dir = doc.at("output_dir").get<std::string>();
    if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("grids")) {
      reject_unknown(doc.at("grids"), {"Q", "P", "e", "t", "theta"}, "grids");
      for (const auto& [name, g] : doc.at("grids").items()) {
        reject_unknown(g, {"min", "max", "count"}, "grid '" + name + "'");
        GridOverride o{g.at("min").get<double>(), g.at("max").get<double>(),
                       g.at("count").get<std::size_t>()};
        check_grid(name, o);
        config.grids[name] = o;
      }
    }
    if (doc.contains("tolerances")) {
      const auto& t = doc.at("tolerances");
      if (!t.is_object()) throw Error(ErrorCode::Parse, "tolerances must be a JSON object");
      for (const auto& [name, v] : t.items()) {
        if (!default_tolerances().contains(name)) {
          throw Error(ErrorCode::Parse, "unknown tolerance '" + name + "'");
        }
        config.tolerances[name] = v.get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed scenario: ") + e.what());
  }
  return config;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
  return scenario_from_json(doc);
}

void save_scenario(const std::filesystem::path& path, const ScenarioConfig& config) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << to_json(config).dump(2) << '\n';
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::Parse, "bad number '" + s + "' in " + what);
  }
  return v;
}

}  // namespace

GridOverrides parse_grid_overrides(const std::string& spec) {
  GridOverrides out;
  for (const auto& item : split(spec, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Parse, "expected name=min:max:count, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    const auto fields = split(item.substr(eq + 1), ':');
    if (fields.size() != 3) throw Error(ErrorCode::Parse, "expected name=min:max:count, got '" + item + "'");
    const double count = parse_double(fields[2], item);
    if (count != std::floor(count) || count < 2) throw Error(ErrorCode::Parse, "bad count in '" + item + "'");
    GridOverride g{parse_double(fields[0], item), parse_double(fields[1], item),
                   static_cast<std::size_t>(count)};
    check_grid(name, g);
    out[name] = g;
  }
  return out;
}

std::map<std::string, double> parse_tolerances(const std::string& spec) {
  std::map<std::string, double> out;
  for (const auto& item : split(spec, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Parse, "expected name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    if (!default_tolerances().contains(name)) throw Error(ErrorCode::Parse, "unknown tolerance '" + name + "'");
    out[name] = parse_double(item.substr(eq + 1), item);
  }
  return out;
}

Axis apply_override(Axis axis, const GridOverrides& overrides) {
  const auto it = overrides.find(axis.name);
  if (it != overrides.end()) {
    axis.min = it->second.min;
    axis.max = it->second.max;
    axis.count = it->second.count;
  }
  return axis;
}

}  // namespace paw
