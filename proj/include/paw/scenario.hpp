#pragma once

// Scenario configuration: a state, the experiment to run, grid overrides and tolerances.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "json.hpp"
#include "paw/marginals.hpp"
#include "paw/pawstate.hpp"

namespace paw {

struct GridOverride {
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;

  friend bool operator==(const GridOverride&, const GridOverride&) = default;
};

using GridOverrides = std::map<std::string, GridOverride>;

/// J = 3 example: 2J = 6, ε/ω = 3/4, M = 4, c_{−1} = c_3 = 1/√2.
PawState default_state();

struct ScenarioConfig {
  PawState state = default_state();
  std::string experiment;
  GridOverrides grids;
  std::string output_dir = ".";
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 0;

  /// Named tolerance, falling back to its default; unknown names throw Error{Parse}.
  double tolerance(const std::string& name) const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Tolerance names accepted in a scenario and their defaults.
const std::map<std::string, double>& default_tolerances();

nlohmann::json to_json(const ScenarioConfig& config);
ScenarioConfig scenario_from_json(const nlohmann::json& doc);

ScenarioConfig load_scenario(const std::filesystem::path& path);
void save_scenario(const std::filesystem::path& path, const ScenarioConfig& config);

/// "Q=-2:2:101,P=-2:2:101" → overrides. Throws Error{Parse}.
GridOverrides parse_grid_overrides(const std::string& spec);

/// "name=value,..." → tolerances. Throws Error{Parse}.
std::map<std::string, double> parse_tolerances(const std::string& spec);

/// The axis with the override for its name applied, if any.
Axis apply_override(Axis axis, const GridOverrides& overrides);

}  // namespace paw
