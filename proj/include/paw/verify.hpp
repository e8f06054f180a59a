#pragma once

// Machine-readable self-check of a state against the invariants of the construction.

#include <string>
#include <vector>

#include "json.hpp"
#include "paw/scenario.hpp"

namespace paw {

struct CheckResult {
  std::string name;
  bool pass = false;
  bool skipped = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool pass() const;
};

/// Runs every check on config.state; tolerances and the RNG seed come from the config.
VerifyReport run_verify(const ScenarioConfig& config);

nlohmann::json to_json(const VerifyReport& report);

/// Copy of the state with every Fock level shifted by `shift`, bypassing validation.
PawState shift_levels(const PawState& state, std::int64_t shift);

}  // namespace paw
