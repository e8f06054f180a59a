#pragma once

// Data behind each figure, written as CSV plus a JSON sidecar.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "paw/pawstate.hpp"
#include "paw/scenario.hpp"

namespace paw {

struct FigureOptions {
  std::filesystem::path output_dir = ".";
  std::optional<PawState> state;       // replaces the figure's default state
  std::vector<int> j_list{30, 120, 570};
  std::int64_t M = 170;                // two-level marginals
  std::vector<std::int64_t> dense_M{20, 50};
  GridOverrides grids;
  std::size_t theta_samples = 1000;
  std::size_t orbit_samples = 400;
};

const std::vector<std::string>& figure_names();

/// Writes the files for one figure and returns their paths. Throws Error{InvalidArgument}
/// for an unknown name and the state errors for an inadmissible state.
std::vector<std::filesystem::path> write_figure(const std::string& name, const FigureOptions& options);

/// Two levels n = M and n = M/2 with ε/ω = 1/2 and 2J = 3M (κ = 3/4, r = 2/3).
PawState two_level_state(std::int64_t M);

/// κrJ = 3/4 with equal weight on (m + J, n) = (2J/3, 0) and (2J, 1).
PawState large_j_state(int J);

/// ε/ω = 1/2, 2J = 3M, every allowed pair with equal weight.
PawState dense_state(std::int64_t M);

/// FNV-1a 64 of the state's JSON serialization, hex.
std::string state_fingerprint(const PawState& state);

}  // namespace paw
