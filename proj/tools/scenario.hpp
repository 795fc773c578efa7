#pragma once

// Scenario files (YAML). Two forms of the sum are accepted:
//
//   sum:                      sum:
//     n: 8                      mu_db: [0, 2]
//     mu_db: 0                  sigma_db: [3, 6]
//     sigma_db: 3               corr: [[1, 0.5], [0.5, 1]]
//     rho: 0.7
//
// Optional sections:
//
//   mc:     {samples: 10000000, seed: 1}
//   grid:   {min_db: -10, max_db: 30, step_db: 0.25}
//   levels: [0.5, 0.9, 0.99, 0.999]
//
// Without a grid, commands derive one from the fitted distribution.

#include "lsnsum/corrstruct.hpp"
#include "lsnsum/mc.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lsnsum::cli {

struct McSettings {
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = 1;
};

struct GridSettings {
  double min_db = 0.0;
  double max_db = 0.0;
  double step_db = 0.25;
};

struct Scenario {
  std::string name;
  LognormalSumSpec spec;
  McSettings mc;
  std::optional<GridSettings> grid;
  std::vector<double> levels{0.01, 0.1, 0.5, 0.9, 0.99, 0.999};
};

/// Throws lsnsum::Error (input_error) with file:line context.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& text, const std::string& origin = "<string>");

/// "min:max:step" in dB.
GridSettings parse_grid(std::string_view text);
/// Comma-separated probabilities.
std::vector<double> parse_levels(std::string_view text);

void validate(const GridSettings& grid);
/// Inclusive of both ends when the span is a whole number of steps.
std::vector<double> grid_points(const GridSettings& grid);

}  // namespace lsnsum::cli
