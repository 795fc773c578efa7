#pragma once

// Subcommand implementations. Each returns a process exit code:
// 0 success, 1 input error, 2 numerical failure.

#include "scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace lsnsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumerical = 2;

/// Command-line overrides layered on top of a scenario.
struct CommandOptions {
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<GridSettings> grid;
  std::optional<std::vector<double>> levels;
  std::filesystem::path out;
  bool literal_eq29 = false;
  unsigned threads = 0;
  /// eval only: dB abscissae.
  std::vector<double> at_db;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

int cmd_fit(const Scenario& sc, const CommandOptions& opts, Streams io);
int cmd_compare(const Scenario& sc, const CommandOptions& opts, Streams io);
int cmd_sample(const Scenario& sc, const CommandOptions& opts, Streams io);
int cmd_slopes(const Scenario& sc, const CommandOptions& opts, Streams io);
int cmd_eval(const Scenario& sc, const CommandOptions& opts, Streams io);

/// Loads the scenario, dispatches on name and maps lsnsum::Error to an exit
/// code with a message on io.err.
int run_command(const std::string& name, const std::filesystem::path& scenario, const CommandOptions& opts,
                Streams io);

}  // namespace lsnsum::cli
