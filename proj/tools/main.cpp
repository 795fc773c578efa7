#include "commands.hpp"
#include "scenario.hpp"

#include "lsnsum/error.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

constexpr const char* kDescription =
    "Log skew normal approximation to sums of correlated lognormal variables.\n"
    "Exit codes: 0 success, 1 input error, 2 numerical failure.";

constexpr const char* kSampleNote =
    "With --out, the sums are also written in draw order as a raw dump:\n"
    "contiguous little-endian IEEE-754 binary64 values, no header.";

}  // namespace

int main(int argc, char** argv) {
  using namespace lsnsum::cli;

  CLI::App app{kDescription, "lsnsum"};
  app.require_subcommand(1);

  CommandOptions opts;
  std::string scenario;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::string grid;
  std::string levels;

  struct Spec {
    const char* name;
    const char* help;
    bool mc;
    bool grid;
  };
  const Spec specs[] = {
      {"fit", "fit the log skew normal and print its parameters and diagnostics", false, false},
      {"compare", "Monte Carlo versus log skew normal and Fenton-Wilkinson; writes curve CSV", true, true},
      {"sample", "draw Monte Carlo sums and print quantiles", true, false},
      {"slopes", "theoretical and probed tail slopes on the lognormal probability scale", false, false},
      {"eval", "pointwise cdf, ccdf and pdf of both fits at dB abscissae", false, true},
  };
  for (const Spec& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("scenario", scenario, "scenario file (YAML)")->required()->check(CLI::ExistingFile);
    sub->add_flag("--literal-eq29", opts.literal_eq29, "use the location formula without the ln 2 term");
    if (s.mc) {
      sub->add_option("--samples", samples, "Monte Carlo sample count (overrides mc.samples)");
      sub->add_option("--seed", seed, "random seed (overrides mc.seed)");
      sub->add_option("--threads", opts.threads, "worker threads; 0 uses all cores. Output does not depend on it");
      sub->add_option("--levels", levels, "comma-separated CDF levels, e.g. 0.5,0.9,0.99");
    }
    if (s.grid) sub->add_option("--grid", grid, "dB grid as min:max:step");
    if (s.mc || s.grid) sub->add_option("--out", opts.out, "output file (written atomically); default stdout");
    if (std::string(s.name) == "eval") {
      sub->add_option("--at", opts.at_db, "dB abscissae (space separated); default is the grid")->expected(1, -1);
    }
    if (std::string(s.name) == "sample") sub->footer(kSampleNote);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    auto given = [&](const char* name) {
      const CLI::Option* o = chosen->get_option_no_throw(name);
      return o != nullptr && o->count() > 0;
    };
    if (given("--samples")) opts.samples = samples;
    if (given("--seed")) opts.seed = seed;
    if (!grid.empty()) opts.grid = parse_grid(grid);
    if (!levels.empty()) opts.levels = parse_levels(levels);
  } catch (const lsnsum::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return run_command(chosen->get_name(), scenario, opts, {std::cout, std::cerr});
}
