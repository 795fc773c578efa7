#include "scenario.hpp"

#include "lsnsum/error.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lsnsum::cli {

namespace {

class Context {
 public:
  explicit Context(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& what) const {
    std::ostringstream os;
    os << origin_;
    const YAML::Mark m = node.Mark();
    if (!m.is_null()) os << ':' << m.line + 1 << ':' << m.column + 1;
    os << ": " << what;
    throw Error(ErrorCode::input_error, os.str());
  }

  double number(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(node, key + " must be a number");
    double v = 0.0;
    if (!YAML::convert<double>::decode(node, v) || !std::isfinite(v)) fail(node, key + " must be a finite number");
    return v;
  }

  std::uint64_t count(const YAML::Node& node, const std::string& key) const {
    const double v = number(node, key);
    if (v < 0.0 || v != std::floor(v) || v > 9.0e15) fail(node, key + " must be a non-negative integer");
    return static_cast<std::uint64_t>(v);
  }

  std::vector<double> numbers(const YAML::Node& node, const std::string& key) const {
    if (!node.IsSequence()) fail(node, key + " must be a list");
    std::vector<double> out;
    for (const auto& item : node) out.push_back(number(item, key));
    return out;
  }

  void check_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                  const std::string& where) const {
    if (!map.IsMap()) fail(map, where + " must be a mapping");
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      bool ok = false;
      for (auto a : allowed) ok = ok || key == a;
      if (!ok) fail(kv.first, "unknown key '" + key + "' in " + where);
    }
  }

 private:
  std::string origin_;
};

LognormalSumSpec parse_sum(const Context& ctx, const YAML::Node& sum) {
  ctx.check_keys(sum, {"n", "mu_db", "sigma_db", "rho", "corr"}, "sum");
  if (!sum["mu_db"]) ctx.fail(sum, "sum.mu_db is required");
  if (!sum["sigma_db"]) ctx.fail(sum, "sum.sigma_db is required");

  if (sum["n"]) {
    // Homogeneous shorthand.
    if (sum["corr"]) ctx.fail(sum["corr"], "corr cannot be combined with the n/rho shorthand");
    const auto n = ctx.count(sum["n"], "sum.n");
    if (n == 0) ctx.fail(sum["n"], "sum.n must be at least 1");
    const double rho = sum["rho"] ? ctx.number(sum["rho"], "sum.rho") : 0.0;
    if (n > 1 && !(rho > -1.0 / static_cast<double>(n - 1)) ) {
      ctx.fail(sum["rho"], "equicorrelation rho must exceed -1/(n-1) for a positive definite matrix");
    }
    return LognormalSumSpec::equicorrelated(n, ctx.number(sum["mu_db"], "sum.mu_db"),
                                            ctx.number(sum["sigma_db"], "sum.sigma_db"), rho);
  }

  LognormalSumSpec spec;
  spec.mu_db = ctx.numbers(sum["mu_db"], "sum.mu_db");
  spec.sigma_db = ctx.numbers(sum["sigma_db"], "sum.sigma_db");
  const auto n = static_cast<Eigen::Index>(spec.mu_db.size());
  if (sum["rho"]) {
    if (sum["corr"]) ctx.fail(sum["rho"], "give either rho or corr, not both");
    const double rho = ctx.number(sum["rho"], "sum.rho");
    spec.corr = Eigen::MatrixXd::Constant(n, n, rho);
    spec.corr.diagonal().setOnes();
  } else if (sum["corr"]) {
    const YAML::Node& rows = sum["corr"];
    if (!rows.IsSequence() || static_cast<Eigen::Index>(rows.size()) != n) {
      ctx.fail(rows, "sum.corr must be a list of " + std::to_string(n) + " rows");
    }
    spec.corr.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto row = ctx.numbers(rows[static_cast<std::size_t>(i)], "sum.corr row");
      if (static_cast<Eigen::Index>(row.size()) != n) {
        ctx.fail(rows[static_cast<std::size_t>(i)], "sum.corr row " + std::to_string(i) + " must have " +
                                                        std::to_string(n) + " entries");
      }
      for (Eigen::Index j = 0; j < n; ++j) spec.corr(i, j) = row[static_cast<std::size_t>(j)];
    }
  } else {
    spec.corr = Eigen::MatrixXd::Identity(n, n);
  }
  return spec;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  const Context ctx(origin);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << origin << ':' << e.mark.line + 1 << ':' << e.mark.column + 1 << ": " << e.msg;
    throw Error(ErrorCode::input_error, os.str());
  }
  if (!root.IsMap()) throw Error(ErrorCode::input_error, origin + ": scenario must be a mapping");
  ctx.check_keys(root, {"name", "sum", "mc", "grid", "levels"}, "scenario");
  if (!root["sum"]) ctx.fail(root, "missing 'sum' section");

  Scenario sc;
  if (root["name"]) sc.name = root["name"].as<std::string>();
  sc.spec = parse_sum(ctx, root["sum"]);

  if (const YAML::Node mc = root["mc"]) {
    ctx.check_keys(mc, {"samples", "seed"}, "mc");
    if (mc["samples"]) sc.mc.samples = ctx.count(mc["samples"], "mc.samples");
    if (mc["seed"]) sc.mc.seed = ctx.count(mc["seed"], "mc.seed");
    if (sc.mc.samples == 0) ctx.fail(mc["samples"], "mc.samples must be positive");
  }
  if (const YAML::Node g = root["grid"]) {
    ctx.check_keys(g, {"min_db", "max_db", "step_db"}, "grid");
    for (const char* key : {"min_db", "max_db", "step_db"}) {
      if (!g[key]) ctx.fail(g, std::string("grid.") + key + " is required");
    }
    GridSettings grid{ctx.number(g["min_db"], "grid.min_db"), ctx.number(g["max_db"], "grid.max_db"),
                      ctx.number(g["step_db"], "grid.step_db")};
    try {
      validate(grid);
    } catch (const Error& e) {
      ctx.fail(g, e.what());
    }
    sc.grid = grid;
  }
  if (const YAML::Node lv = root["levels"]) {
    sc.levels = ctx.numbers(lv, "levels");
    for (double p : sc.levels) {
      if (!(p > 0.0 && p < 1.0)) ctx.fail(lv, "levels must lie in (0, 1)");
    }
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::input_error, "cannot open scenario file " + path.string());
  std::ostringstream text;
  text << is.rdbuf();
  Scenario sc = parse_scenario(text.str(), path.string());
  if (sc.name.empty()) sc.name = path.stem().string();
  return sc;
}

namespace {

double parse_number(std::string_view s, const char* what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::input_error, std::string("invalid number '") + std::string(s) + "' in " + what);
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (std::size_t start = 0;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

GridSettings parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw Error(ErrorCode::input_error, "grid must be min:max:step in dB");
  GridSettings g{parse_number(parts[0], "grid"), parse_number(parts[1], "grid"), parse_number(parts[2], "grid")};
  validate(g);
  return g;
}

std::vector<double> parse_levels(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) {
    const double p = parse_number(part, "levels");
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::input_error, "levels must lie in (0, 1)");
    out.push_back(p);
  }
  return out;
}

void validate(const GridSettings& grid) {
  if (!(grid.step_db > 0.0)) throw Error(ErrorCode::input_error, "grid step must be positive");
  if (!(grid.max_db >= grid.min_db)) throw Error(ErrorCode::input_error, "grid max must not be below grid min");
  if ((grid.max_db - grid.min_db) / grid.step_db > 1e7) {
    throw Error(ErrorCode::input_error, "grid has more than 10^7 points");
  }
}

std::vector<double> grid_points(const GridSettings& grid) {
  validate(grid);
  // Index-based so accumulated rounding never drops the last point.
  const auto steps = static_cast<std::size_t>(std::floor((grid.max_db - grid.min_db) / grid.step_db + 1e-9));
  std::vector<double> out;
  out.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) out.push_back(grid.min_db + static_cast<double>(k) * grid.step_db);
  return out;
}

}  // namespace lsnsum::cli
