#include "commands.hpp"

#include "csv.hpp"

#include "lsnsum/baselines.hpp"
#include "lsnsum/error.hpp"
#include "lsnsum/fit.hpp"
#include "lsnsum/log_skew_normal.hpp"
#include "lsnsum/mc.hpp"
#include "lsnsum/normal.hpp"
#include "lsnsum/probscale.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace lsnsum::cli {

namespace {

// Tail mass left outside the default grid on each side.
constexpr double kGridTail = 1e-6;
constexpr double kDefaultStepDb = 0.25;

Scenario with_overrides(Scenario sc, const CommandOptions& opts) {
  if (opts.samples) {
    if (*opts.samples == 0) throw Error(ErrorCode::input_error, "--samples must be positive");
    sc.mc.samples = *opts.samples;
  }
  if (opts.seed) sc.mc.seed = *opts.seed;
  if (opts.grid) sc.grid = opts.grid;
  if (opts.levels) sc.levels = *opts.levels;
  return sc;
}

FitOptions fit_options(const CommandOptions& opts) {
  FitOptions fo;
  fo.literal_location = opts.literal_eq29;
  return fo;
}

double to_db(double l) { return 10.0 * std::log10(l); }
double from_db(double x_db) { return std::pow(10.0, x_db / 10.0); }

std::vector<double> abscissae(const Scenario& sc, const LsnParams& p) {
  if (sc.grid) return grid_points(*sc.grid);
  const CdfEvaluator cdf = [&](double l) { return lsn_cdf(l, p); };
  const double median = std::exp(p.eps);
  const double lo = std::floor(to_db(invert_cdf(cdf, kGridTail, median)));
  const double hi = std::ceil(to_db(invert_cdf(cdf, 1.0 - kGridTail, median)));
  return grid_points({lo, hi, kDefaultStepDb});
}

std::optional<double> guarded(auto&& fn) {
  try {
    const double v = fn();
    if (std::isfinite(v)) return v;
  } catch (const Error&) {
  }
  return std::nullopt;
}

void emit_csv(const std::string& text, const CommandOptions& opts, Streams io) {
  if (opts.out.empty()) {
    io.out << text;
  } else {
    write_file_atomic(opts.out, text);
  }
}

void print_kv(std::ostream& os, const char* key, double v) {
  os << std::left << std::setw(20) << key << " = " << format_short(v) << '\n';
}

void print_kv(std::ostream& os, const char* key, const std::string& v) {
  os << std::left << std::setw(20) << key << " = " << v << '\n';
}

}  // namespace

int cmd_fit(const Scenario& in, const CommandOptions& opts, Streams io) {
  const Scenario sc = with_overrides(in, opts);
  const FitReport r = fit_lsn(sc.spec, fit_options(opts));
  std::ostream& os = io.out;
  print_kv(os, "scenario", sc.name);
  print_kv(os, "components", std::to_string(sc.spec.size()));
  print_kv(os, "lambda_opt", r.params.lambda);
  print_kv(os, "eps", r.params.eps);
  print_kv(os, "eps_db", r.params.eps_db());
  print_kv(os, "omega", r.params.omega);
  print_kv(os, "omega_db", r.params.omega_db());
  print_kv(os, "lambda0", r.lambda0);
  print_kv(os, "lambda0_fallback", r.lambda0_fallback ? "true" : "false");
  print_kv(os, "iterations", std::to_string(r.iterations));
  print_kv(os, "residual", r.residual);
  print_kv(os, "mean_residual", r.moment_residuals.mean);
  print_kv(os, "variance_residual", r.moment_residuals.variance);
  print_kv(os, "slope_match", r.slope_match);
  print_kv(os, "assumption_ok", r.assumption_ok ? "true" : "false");
  print_kv(os, "sum_mean", r.moments.mean);
  print_kv(os, "sum_variance", r.moments.variance);
  print_kv(os, "sum_b_tilde", r.precision.sum_b_tilde);
  print_kv(os, "reduced_size", std::to_string(r.precision.reduced_size()));
  for (const auto& w : r.warnings) os << "warning: " << w << '\n';
  return kExitOk;
}

int cmd_compare(const Scenario& in, const CommandOptions& opts, Streams io) {
  const Scenario sc = with_overrides(in, opts);
  const NaturalParams np = build_natural(sc.spec);
  const FitReport fit = fit_lsn(np, fit_options(opts));
  const LognormalParams fw = fit_fw(fit.moments);
  const LsnParams& lsn = fit.params;

  SamplingOptions so;
  so.threads = opts.threads;
  const EmpiricalCdf e = sample_sum(np, sc.mc.samples, sc.mc.seed, so);
  const double n = static_cast<double>(e.size());

  const ProbitCurve lsn_probit = probit_curve(lsn);
  CsvWriter csv({"x_db", "cdf_mc", "cdf_lsn", "cdf_fw", "ccdf_mc", "ccdf_lsn", "ccdf_fw", "probit_mc", "probit_lsn",
                 "probit_fw"});
  for (double x_db : abscissae(sc, lsn)) {
    const double l = from_db(x_db);
    const double cdf_mc = e.at(l);
    const double clipped = std::clamp(cdf_mc, 1.0 / n, 1.0 - 1.0 / n);
    csv.add_row({x_db, cdf_mc, lsn_cdf(l, lsn), fw_cdf(l, fw), 1.0 - cdf_mc, lsn_ccdf(l, lsn), fw_ccdf(l, fw),
                 guarded([&] { return inv_std_normal_cdf(clipped); }),
                 guarded([&] { return lsn_probit(std::log(l)); }), fw_probit(l, fw)});
  }
  emit_csv(csv.str(), opts, io);

  std::vector<double> usable;
  for (double p : sc.levels) {
    if (p > 1.0 / n && p < 1.0 - 1.0 / n) {
      usable.push_back(p);
    } else {
      io.err << "warning: level " << format_short(p) << " is outside the empirical support of " << e.size()
             << " samples and is reported as absent\n";
    }
  }
  const ComparisonMetrics m_lsn = compare([&](double l) { return lsn_cdf(l, lsn); }, e, usable);
  const ComparisonMetrics m_fw = compare([&](double l) { return fw_cdf(l, fw); }, e, usable);

  // Metrics go to stdout unless stdout already carries the CSV.
  std::ostream& os = opts.out.empty() ? io.err : io.out;
  print_kv(os, "scenario", sc.name);
  print_kv(os, "samples", std::to_string(e.size()));
  print_kv(os, "seed", std::to_string(sc.mc.seed));
  print_kv(os, "ks_lsn", m_lsn.ks_distance);
  print_kv(os, "ks_fw", m_fw.ks_distance);
  print_kv(os, "ks_bound_99", kolmogorov_bound_99(e.size()));
  os << std::left << std::setw(12) << "level" << std::setw(26) << "q_mc_db" << std::setw(26) << "dev_lsn_db"
     << "dev_fw_db" << '\n';
  std::size_t k = 0;
  for (double p : sc.levels) {
    os << std::left << std::setw(12) << format_short(p);
    if (k < usable.size() && usable[k] == p) {
      os << std::setw(26) << format_short(to_db(m_lsn.q_emp[k])) << std::setw(26)
         << format_short(m_lsn.db_deviation[k]) << format_short(m_fw.db_deviation[k]) << '\n';
      ++k;
    } else {
      os << "absent\n";
    }
  }
  for (const auto& w : fit.warnings) io.err << "warning: " << w << '\n';
  return kExitOk;
}

int cmd_sample(const Scenario& in, const CommandOptions& opts, Streams io) {
  const Scenario sc = with_overrides(in, opts);
  // Sampling alone tolerates singular correlation (e.g. rho = 1).
  const NaturalParams np = build_natural(sc.spec, FactorPolicy::semidefinite);
  SamplingOptions so;
  so.threads = opts.threads;
  std::vector<double> raw = sample_sum_raw(np, sc.mc.samples, sc.mc.seed, so);
  if (!opts.out.empty()) {
    std::filesystem::path tmp = opts.out;
    tmp += ".tmp";
    write_raw_samples(tmp, raw);
    std::filesystem::rename(tmp, opts.out);
  }
  double sum = 0.0;
  for (double v : raw) sum += v;
  const double mean = sum / static_cast<double>(raw.size());
  const EmpiricalCdf e(std::move(raw));
  const double n = static_cast<double>(e.size());

  std::ostream& os = io.out;
  print_kv(os, "scenario", sc.name);
  print_kv(os, "samples", std::to_string(e.size()));
  print_kv(os, "seed", std::to_string(sc.mc.seed));
  print_kv(os, "rank", std::to_string(np.rank));
  print_kv(os, "sample_mean", mean);
  print_kv(os, "exact_mean", sum_moments(np).mean);
  if (!opts.out.empty()) print_kv(os, "raw_output", opts.out.string());
  for (double p : sc.levels) {
    const std::string key = "q_db(" + format_short(p) + ")";
    if (p > 1.0 / n && p < 1.0 - 1.0 / n) {
      print_kv(os, key.c_str(), to_db(e.quantile(p)));
    } else {
      print_kv(os, key.c_str(), "absent");
    }
  }
  return kExitOk;
}

int cmd_slopes(const Scenario& in, const CommandOptions& opts, Streams io) {
  const Scenario sc = with_overrides(in, opts);
  const FitReport fit = fit_lsn(sc.spec, fit_options(opts));
  const TailSlopes scln = scln_tail_slopes(fit.precision);
  const TailSlopes lsn = lsn_tail_slopes(fit.params);
  const ProbitCurve curve = probit_curve(fit.params);
  const double probe_lower = empirical_probit_slope(curve, kDefaultLowerProbe);
  const double probe_upper = empirical_probit_slope(curve, kDefaultUpperProbe);

  std::ostream& os = io.out;
  os << std::left << std::setw(12) << "source" << std::setw(26) << "lower" << "upper" << '\n';
  auto row = [&](const char* name, double lower, double upper) {
    os << std::left << std::setw(12) << name << std::setw(26) << format_short(lower) << format_short(upper)
       << '\n';
  };
  row("scln", scln.lower, scln.upper);
  row("lsn", lsn.lower, lsn.upper);
  row("lsn_probe", probe_lower, probe_upper);
  os << "probe points: x = " << format_short(kDefaultLowerProbe) << " and " << format_short(kDefaultUpperProbe)
     << " (natural log), step " << format_short(kDefaultProbeStep) << '\n';
  return kExitOk;
}

int cmd_eval(const Scenario& in, const CommandOptions& opts, Streams io) {
  const Scenario sc = with_overrides(in, opts);
  const FitReport fit = fit_lsn(sc.spec, fit_options(opts));
  const LognormalParams fw = fit_fw(fit.moments);
  const LsnParams& p = fit.params;
  const std::vector<double> xs = opts.at_db.empty() ? abscissae(sc, p) : opts.at_db;

  CsvWriter csv({"x_db", "cdf_lsn", "ccdf_lsn", "pdf_lsn", "cdf_fw", "ccdf_fw", "pdf_fw"});
  for (double x_db : xs) {
    const double l = from_db(x_db);
    csv.add_row({x_db, lsn_cdf(l, p), lsn_ccdf(l, p), lsn_pdf(l, p), fw_cdf(l, fw), fw_ccdf(l, fw), fw_pdf(l, fw)});
  }
  emit_csv(csv.str(), opts, io);
  return kExitOk;
}

int run_command(const std::string& name, const std::filesystem::path& scenario, const CommandOptions& opts,
                Streams io) {
  try {
    const Scenario sc = load_scenario(scenario);
    if (name == "fit") return cmd_fit(sc, opts, io);
    if (name == "compare") return cmd_compare(sc, opts, io);
    if (name == "sample") return cmd_sample(sc, opts, io);
    if (name == "slopes") return cmd_slopes(sc, opts, io);
    if (name == "eval") return cmd_eval(sc, opts, io);
    io.err << "error: unknown command '" << name << "'\n";
    return kExitInput;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace lsnsum::cli
