#pragma once

// Monte Carlo reference for sum_i exp(X_i), X ~ N(mu, M).

#include "lsnsum/corrstruct.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

namespace lsnsum {

inline constexpr std::size_t kDefaultSamples = 10'000'000;
inline constexpr std::size_t kDefaultChunkSize = 1 << 16;

struct SamplingOptions {
  /// Samples per independently seeded chunk. Output depends on it.
  std::size_t chunk_size = kDefaultChunkSize;
  /// Worker threads; 0 picks hardware concurrency. Output does not depend
  /// on it.
  unsigned threads = 0;
};

/// Right-continuous empirical CDF over positive samples.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  std::size_t size() const { return sorted_.size(); }
  std::span<const double> sorted_samples() const { return sorted_; }

  /// Fraction of samples <= x.
  double at(double x) const;
  /// Order statistic ceil(p n) (1-based). Throws DomainError unless 0 < p < 1.
  double quantile(double p) const;

 private:
  std::vector<double> sorted_;
};

inline double ecdf_at(const EmpiricalCdf& e, double x) { return e.at(x); }
inline double quantile(const EmpiricalCdf& e, double p) { return e.quantile(p); }

/// Gaussian vectors X = mu + L Z, one column per sample.
Eigen::MatrixXd sample_gaussian(const NaturalParams& np, std::size_t n_samples, std::uint64_t seed,
                                const SamplingOptions& options = {});

/// Sums in draw order.
std::vector<double> sample_sum_raw(const NaturalParams& np, std::size_t n_samples, std::uint64_t seed,
                                   const SamplingOptions& options = {});

EmpiricalCdf sample_sum(const NaturalParams& np, std::size_t n_samples, std::uint64_t seed,
                        const SamplingOptions& options = {});

/// Raw dump: contiguous little-endian IEEE-754 binary64, no header.
void write_raw_samples(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_raw_samples(const std::filesystem::path& path);

using CdfEvaluator = std::function<double(double)>;

struct ComparisonMetrics {
  double ks_distance = 0.0;
  std::vector<double> levels;
  /// 10 log10(q_fit) - 10 log10(q_emp) per level.
  std::vector<double> db_deviation;
  std::vector<double> q_fit;
  std::vector<double> q_emp;
};

/// Solves cdf(l) = p for l > 0 by bisection on log(l), starting around
/// guess, to probability tolerance prob_tol.
double invert_cdf(const CdfEvaluator& cdf, double p, double guess, double prob_tol = 1e-10);

/// Levels must lie strictly inside (1/n, 1 - 1/n); DomainError otherwise.
ComparisonMetrics compare(const CdfEvaluator& cdf, const EmpiricalCdf& e, std::span<const double> levels);

/// 99% Kolmogorov acceptance bound, 1.63 / sqrt(n).
inline double kolmogorov_bound_99(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

}  // namespace lsnsum
