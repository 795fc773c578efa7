#include "lsnsum/mc.hpp"

#include "lsnsum/error.hpp"
#include "lsnsum/normal.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace lsnsum {

namespace {

using Eigen::Index;

std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

// Uniform on the open interval (0, 1) from the top 53 bits.
inline double open_uniform(std::mt19937_64& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

unsigned resolve_threads(unsigned requested, std::size_t chunks) {
  unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(chunks, 1)));
}

// Calls body(chunk, begin, end) for every chunk; chunks are claimed
// dynamically but each writes only its own range.
template <class Body>
void for_each_chunk(std::size_t n, const SamplingOptions& options, Body body) {
  const std::size_t chunk_size = std::max<std::size_t>(options.chunk_size, 1);
  const std::size_t chunks = (n + chunk_size - 1) / chunk_size;
  const unsigned threads = resolve_threads(options.threads, chunks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
      body(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
    }
  };
  if (threads <= 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
}

// Draws one Gaussian vector into x.
inline void draw(const NaturalParams& np, std::mt19937_64& eng, Eigen::VectorXd& z, Eigen::VectorXd& x) {
  const Index n = np.mu.size();
  for (Index j = 0; j < n; ++j) z(j) = inv_std_normal_cdf(open_uniform(eng));
  for (Index i = 0; i < n; ++i) {
    double acc = np.mu(i);
    for (Index j = 0; j <= i; ++j) acc += np.chol(i, j) * z(j);
    x(i) = acc;
  }
}

}  // namespace

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw Error(ErrorCode::domain_error, "empirical CDF needs at least one sample");
  for (double v : sorted_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::domain_error, "samples must be positive and finite");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::at(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream os;
    os << "quantile level must be in (0, 1), got " << p;
    throw Error(ErrorCode::domain_error, os.str());
  }
  const auto n = static_cast<double>(sorted_.size());
  auto k = static_cast<std::size_t>(std::ceil(p * n));
  k = std::clamp<std::size_t>(k, 1, sorted_.size());
  return sorted_[k - 1];
}

Eigen::MatrixXd sample_gaussian(const NaturalParams& np, std::size_t n_samples, std::uint64_t seed,
                                const SamplingOptions& options) {
  const Index dim = np.mu.size();
  Eigen::MatrixXd out(dim, static_cast<Index>(n_samples));
  for_each_chunk(n_samples, options, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto eng = chunk_engine(seed, chunk);
    Eigen::VectorXd z(dim), x(dim);
    for (std::size_t s = begin; s < end; ++s) {
      draw(np, eng, z, x);
      out.col(static_cast<Index>(s)) = x;
    }
  });
  return out;
}

std::vector<double> sample_sum_raw(const NaturalParams& np, std::size_t n_samples, std::uint64_t seed,
                                   const SamplingOptions& options) {
  const Index dim = np.mu.size();
  std::vector<double> out(n_samples);
  for_each_chunk(n_samples, options, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto eng = chunk_engine(seed, chunk);
    Eigen::VectorXd z(dim), x(dim);
    for (std::size_t s = begin; s < end; ++s) {
      draw(np, eng, z, x);
      double sum = 0.0;
      for (Index i = 0; i < dim; ++i) sum += std::exp(x(i));
      out[s] = sum;
    }
  });
  return out;
}

EmpiricalCdf sample_sum(const NaturalParams& np, std::size_t n_samples, std::uint64_t seed,
                        const SamplingOptions& options) {
  if (n_samples == 0) throw Error(ErrorCode::domain_error, "sample count must be positive");
  return EmpiricalCdf(sample_sum_raw(np, n_samples, seed, options));
}

void write_raw_samples(const std::filesystem::path& path, std::span<const double> values) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::input_error, "cannot open " + path.string() + " for writing");
  std::vector<char> buf(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) buf[i * 8 + static_cast<std::size_t>(b)] = static_cast<char>((bits >> (8 * b)) & 0xff);
  }
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!os) throw Error(ErrorCode::input_error, "failed writing " + path.string());
}

std::vector<double> read_raw_samples(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::input_error, "cannot open " + path.string());
  std::vector<char> buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (buf.size() % 8 != 0) throw Error(ErrorCode::input_error, path.string() + " is not a whole number of doubles");
  std::vector<double> out(buf.size() / 8);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i * 8 + static_cast<std::size_t>(b)]))
              << (8 * b);
    }
    out[i] = std::bit_cast<double>(bits);
  }
  return out;
}

double invert_cdf(const CdfEvaluator& cdf, double p, double guess, double prob_tol) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::domain_error, "probability must be in (0, 1)");
  if (!(guess > 0.0) || !std::isfinite(guess)) guess = 1.0;
  double lo = std::log(guess);
  double hi = lo;
  double step = 0.5;
  for (int it = 0; cdf(std::exp(lo)) > p; ++it) {
    lo -= step;
    step *= 2.0;
    if (it > 60) throw Error(ErrorCode::non_convergence, "cannot bracket quantile from below");
  }
  step = 0.5;
  for (int it = 0; cdf(std::exp(hi)) < p; ++it) {
    hi += step;
    step *= 2.0;
    if (it > 60) throw Error(ErrorCode::non_convergence, "cannot bracket quantile from above");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = cdf(std::exp(mid));
    if (std::abs(f - p) <= prob_tol && hi - lo < 1e-9) return std::exp(mid);
    if (f < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) return std::exp(0.5 * (lo + hi));
  }
  return std::exp(0.5 * (lo + hi));
}

ComparisonMetrics compare(const CdfEvaluator& cdf, const EmpiricalCdf& e, std::span<const double> levels) {
  const auto n = static_cast<double>(e.size());
  for (double p : levels) {
    if (!(p > 1.0 / n && p < 1.0 - 1.0 / n)) {
      std::ostringstream os;
      os << "level " << p << " is outside the empirical support (" << 1.0 / n << ", " << 1.0 - 1.0 / n << ")";
      throw Error(ErrorCode::domain_error, os.str());
    }
  }
  ComparisonMetrics m;
  const auto xs = e.sorted_samples();
  for (std::size_t i = 0; i < xs.size();) {
    std::size_t run_end = i + 1;
    while (run_end < xs.size() && xs[run_end] == xs[i]) ++run_end;
    const double f = cdf(xs[i]);
    const double emp = static_cast<double>(run_end) / n;
    m.ks_distance = std::max(m.ks_distance, std::abs(f - emp));
    i = run_end;
  }
  m.ks_distance = std::clamp(m.ks_distance, 0.0, 1.0);
  m.levels.assign(levels.begin(), levels.end());
  for (double p : levels) {
    const double q_emp = e.quantile(p);
    const double q_fit = invert_cdf(cdf, p, q_emp);
    m.q_emp.push_back(q_emp);
    m.q_fit.push_back(q_fit);
    m.db_deviation.push_back(10.0 * std::log10(q_fit) - 10.0 * std::log10(q_emp));
  }
  return m;
}

}  // namespace lsnsum
