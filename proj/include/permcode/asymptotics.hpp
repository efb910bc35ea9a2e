#pragma once

// Numerical checks of the large-N behaviour: short-column/short-row lemmas,
// the Plancherel and Schur-Weyl tail bounds, the partition-count bound, and
// Monte Carlo estimators of P_max beyond the enumeration cap.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "permcode/coding.hpp"
#include "permcode/errors.hpp"
#include "permcode/exact.hpp"
#include "permcode/young.hpp"

namespace permcode::asymptotics {

/// Hardy-Ramanujan exponent pi * sqrt(2/3).
inline const double kHardyRamanujanC = std::numbers::pi * std::sqrt(2.0 / 3.0);

/// Log-domain comparisons allow this much rounding before calling a violation.
inline constexpr double kLogTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Lemma scans.

struct LemmaScanReport {
  int n = 0;
  int d = 0;
  double a_threshold = 0.0;
  std::uint64_t short_count = 0;  // diagrams below the A sqrt(N) threshold
  std::uint64_t long_count = 0;
  std::uint64_t satisfied = 0;    // short, strict inequality holds
  std::uint64_t ties = 0;         // short, D == m
  std::uint64_t violations = 0;   // short, inequality reversed

  bool holds() const noexcept { return violations == 0; }
};

namespace detail {

enum class ScanKind { ShortColumns, ShortRows };

inline LemmaScanReport lemma_scan(ScanKind kind, int n, int d, double a_threshold, int cap) {
  if (d < 1) throw DomainError("d must be >= 1");
  if (!(a_threshold > 0.0)) throw DomainError("threshold multiplier A must be positive");
  young::check_enumerable(n, cap);
  const BigInt n_factorial = factorial(static_cast<unsigned>(n));
  const double limit = a_threshold * std::sqrt(static_cast<double>(n));
  LemmaScanReport report{.n = n, .d = d, .a_threshold = a_threshold};
  young::for_each_partition(
      n,
      [&](std::span<const int> rows) {
        const int length = kind == ScanKind::ShortColumns ? static_cast<int>(rows.size()) : rows.front();
        if (!(length < limit)) {
          ++report.long_count;
          return;
        }
        ++report.short_count;
        // sign of m - D equals sign of prod(d - i + j) - N!
        const int cmp = young::content_product(rows, d).compare(n_factorial);
        const int expected = kind == ScanKind::ShortColumns ? 1 : -1;
        if (cmp == 0) ++report.ties;
        else if (cmp == expected) ++report.satisfied;
        else ++report.violations;
      },
      cap);
  return report;
}

}  // namespace detail

/// Diagrams with first column shorter than A sqrt(N) should have D < m.
inline LemmaScanReport lemma1_scan(int n, int d, double a_threshold,
                                   int cap = young::kDefaultEnumerationCap) {
  return detail::lemma_scan(detail::ScanKind::ShortColumns, n, d, a_threshold, cap);
}

/// Diagrams with first row shorter than A sqrt(N) should have m < D.
inline LemmaScanReport lemma2_scan(int n, int d, double a_threshold,
                                   int cap = young::kDefaultEnumerationCap) {
  return detail::lemma_scan(detail::ScanKind::ShortRows, n, d, a_threshold, cap);
}

// ---------------------------------------------------------------------------
// Tail bounds.

struct BoundCheckReport {
  int n = 0;
  int d = 0;                     // 0 for the Plancherel bound
  std::uint64_t checked = 0;
  std::uint64_t vacuous = 0;     // right-hand side >= 1
  std::uint64_t violations = 0;
  double min_slack = std::numeric_limits<double>::infinity();  // ln(bound) - ln(measure)
  double max_slack = -std::numeric_limits<double>::infinity();
  std::vector<int> worst_rows;   // diagram attaining min_slack

  bool holds() const noexcept { return violations == 0; }
};

namespace detail {

inline void record_slack(BoundCheckReport& report, std::span<const int> rows, double log_bound,
                         double log_measure) {
  ++report.checked;
  if (log_bound >= 0.0) ++report.vacuous;
  const double slack = log_bound - log_measure;
  if (slack < -kLogTolerance) ++report.violations;
  if (slack < report.min_slack) {
    report.min_slack = slack;
    report.worst_rows.assign(rows.begin(), rows.end());
  }
  report.max_slack = std::max(report.max_slack, slack);
}

}  // namespace detail

/// ln of exp(-2 l (ln(l / sqrt N) - 1)), the Plancherel first-column bound.
inline double log_plancherel_column_bound(int n, int first_column) {
  const double l = first_column;
  return -2.0 * l * (std::log(l / std::sqrt(static_cast<double>(n))) - 1.0);
}

/// ln of exp(-l (2 (ln(l / sqrt N) - 1) - 1 / (2 r))), the Schur-Weyl first-row bound.
inline double log_schur_weyl_row_bound(int n, int d, int first_row) {
  const double l = first_row;
  const double r = static_cast<double>(d) / n;
  return -l * (2.0 * (std::log(l / std::sqrt(static_cast<double>(n))) - 1.0) - 1.0 / (2.0 * r));
}

/// Checks mu_N(rho) = D^2 / N! against the first-column bound for every diagram.
inline BoundCheckReport kerov_bound_check(int n, int cap = young::kDefaultEnumerationCap) {
  young::check_enumerable(n, cap);
  BoundCheckReport report{.n = n};
  const double log_n_factorial = young::log_factorial(n);
  young::for_each_partition(
      n,
      [&](std::span<const int> rows) {
        const double log_measure = 2.0 * young::log_dim_irrep(rows) - log_n_factorial;
        detail::record_slack(report, rows,
                             log_plancherel_column_bound(n, static_cast<int>(rows.size())),
                             log_measure);
      },
      cap);
  return report;
}

/// Checks m D / d^N against the first-row bound with r = d / N. Diagrams with
/// m = 0 carry no weight and pass.
inline BoundCheckReport kerov_row_bound_check(int n, int d, int cap = young::kDefaultEnumerationCap) {
  if (d < 1) throw DomainError("d must be >= 1");
  young::check_enumerable(n, cap);
  BoundCheckReport report{.n = n, .d = d};
  const double log_d_power = n * std::log(static_cast<double>(d));
  young::for_each_partition(
      n,
      [&](std::span<const int> rows) {
        const double log_bound = log_schur_weyl_row_bound(n, d, rows.front());
        const double log_mult = young::log_multiplicity(rows, d);
        const double log_measure = std::isinf(log_mult)
                                       ? -std::numeric_limits<double>::infinity()
                                       : log_mult + young::log_dim_irrep(rows) - log_d_power;
        detail::record_slack(report, rows, log_bound, log_measure);
      },
      cap);
  return report;
}

struct ErdosReport {
  int n_max = 0;
  double erdos_c = 0.0;
  std::uint64_t violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();  // C sqrt(n) - ln p(n)
  int tightest_n = 0;

  bool holds() const noexcept { return violations == 0; }
};

/// p(n) < exp(C sqrt n) for every 1 <= n <= n_max, with exact p(n).
inline ErdosReport erdos_bound_check(int n_max, double erdos_c = kHardyRamanujanC) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  if (!(erdos_c > 0.0)) throw DomainError("Erdos constant C must be positive");
  const auto counts = young::partition_counts(n_max);
  ErdosReport report{.n_max = n_max, .erdos_c = erdos_c};
  for (int n = 1; n <= n_max; ++n) {
    const double margin = erdos_c * std::sqrt(static_cast<double>(n)) - log_of(counts[static_cast<std::size_t>(n)]);
    if (!(margin > 0.0)) ++report.violations;
    if (margin < report.min_margin) {
      report.min_margin = margin;
      report.tightest_n = n;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Monte Carlo estimators.

/// Number of independently seeded sub-streams. Fixed so results do not depend
/// on the thread count.
inline constexpr unsigned kStreamCount = 8;

namespace detail {

struct RunningStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double total = static_cast<double>(count + other.count);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(other.count) / total;
    count += other.count;
  }

  coding::Estimate estimate() const {
    if (count < 2) return {mean, 0.0};
    const double variance = m2 / static_cast<double>(count - 1);
    return {mean, std::sqrt(std::max(0.0, variance) / static_cast<double>(count))};
  }
};

inline young::Engine stream_engine(std::uint64_t seed, unsigned stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return young::Engine(seq);
}

/// Runs `draw(rng)` sample_count times spread over kStreamCount streams.
template <class Draw>
coding::Estimate run_streams(std::uint64_t sample_count, std::uint64_t seed, Draw draw,
                             unsigned threads = 0) {
  if (sample_count < 1) throw DomainError("sample_count must be >= 1");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<RunningStats> streams(kStreamCount);
  auto run_stream = [&](unsigned s) {
    const std::uint64_t share = sample_count / kStreamCount + (s < sample_count % kStreamCount ? 1 : 0);
    auto rng = stream_engine(seed, s);
    for (std::uint64_t i = 0; i < share; ++i) streams[s].push(draw(rng));
  };
  if (threads == 1) {
    for (unsigned s = 0; s < kStreamCount; ++s) run_stream(s);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min(threads, kStreamCount); ++t)
      pool.emplace_back([&, t] {
        for (unsigned s = t; s < kStreamCount; s += threads) run_stream(s);
      });
    for (auto& worker : pool) worker.join();
  }
  RunningStats total;
  for (const auto& stream : streams) total.merge(stream);
  return total.estimate();
}

}  // namespace detail

/// P_max = E_Plancherel[min(1, m / D)].
inline coding::Estimate pmax_estimate_plancherel(int n, int d, std::uint64_t sample_count,
                                                 std::uint64_t seed, unsigned threads = 0) {
  if (n < 1 || d < 1) throw DomainError("n and d must be >= 1");
  return detail::run_streams(
      sample_count, seed,
      [n, d](young::Engine& rng) {
        const auto shape = young::sample_plancherel(n, rng);
        const double log_ratio = young::log_mult_over_dim(shape.rows(), d);
        return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
      },
      threads);
}

struct SchurWeylEstimate {
  coding::Estimate ratio;                  // E_SchurWeyl[min(1, D / m)] = P_max / (d^N / N!)
  std::optional<coding::Estimate> p_max;   // when d^N / N! is a finite nonzero double
  double log_scale = 0.0;                  // ln(d^N / N!)
};

/// P_max / (d^N / N!) = E_SchurWeyl[min(1, D / m)].
inline SchurWeylEstimate pmax_estimate_schur_weyl(int n, int d, std::uint64_t sample_count,
                                                  std::uint64_t seed, unsigned threads = 0) {
  if (n < 1 || d < 1) throw DomainError("n and d must be >= 1");
  SchurWeylEstimate result;
  result.ratio = detail::run_streams(
      sample_count, seed,
      [n, d](young::Engine& rng) {
        const auto shape = young::sample_schur_weyl(n, d, rng);
        const double log_ratio = -young::log_mult_over_dim(shape.rows(), d);
        return log_ratio >= 0.0 ? 1.0 : std::exp(log_ratio);
      },
      threads);
  result.log_scale = n * std::log(static_cast<double>(d)) - young::log_factorial(n);
  const double scale = std::exp(result.log_scale);
  if (std::isfinite(scale) && scale > 0.0)
    result.p_max = coding::Estimate{result.ratio.value * scale, result.ratio.std_error * scale};
  return result;
}

// ---------------------------------------------------------------------------
// Sweeps along d = floor(r N).

inline const double kInverseE = 1.0 / std::numbers::e;

struct SweepRow {
  int n_boxes = 0;
  int n_colors = 0;
  double ratio = 0.0;
  coding::Method method = coding::Method::ExactEnumeration;
  std::optional<Rational> p_quantum_exact;
  double p_quantum = 0.0;
  double std_error = 0.0;
  Rational p_classical;
  Rational info_bound;
  double ratio_to_bound = 0.0;
};

/// d = floor(r N), at least 1. The small offset keeps products such as
/// 0.3 * 10 from rounding just below an integer.
inline int colors_for_ratio(double ratio, int n) {
  return std::max(1, static_cast<int>(std::floor(ratio * n + 1e-9)));
}

struct SweepOptions {
  std::uint64_t sample_count = 10'000;
  std::uint64_t seed = 0;
  int cap = young::kDefaultEnumerationCap;
  unsigned threads = 0;
};

inline SweepRow sweep_row(double ratio, int n, const SweepOptions& options) {
  if (n < 1) throw DomainError("sweep sizes must be positive");
  if (!(ratio > 0.0)) throw DomainError("ratio r must be positive");
  const int d = colors_for_ratio(ratio, n);
  const coding::CodingInstance instance(n, d);
  SweepRow row{.n_boxes = n, .n_colors = d, .ratio = ratio};
  row.p_classical = coding::classical_success(instance);
  row.info_bound = coding::info_bound(instance);

  if (n <= options.cap) {
    const auto report = coding::quantum_pmax_exact(instance, options.cap, options.threads);
    row.method = coding::Method::ExactEnumeration;
    row.p_quantum_exact = report.p_quantum_exact;
    row.p_quantum = to_double(*report.p_quantum_exact);
    row.ratio_to_bound = to_double(*report.p_quantum_exact / row.info_bound);
    return row;
  }

  const bool capped_bound = row.info_bound == 1;
  if (ratio > kInverseE) {
    const auto estimate = pmax_estimate_plancherel(n, d, options.sample_count, options.seed, options.threads);
    row.method = coding::Method::PlancherelMc;
    row.p_quantum = estimate.value;
    row.std_error = estimate.std_error;
    row.ratio_to_bound = capped_bound ? estimate.value : estimate.value / to_double(row.info_bound);
  } else {
    const auto estimate = pmax_estimate_schur_weyl(n, d, options.sample_count, options.seed, options.threads);
    row.method = coding::Method::SchurWeylMc;
    if (estimate.p_max) {
      row.p_quantum = estimate.p_max->value;
      row.std_error = estimate.p_max->std_error;
    } else {
      row.p_quantum = std::exp(std::log(estimate.ratio.value) + estimate.log_scale);
      row.std_error = std::exp(std::log(estimate.ratio.std_error) + estimate.log_scale);
    }
    row.ratio_to_bound = capped_bound ? row.p_quantum : estimate.ratio.value;
  }
  return row;
}

inline std::vector<SweepRow> theorem1_sweep(double ratio, const std::vector<int>& n_list,
                                            const SweepOptions& options = {}) {
  std::vector<SweepRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) rows.push_back(sweep_row(ratio, n, options));
  return rows;
}

}  // namespace permcode::asymptotics
