#pragma once

// Partitions of n (Young diagrams) and the exact combinatorics of the
// corresponding S_n irreducible representations.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <iterator>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "permcode/errors.hpp"
#include "permcode/exact.hpp"

namespace permcode::young {

inline constexpr int kDefaultEnumerationCap = 66;
inline constexpr int kCharacterCap = 12;

/// A partition of n stored as its weakly decreasing row lengths.
class YoungDiagram {
public:
  YoungDiagram() = default;

  explicit YoungDiagram(std::vector<int> rows) : rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i] < 1) throw DomainError("row lengths must be positive: " + to_string());
      if (i > 0 && rows_[i] > rows_[i - 1])
        throw DomainError("row lengths must be weakly decreasing: " + to_string());
      size_ += rows_[i];
    }
  }

  const std::vector<int>& rows() const noexcept { return rows_; }
  int size() const noexcept { return size_; }
  bool empty() const noexcept { return rows_.empty(); }

  /// Length of the first row.
  int first_row() const noexcept { return rows_.empty() ? 0 : rows_.front(); }
  /// Length of the first column, i.e. the number of rows.
  int first_column() const noexcept { return static_cast<int>(rows_.size()); }

  std::vector<int> column_lengths() const {
    std::vector<int> columns(static_cast<std::size_t>(first_row()), 0);
    for (int row : rows_)
      for (int j = 0; j < row; ++j) ++columns[static_cast<std::size_t>(j)];
    return columns;
  }

  YoungDiagram transpose() const { return YoungDiagram(column_lengths()); }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(rows_[i]);
    }
    return out + "]";
  }

  friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;

private:
  std::vector<int> rows_;
  int size_ = 0;
};

inline void check_enumerable(int n, int cap = kDefaultEnumerationCap) {
  if (n < 1) throw DomainError("partition enumeration needs n >= 1, got " + std::to_string(n));
  if (n > cap)
    throw CapacityError("n = " + std::to_string(n) + " exceeds the enumeration cap " +
                        std::to_string(cap) + "; use a Monte Carlo estimator instead");
}

/// Streams partitions of n with all parts <= max_part in reverse-lexicographic
/// order ([n] first, [1^n] last).
class PartitionGenerator {
public:
  PartitionGenerator(int n, int max_part) {
    if (n < 0 || max_part < 0) throw DomainError("negative partition bounds");
    if (n > 0 && max_part == 0) {
      done_ = true;
      return;
    }
    fill_greedy(n, max_part);
  }

  explicit PartitionGenerator(int n) : PartitionGenerator(n, n) {}

  bool done() const noexcept { return done_; }
  const std::vector<int>& current() const noexcept { return rows_; }

  void advance() {
    // Rightmost part larger than one; everything after it is ones.
    std::size_t k = rows_.size();
    while (k > 0 && rows_[k - 1] == 1) --k;
    if (k == 0) {
      done_ = true;
      return;
    }
    --k;
    const int ones = static_cast<int>(rows_.size() - k - 1);
    const int part = rows_[k] - 1;
    rows_.resize(k);
    fill_greedy(part + ones + 1, part, /*append=*/true);
  }

private:
  void fill_greedy(int remaining, int max_part, bool append = false) {
    if (!append) rows_.clear();
    while (remaining > 0) {
      const int part = std::min(remaining, max_part);
      rows_.push_back(part);
      remaining -= part;
    }
  }

  std::vector<int> rows_;
  bool done_ = false;
};

/// Input range over the partitions of n, in reverse-lexicographic order.
class PartitionRange {
public:
  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = YoungDiagram;
    using difference_type = std::ptrdiff_t;
    using pointer = const YoungDiagram*;
    using reference = const YoungDiagram&;

    iterator() = default;
    explicit iterator(int n) : generator_(n), current_(generator_.current()) {}

    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }

    iterator& operator++() {
      generator_.advance();
      if (!generator_.done()) current_ = YoungDiagram(generator_.current());
      else end_ = true;
      return *this;
    }
    void operator++(int) { ++*this; }

    friend bool operator==(const iterator& a, const iterator& b) { return a.end_ == b.end_; }

  private:
    PartitionGenerator generator_{0};
    YoungDiagram current_;
    bool end_ = true;

    friend class PartitionRange;
  };

  PartitionRange(int n, int cap = kDefaultEnumerationCap) : n_(n) { check_enumerable(n, cap); }

  iterator begin() const {
    iterator it(n_);
    it.end_ = false;
    return it;
  }
  iterator end() const { return iterator(); }

private:
  int n_;
};

inline PartitionRange enumerate_partitions(int n, int cap = kDefaultEnumerationCap) {
  return PartitionRange(n, cap);
}

/// Calls fn(std::span<const int> rows) for every partition of n, in
/// reverse-lexicographic order, without building YoungDiagram objects.
template <class Fn>
void for_each_partition(int n, Fn&& fn, int cap = kDefaultEnumerationCap) {
  check_enumerable(n, cap);
  for (PartitionGenerator gen(n); !gen.done(); gen.advance())
    fn(std::span<const int>(gen.current()));
}

/// Folds every partition of n into an accumulator, splitting the work by first
/// row across `threads` workers. Buckets are merged with `+=` in reverse-lex
/// order, so the result does not depend on scheduling.
template <class Acc, class Visit>
Acc reduce_partitions(int n, Visit visit, int cap = kDefaultEnumerationCap, unsigned threads = 0) {
  check_enumerable(n, cap);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<Acc> buckets(static_cast<std::size_t>(n));
  auto run_bucket = [&](int first) {
    Acc& acc = buckets[static_cast<std::size_t>(n - first)];
    std::vector<int> rows;
    for (PartitionGenerator gen(n - first, first); !gen.done(); gen.advance()) {
      rows.assign(1, first);
      rows.insert(rows.end(), gen.current().begin(), gen.current().end());
      visit(acc, std::span<const int>(rows));
    }
  };
  if (threads == 1) {
    for (int first = n; first >= 1; --first) run_bucket(first);
  } else {
    std::atomic<int> next{n};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        try {
          for (int first = next--; first >= 1; first = next--) run_bucket(first);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& worker : pool) worker.join();
    if (failure) std::rethrow_exception(failure);
  }
  Acc total{};
  for (auto& bucket : buckets) total += bucket;
  return total;
}

/// p(0..n_max) by Euler's pentagonal-number recurrence.
inline std::vector<BigInt> partition_counts(int n_max) {
  if (n_max < 0) throw DomainError("partition_count needs n >= 0");
  std::vector<BigInt> p(static_cast<std::size_t>(n_max) + 1);
  p[0] = 1;
  for (int n = 1; n <= n_max; ++n) {
    BigInt total = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      if (g1 > n) break;
      const int g2 = k * (3 * k + 1) / 2;
      BigInt term = p[static_cast<std::size_t>(n - g1)];
      if (g2 <= n) term += p[static_cast<std::size_t>(n - g2)];
      if (k % 2 == 1) total += term;
      else total -= term;
    }
    p[static_cast<std::size_t>(n)] = total;
  }
  return p;
}

inline BigInt partition_count(int n) { return partition_counts(n).back(); }

// ---------------------------------------------------------------------------
// Hook lengths, dimensions and multiplicities.

namespace detail {

/// Column lengths of a row list, written into `columns`.
inline void conjugate(std::span<const int> rows, std::vector<int>& columns) {
  columns.assign(rows.empty() ? 0 : static_cast<std::size_t>(rows.front()), 0);
  for (std::size_t i = rows.size(); i-- > 0;)
    for (int j = 0; j < rows[i]; ++j)
      if (columns[static_cast<std::size_t>(j)] == 0) columns[static_cast<std::size_t>(j)] = static_cast<int>(i) + 1;
}

template <class Visit>
void for_each_hook(std::span<const int> rows, Visit&& visit) {
  thread_local std::vector<int> columns;
  conjugate(rows, columns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < rows[i]; ++j) {
      const int arm = rows[i] - j - 1;
      const int leg = columns[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1;
      visit(arm + leg + 1);
    }
}

inline int total(std::span<const int> rows) { return std::accumulate(rows.begin(), rows.end(), 0); }

}  // namespace detail

inline BigInt hook_product(std::span<const int> rows) {
  ProductAccumulator product;
  detail::for_each_hook(rows, [&](int hook) { product.multiply(static_cast<std::uint64_t>(hook)); });
  return product.value();
}

/// Product of (d + j - i) over all cells (i, j), zero when there are more than d rows.
inline BigInt content_product(std::span<const int> rows, int d) {
  if (d < 1) throw DomainError("number of colors d must be >= 1");
  if (static_cast<int>(rows.size()) > d) return 0;
  ProductAccumulator product;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < rows[i]; ++j)
      product.multiply(static_cast<std::uint64_t>(d + j - static_cast<int>(i)));
  return product.value();
}

/// Dimension of the S_n irrep via the hook-length formula.
inline BigInt dim_irrep(std::span<const int> rows, const BigInt& n_factorial) {
  return exact_quotient(n_factorial, hook_product(rows), "dim_irrep");
}

inline BigInt dim_irrep(const YoungDiagram& diagram) {
  return dim_irrep(diagram.rows(), factorial(static_cast<unsigned>(diagram.size())));
}

/// Multiplicity of the irrep in (C^d)^{\otimes n}: the number of semistandard
/// tableaux with entries at most d.
inline BigInt multiplicity(const YoungDiagram& diagram, int d) {
  const BigInt contents = content_product(diagram.rows(), d);
  if (contents == 0) return 0;
  return exact_quotient(contents, hook_product(diagram.rows()), "multiplicity");
}

/// D / m = n! / prod(d - i + j).
inline Rational dim_mult_ratio(const YoungDiagram& diagram, int d) {
  const BigInt contents = content_product(diagram.rows(), d);
  if (contents == 0)
    throw DomainError("dim/mult ratio undefined: " + diagram.to_string() + " has more than " +
                      std::to_string(d) + " rows");
  return Rational(factorial(static_cast<unsigned>(diagram.size())), contents);
}

// Log-domain versions for sizes where exact integers are not wanted.

inline double log_hook_product(std::span<const int> rows) {
  double sum = 0.0;
  detail::for_each_hook(rows, [&](int hook) { sum += std::log(static_cast<double>(hook)); });
  return sum;
}

inline double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

inline double log_dim_irrep(std::span<const int> rows) {
  return log_factorial(detail::total(rows)) - log_hook_product(rows);
}

/// ln m, or -infinity when the diagram has more than d rows.
inline double log_multiplicity(std::span<const int> rows, int d) {
  if (static_cast<int>(rows.size()) > d) return -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < rows[i]; ++j) sum += std::log(static_cast<double>(d + j - static_cast<int>(i)));
  return sum - log_hook_product(rows);
}

/// ln(m / D) = sum ln(d - i + j) - ln n!, without the hook product.
inline double log_mult_over_dim(std::span<const int> rows, int d) {
  if (static_cast<int>(rows.size()) > d) return -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < rows[i]; ++j) sum += std::log(static_cast<double>(d + j - static_cast<int>(i)));
  return sum - log_factorial(detail::total(rows));
}

/// Per-diagram representation data for a fixed number of colors d.
struct IrrepStats {
  YoungDiagram diagram;
  BigInt dim_irrep;
  BigInt multiplicity;
  double log_dim = 0.0;
  double log_mult = 0.0;
  Rational plancherel;   // D^2 / n!
  Rational schur_weyl;   // m D / d^n
};

inline IrrepStats irrep_stats(const YoungDiagram& diagram, int d, const BigInt& n_factorial,
                              const BigInt& d_power) {
  IrrepStats stats;
  stats.diagram = diagram;
  stats.dim_irrep = dim_irrep(diagram.rows(), n_factorial);
  stats.multiplicity = multiplicity(diagram, d);
  stats.log_dim = log_of(stats.dim_irrep);
  stats.log_mult = log_of(stats.multiplicity);
  stats.plancherel = Rational(stats.dim_irrep * stats.dim_irrep, n_factorial);
  stats.schur_weyl = Rational(stats.multiplicity * stats.dim_irrep, d_power);
  return stats;
}

inline IrrepStats irrep_stats(const YoungDiagram& diagram, int d) {
  const auto n = static_cast<unsigned>(diagram.size());
  return irrep_stats(diagram, d, factorial(n), power(static_cast<unsigned>(d), n));
}

// ---------------------------------------------------------------------------
// Characters (Murnaghan-Nakayama on beta-sets).

namespace detail {

inline long long mn_recurse(std::vector<int>& beta, std::span<const int> parts, std::size_t next) {
  if (next == parts.size()) return 1;
  const int k = parts[next];
  long long sum = 0;
  // beta is kept sorted ascending; removing a rim hook of length k moves a bead
  // from b to b - k when that slot is free.
  for (std::size_t idx = 0; idx < beta.size(); ++idx) {
    const int from = beta[idx];
    const int to = from - k;
    if (to < 0 || std::binary_search(beta.begin(), beta.end(), to)) continue;
    const auto lo = std::upper_bound(beta.begin(), beta.end(), to);
    const auto between = static_cast<int>(std::distance(lo, beta.begin() + static_cast<std::ptrdiff_t>(idx)));
    std::vector<int> moved = beta;
    moved.erase(moved.begin() + static_cast<std::ptrdiff_t>(idx));
    moved.insert(std::upper_bound(moved.begin(), moved.end(), to), to);
    const long long sub = mn_recurse(moved, parts, next + 1);
    sum += (between % 2 == 0) ? sub : -sub;
  }
  return sum;
}

}  // namespace detail

/// Irreducible character chi_diagram evaluated at a permutation of the given cycle type.
inline long long character(const YoungDiagram& diagram, const YoungDiagram& cycle_type) {
  if (diagram.size() != cycle_type.size())
    throw DomainError("character: diagram " + diagram.to_string() + " and cycle type " +
                      cycle_type.to_string() + " have different sizes");
  if (diagram.size() > kCharacterCap)
    throw CapacityError("character is limited to n <= " + std::to_string(kCharacterCap));
  const auto& rows = diagram.rows();
  const int length = static_cast<int>(rows.size());
  std::vector<int> beta(rows.size());
  for (int i = 0; i < length; ++i) beta[static_cast<std::size_t>(length - 1 - i)] = rows[static_cast<std::size_t>(i)] + length - 1 - i;
  return detail::mn_recurse(beta, cycle_type.rows(), 0);
}

// ---------------------------------------------------------------------------
// RSK and sampling.

/// Shape of the row-insertion tableau of the word.
inline YoungDiagram rsk_shape(std::span<const int> word) {
  if (word.empty()) throw DomainError("rsk_shape needs a non-empty word");
  std::vector<std::vector<int>> tableau;
  for (int letter : word) {
    int x = letter;
    std::size_t r = 0;
    for (;; ++r) {
      if (r == tableau.size()) {
        tableau.push_back({x});
        break;
      }
      auto& row = tableau[r];
      auto pos = std::upper_bound(row.begin(), row.end(), x);
      if (pos == row.end()) {
        row.push_back(x);
        break;
      }
      std::swap(x, *pos);
    }
  }
  std::vector<int> shape;
  shape.reserve(tableau.size());
  for (const auto& row : tableau) shape.push_back(static_cast<int>(row.size()));
  return YoungDiagram(std::move(shape));
}

inline YoungDiagram rsk_shape(std::initializer_list<int> word) {
  return rsk_shape(std::span<const int>(word.begin(), word.size()));
}

using Engine = std::mt19937_64;

/// Shape of RSK applied to a uniform random permutation: Plancherel-distributed.
template <class Rng>
YoungDiagram sample_plancherel(int n, Rng& rng) {
  if (n < 1) throw DomainError("sample_plancherel needs n >= 1");
  std::vector<int> word(static_cast<std::size_t>(n));
  std::iota(word.begin(), word.end(), 1);
  std::shuffle(word.begin(), word.end(), rng);
  return rsk_shape(word);
}

/// Shape of RSK applied to a uniform word in {1..d}^n: Schur-Weyl-distributed.
template <class Rng>
YoungDiagram sample_schur_weyl(int n, int d, Rng& rng) {
  if (n < 1) throw DomainError("sample_schur_weyl needs n >= 1");
  if (d < 1) throw DomainError("sample_schur_weyl needs d >= 1");
  std::uniform_int_distribution<int> letter(1, d);
  std::vector<int> word(static_cast<std::size_t>(n));
  for (auto& w : word) w = letter(rng);
  return rsk_shape(word);
}

inline YoungDiagram sample_plancherel(int n, std::uint64_t seed) {
  Engine rng(seed);
  return sample_plancherel(n, rng);
}

inline YoungDiagram sample_schur_weyl(int n, int d, std::uint64_t seed) {
  Engine rng(seed);
  return sample_schur_weyl(n, d, rng);
}

}  // namespace permcode::young
