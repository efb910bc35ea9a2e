#pragma once

// Success probabilities for recovering a random permutation of N labelled
// boxes: the optimal quantum protocol, the optimal classical coloring and the
// counting bound d^N / N!.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permcode/errors.hpp"
#include "permcode/exact.hpp"
#include "permcode/young.hpp"

namespace permcode::coding {

/// N boxes labelled with d colors (classical) or d-level systems (quantum).
class CodingInstance {
public:
  CodingInstance(int n_boxes, int n_colors) : n_boxes_(n_boxes), n_colors_(n_colors) {
    if (n_boxes < 1) throw DomainError("n_boxes must be >= 1, got " + std::to_string(n_boxes));
    if (n_colors < 1) throw DomainError("n_colors must be >= 1, got " + std::to_string(n_colors));
  }

  int n_boxes() const noexcept { return n_boxes_; }
  int n_colors() const noexcept { return n_colors_; }
  double ratio() const noexcept { return static_cast<double>(n_colors_) / n_boxes_; }

private:
  int n_boxes_;
  int n_colors_;
};

enum class Method { ExactEnumeration, PlancherelMc, SchurWeylMc };

inline std::string_view to_string(Method method) {
  switch (method) {
    case Method::ExactEnumeration: return "exact-enumeration";
    case Method::PlancherelMc: return "plancherel-mc";
    case Method::SchurWeylMc: return "schur-weyl-mc";
  }
  return "unknown";
}

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Which side of min(m, D) each diagram falls on.
struct MinSideCounts {
  std::uint64_t dim_smaller = 0;   // D < m
  std::uint64_t tie = 0;           // D == m
  std::uint64_t mult_smaller = 0;  // 0 < m < D
  std::uint64_t mult_zero = 0;     // m == 0

  std::uint64_t total() const noexcept { return dim_smaller + tie + mult_smaller + mult_zero; }

  MinSideCounts& operator+=(const MinSideCounts& other) {
    dim_smaller += other.dim_smaller;
    tie += other.tie;
    mult_smaller += other.mult_smaller;
    mult_zero += other.mult_zero;
    return *this;
  }
};

struct CodingReport {
  CodingInstance instance;
  Method method = Method::ExactEnumeration;
  std::optional<Rational> p_quantum_exact;
  std::optional<Estimate> p_quantum_estimate;
  Rational p_classical;
  Rational p_info_bound;
  std::optional<BigInt> dim_w;
  MinSideCounts sides;

  double p_quantum() const {
    return p_quantum_exact ? to_double(*p_quantum_exact) : p_quantum_estimate->value;
  }
  double p_quantum_stderr() const { return p_quantum_exact ? 0.0 : p_quantum_estimate->std_error; }
};

/// 1 / prod(n_c!) for the balanced split of N boxes into d color classes.
inline Rational classical_success(const CodingInstance& instance) {
  const int n = instance.n_boxes();
  const int d = instance.n_colors();
  if (d >= n) return 1;
  const int small = n / d;
  const int large_classes = n % d;
  const BigInt small_fact = factorial(static_cast<unsigned>(small));
  const BigInt large_fact = factorial(static_cast<unsigned>(small + 1));
  const BigInt denominator = boost::multiprecision::pow(small_fact, static_cast<unsigned>(d - large_classes)) *
                             boost::multiprecision::pow(large_fact, static_cast<unsigned>(large_classes));
  return Rational(BigInt(1), denominator);
}

/// min(1, d^N / N!).
inline Rational info_bound(const CodingInstance& instance) {
  const auto n = static_cast<unsigned>(instance.n_boxes());
  const Rational ratio(power(static_cast<unsigned>(instance.n_colors()), n), factorial(n));
  return ratio > 1 ? Rational(1) : ratio;
}

namespace detail {

struct DimWAccumulator {
  BigInt dim_w = 0;
  MinSideCounts sides;

  DimWAccumulator& operator+=(const DimWAccumulator& other) {
    dim_w += other.dim_w;
    sides += other.sides;
    return *this;
  }
};

}  // namespace detail

/// Adds min(m, D) * D for one diagram and classifies the min side. The
/// comparison m <=> D is done as prod(d - i + j) <=> N!, which avoids a
/// division when D is the smaller side.
inline void accumulate_dim_w(detail::DimWAccumulator& acc, std::span<const int> rows, int d,
                             const BigInt& n_factorial) {
  const BigInt contents = young::content_product(rows, d);
  if (contents == 0) {
    ++acc.sides.mult_zero;
    return;
  }
  const BigInt hooks = young::hook_product(rows);
  const BigInt dim = exact_quotient(n_factorial, hooks, "dim_irrep");
  const int cmp = contents.compare(n_factorial);
  if (cmp >= 0) {
    acc.dim_w += dim * dim;
    if (cmp == 0) ++acc.sides.tie;
    else ++acc.sides.dim_smaller;
  } else {
    acc.dim_w += exact_quotient(contents, hooks, "multiplicity") * dim;
    ++acc.sides.mult_smaller;
  }
}

/// P_max = (1/N!) sum_rho min(m_rho, D_rho) D_rho over all partitions of N.
inline CodingReport quantum_pmax_exact(const CodingInstance& instance,
                                       int cap = young::kDefaultEnumerationCap,
                                       unsigned threads = 0) {
  const int n = instance.n_boxes();
  const int d = instance.n_colors();
  young::check_enumerable(n, cap);
  const BigInt n_factorial = factorial(static_cast<unsigned>(n));
  const auto acc = young::reduce_partitions<detail::DimWAccumulator>(
      n,
      [&](detail::DimWAccumulator& a, std::span<const int> rows) {
        accumulate_dim_w(a, rows, d, n_factorial);
      },
      cap, threads);

  ensure_invariant(acc.dim_w <= power(static_cast<unsigned>(d), static_cast<unsigned>(n)),
                   "dim W exceeds d^N");
  ensure_invariant(acc.dim_w <= n_factorial, "dim W exceeds N!");

  CodingReport report{.instance = instance};
  report.method = Method::ExactEnumeration;
  report.p_quantum_exact = Rational(acc.dim_w, n_factorial);
  report.dim_w = acc.dim_w;
  report.sides = acc.sides;
  report.p_classical = classical_success(instance);
  report.p_info_bound = info_bound(instance);
  return report;
}

/// Per-diagram dimensions, multiplicities and both measures, in partition order.
inline std::vector<young::IrrepStats> measure_tables(const CodingInstance& instance,
                                                      int cap = young::kDefaultEnumerationCap) {
  const int n = instance.n_boxes();
  young::check_enumerable(n, cap);
  const BigInt n_factorial = factorial(static_cast<unsigned>(n));
  const BigInt d_power = power(static_cast<unsigned>(instance.n_colors()), static_cast<unsigned>(n));
  std::vector<young::IrrepStats> table;
  for (const auto& diagram : young::enumerate_partitions(n, cap))
    table.push_back(young::irrep_stats(diagram, instance.n_colors(), n_factorial, d_power));
  return table;
}

/// The same P_max evaluated three ways: directly, as a Plancherel expectation
/// of min(1, m/D), and as (d^N/N!) times a Schur-Weyl expectation of min(1, D/m).
struct PmaxForms {
  Rational direct;
  Rational plancherel_expectation;
  Rational schur_weyl_expectation;  // scaled by d^N / N!
};

inline PmaxForms pmax_forms(const CodingInstance& instance, int cap = young::kDefaultEnumerationCap) {
  const int n = instance.n_boxes();
  const int d = instance.n_colors();
  const BigInt n_factorial = factorial(static_cast<unsigned>(n));
  const BigInt d_power = power(static_cast<unsigned>(d), static_cast<unsigned>(n));
  PmaxForms forms;
  Rational sw_sum = 0;
  for (const auto& stats : measure_tables(instance, cap)) {
    const BigInt& dim = stats.dim_irrep;
    const BigInt& mult = stats.multiplicity;
    forms.direct += Rational(std::min(dim, mult) * dim, n_factorial);
    if (mult == 0) continue;
    forms.plancherel_expectation += stats.plancherel * std::min(Rational(1), Rational(mult, dim));
    sw_sum += stats.schur_weyl * std::min(Rational(1), Rational(dim, mult));
  }
  forms.schur_weyl_expectation = Rational(d_power, n_factorial) * sw_sum;
  return forms;
}

}  // namespace permcode::coding
