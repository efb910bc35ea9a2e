// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
// --expect-fail=7,... exits 0 only if exactly the listed criteria fail, so a
// known failure stays visible without masking regressions elsewhere.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "permcode/asymptotics.hpp"
#include "permcode/coding.hpp"
#include "permcode/qsim.hpp"

using namespace permcode;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0 = no limit
  std::function<Outcome()> body;
};

std::string fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, value);
  return buffer;
}

// Exact values along d = N / 2.
const std::vector<std::pair<int, Rational>> kHalfGoldens = {
    {10, Rational(BigInt("54263"), BigInt("80640"))},
    {20, Rational(BigInt("558809090707213"), BigInt("579400335360000"))},
    {30, Rational(BigInt("1523152428826669440838439164121"), BigInt("1524441723058569302507520000000"))},
    {40, Rational(BigInt("271970304644962804462101769852400377155455448293"),
                  BigInt("271971761082632578115203756532038631424000000000"))},
    {50, Rational(BigInt("310347886196316704564150275990464664440622194546832826171008297"),
                  BigInt("310347889813401816771557226184334375963037158866944000000000000"))},
    {60, Rational(BigInt("70516839937730125535737262059934462084804334153317392626579790928669573840059487"),
                  BigInt("70516839938486357154884247315452240514865869545434287732620997427200000000000000"))},
};

// Exact values along d = N / 5.
const std::vector<std::pair<int, Rational>> kFifthGoldens = {
    {10, Rational(BigInt("169"), BigInt("604800"))},
    {20, Rational(BigInt("10180103501"), BigInt("22526870446080000"))},
    {30, Rational(BigInt("73691305155665990839751"), BigInt("88417619937397019545436160000000"))},
    {40, Rational(BigInt("664613997891655970673602701677503243"),
                  BigInt("407957641623948867172805634798057947136000000000"))},
    {50, Rational(BigInt("925925925925925910575600624331430645280155965343"),
                  BigInt("281611974089938685589005631167266378188681866379264000000000000"))},
};

Outcome exact_example() {
  const auto report = coding::quantum_pmax_exact({3, 2});
  const bool pass = *report.p_quantum_exact == Rational(5, 6) && report.p_classical == Rational(1, 2);
  return {pass, "p_quantum=" + to_fraction_string(*report.p_quantum_exact) +
                    " p_classical=" + to_fraction_string(report.p_classical)};
}

Outcome n3_simulation() {
  const auto ex = qsim::build_n3_example();
  const qsim::SymmetricGroup group(3);
  double overlap = 0.0;
  for (std::size_t i = 1; i < group.order(); ++i) {
    const auto moved = qsim::apply_gamma(qsim::gamma_index_map(group[i], 2), ex.signal.amplitudes());
    overlap = std::max(overlap, std::abs(std::abs(ex.signal.amplitudes().dot(moved)) - 0.2));
  }
  const double success = qsim::success_probability(ex.signal, ex.povm);
  const double pgm = qsim::pgm_success(ex.signal, 3, 2);
  const double completeness = qsim::completeness_residual(ex.povm.elements(), ex.povm.completion);
  const bool pass = overlap <= 1e-12 && std::abs(success - 5.0 / 6.0) <= 1e-10 && std::abs(pgm - success) <= 1e-8 &&
                    completeness <= 1e-12;
  return {pass, "overlap_err=" + fmt("%.2e", overlap) + " success=" + fmt("%.15f", success) +
                    " pgm_diff=" + fmt("%.2e", std::abs(pgm - success))};
}

Outcome normalizations() {
  for (int n = 1; n <= 12; ++n) {
    BigInt plancherel = 0;
    for (const auto& diagram : young::enumerate_partitions(n)) {
      const BigInt dim = young::dim_irrep(diagram);
      plancherel += dim * dim;
    }
    if (plancherel != factorial(static_cast<unsigned>(n))) return {false, "sum D^2 != N! at N=" + std::to_string(n)};
    for (int d = 1; d <= 6; ++d) {
      BigInt weighted = 0;
      for (const auto& diagram : young::enumerate_partitions(n))
        weighted += young::multiplicity(diagram, d) * young::dim_irrep(diagram);
      if (weighted != power(static_cast<unsigned>(d), static_cast<unsigned>(n)))
        return {false, "sum mD != d^N at N=" + std::to_string(n) + " d=" + std::to_string(d)};
    }
  }
  return {true, "N<=12, d<=6"};
}

Outcome ratio_formula() {
  std::uint64_t checked = 0;
  for (int n = 1; n <= 12; ++n)
    for (int d = 1; d <= 6; ++d)
      for (const auto& diagram : young::enumerate_partitions(n)) {
        const BigInt mult = young::multiplicity(diagram, d);
        if (mult == 0) continue;
        if (young::dim_mult_ratio(diagram, d) != Rational(young::dim_irrep(diagram), mult))
          return {false, "mismatch at " + diagram.to_string() + " d=" + std::to_string(d)};
        ++checked;
      }
  return {true, std::to_string(checked) + " diagrams with m > 0"};
}

Outcome sweep_half() {
  std::vector<Rational> values;
  std::string detail;
  for (const auto& [n, golden] : kHalfGoldens) {
    const auto report = coding::quantum_pmax_exact({n, n / 2});
    if (*report.p_quantum_exact != golden) return {false, "golden mismatch at N=" + std::to_string(n)};
    values.push_back(golden);
    detail += " N=" + std::to_string(n) + ":" + to_decimal_string(golden);
  }
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1]) || !(1 - values[i] < 1 - values[i - 1])) return {false, "not increasing"};
  return {true, detail.substr(1)};
}

Outcome sweep_fifth() {
  // The (4,2) tension: P_max(4,2) = 1/2 by hook/content arithmetic, below
  // d^N / N! = 2/3, and confirmed by the dense orbit construction.
  const auto small = coding::quantum_pmax_exact({4, 2});
  std::mt19937_64 rng(1);
  const auto oracle = qsim::orbit_construction(qsim::random_vector(16, rng), 4, 2);
  const double oracle_success = qsim::pgm_success(oracle.signal, 4, 2);
  if (*small.p_quantum_exact != Rational(1, 2) || oracle.dim_w != 12 || std::abs(oracle_success - 0.5) > 1e-8 ||
      !(*small.p_quantum_exact <= small.p_info_bound))
    return {false, "(4,2) adjudication failed: exact=" + to_fraction_string(*small.p_quantum_exact) +
                       " pgm=" + fmt("%.12f", oracle_success)};

  std::vector<Rational> ratios;
  std::string detail = "P(4,2)=1/2 (oracle pgm " + fmt("%.12f", oracle_success) + ")";
  for (const auto& [n, golden] : kFifthGoldens) {
    const coding::CodingInstance instance(n, n / 5);
    const auto report = coding::quantum_pmax_exact(instance);
    if (*report.p_quantum_exact != golden) return {false, "golden mismatch at N=" + std::to_string(n)};
    ratios.push_back(golden / coding::info_bound(instance));
    detail += " N=" + std::to_string(n) + ":" + to_decimal_string(ratios.back());
  }
  for (std::size_t i = 1; i < ratios.size(); ++i)
    if (!(ratios[i] > ratios[i - 1])) return {false, "ratio not increasing at index " + std::to_string(i)};
  return {true, detail};
}

Outcome monte_carlo() {
  std::string detail;
  bool pass = true;
  for (auto [n, d] : {std::pair{30, 15}, std::pair{30, 6}}) {
    const double exact = to_double(*coding::quantum_pmax_exact({n, d}).p_quantum_exact);
    int plancherel_hits = 0;
    int schur_weyl_hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto p = asymptotics::pmax_estimate_plancherel(n, d, 10000, seed);
      if (std::abs(p.value - exact) <= 4 * p.std_error) ++plancherel_hits;
      const auto s = asymptotics::pmax_estimate_schur_weyl(n, d, 10000, seed);
      if (s.p_max && std::abs(s.p_max->value - exact) <= 4 * s.p_max->std_error) ++schur_weyl_hits;
    }
    pass = pass && plancherel_hits >= 19 && schur_weyl_hits >= 19;
    detail += "(" + std::to_string(n) + "," + std::to_string(d) + ") plancherel " + std::to_string(plancherel_hits) +
              "/20 schur-weyl " + std::to_string(schur_weyl_hits) + "/20; ";
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome bounds() {
  double min_slack = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 40; ++n) {
    const auto r = asymptotics::kerov_bound_check(n);
    if (!r.holds()) return {false, "kerov violation at N=" + std::to_string(n)};
    min_slack = std::min(min_slack, r.min_slack);
  }
  const auto erdos = asymptotics::erdos_bound_check(500);
  return {erdos.holds(), "kerov N<=40 min slack " + fmt("%.4f", min_slack) + "; erdos N<=500 min margin " +
                             fmt("%.4f", erdos.min_margin)};
}

Outcome symmetrization() {
  const auto checks = qsim::verify_symmetrization_suite(3, 2, 20, 2024);
  bool pass = true;
  std::string detail;
  for (const auto& c : checks) {
    pass = pass && c.pass;
    detail += c.check_name + "=" + fmt("%.2e", c.max_residual) + " ";
  }
  detail.pop_back();
  return {pass, detail};
}

Outcome classical_mc() {
  const auto three = qsim::classical_channel_mc(3, 2, 100000, 7);
  const auto four = qsim::classical_channel_mc(4, 2, 100000, 8);
  const double sigma3 = std::sqrt(0.5 * 0.5 / 100000);
  const double sigma4 = std::sqrt(0.25 * 0.75 / 100000);
  const bool pass = std::abs(three.value - 0.5) <= 4 * sigma3 && std::abs(four.value - 0.25) <= 4 * sigma4;
  return {pass, "(3,2) " + fmt("%.5f", three.value) + " (4,2) " + fmt("%.5f", four.value)};
}

Outcome orthogonality() {
  const auto ex = qsim::build_n3_example();
  const auto checks = qsim::orthogonality_check_n3(ex.basis, ex.phi);
  bool pass = !checks.empty();
  double worst = 0.0;
  for (const auto& c : checks) {
    pass = pass && c.pass && c.tolerance <= 1e-12;
    worst = std::max(worst, c.max_residual);
  }
  return {pass, std::to_string(checks.size()) + " checks, max residual " + fmt("%.2e", worst)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected_failures;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    const std::string prefix = "--expect-fail=";
    if (arg.rfind(prefix, 0) != 0) {
      std::fprintf(stderr, "usage: acceptance [--expect-fail=ID[,ID...]]\n");
      return 2;
    }
    std::istringstream ids(arg.substr(prefix.size()));
    for (std::string id; std::getline(ids, id, ',');) expected_failures.insert(std::stoi(id));
  }

  const std::vector<Criterion> criteria = {
      {1, "exact example (3,2)", 1.0, exact_example},
      {2, "N=3 simulation", 1.0, n3_simulation},
      {3, "normalizations", 30.0, normalizations},
      {4, "ratio formula", 0.0, ratio_formula},
      {5, "sweep r=0.5", 600.0, sweep_half},
      {6, "sweep r=0.2", 0.0, sweep_fifth},
      {7, "Monte Carlo consistency", 0.0, monte_carlo},
      {8, "tail bounds", 300.0, bounds},
      {9, "symmetrization", 0.0, symmetrization},
      {10, "classical Monte Carlo", 0.0, classical_mc},
      {11, "orthogonality", 0.0, orthogonality},
  };

  int failures = 0;
  std::set<int> failed;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && seconds > c.time_limit_s) {
      outcome.pass = false;
      outcome.detail += " (over time limit " + fmt("%.0f", c.time_limit_s) + " s)";
    }
    if (!outcome.pass) {
      ++failures;
      failed.insert(c.id);
    }
    std::printf("%s %2d %-26s %8.3fs  %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), seconds,
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  if (expected_failures.empty()) return failures == 0 ? 0 : 1;
  const bool as_expected = failed == expected_failures;
  std::printf("failures %s the expected set\n", as_expected ? "match" : "do not match");
  return as_expected ? 0 : 1;
}
