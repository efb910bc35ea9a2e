#pragma once

// CSV and JSON renderings of reports.

#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "permcode/asymptotics.hpp"
#include "permcode/coding.hpp"
#include "permcode/exact.hpp"
#include "permcode/qsim.hpp"

namespace permcode::io {

inline constexpr const char* kVersion = "0.1.0";

inline std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

/// "p/q (decimal)".
inline std::string exact_with_decimal(const Rational& value) {
  return to_fraction_string(value) + " (" + to_decimal_string(value) + ")";
}

inline const char* kSweepCsvHeader =
    "n,d,r,method,p_quantum,p_quantum_decimal,stderr,p_classical,p_classical_decimal,"
    "info_bound,info_bound_decimal,ratio_to_bound";

/// p_quantum holds "p/q" for exact rows and a 12-digit decimal for estimates.
inline std::string sweep_csv_row(const asymptotics::SweepRow& row) {
  std::ostringstream out;
  out << row.n_boxes << ',' << row.n_colors << ',' << format_double(row.ratio) << ','
      << coding::to_string(row.method) << ',';
  if (row.p_quantum_exact)
    out << to_fraction_string(*row.p_quantum_exact) << ',' << to_decimal_string(*row.p_quantum_exact);
  else
    out << format_double(row.p_quantum) << ',' << format_double(row.p_quantum);
  out << ',' << format_double(row.std_error) << ',' << to_fraction_string(row.p_classical) << ','
      << to_decimal_string(row.p_classical) << ',' << to_fraction_string(row.info_bound) << ','
      << to_decimal_string(row.info_bound) << ',' << format_double(row.ratio_to_bound);
  return out.str();
}

inline asymptotics::SweepRow sweep_row_from_report(const coding::CodingReport& report) {
  asymptotics::SweepRow row;
  row.n_boxes = report.instance.n_boxes();
  row.n_colors = report.instance.n_colors();
  row.ratio = report.instance.ratio();
  row.method = report.method;
  row.p_quantum_exact = report.p_quantum_exact;
  row.p_quantum = report.p_quantum();
  row.std_error = report.p_quantum_stderr();
  row.p_classical = report.p_classical;
  row.info_bound = report.p_info_bound;
  row.ratio_to_bound = report.p_quantum_exact ? to_double(*report.p_quantum_exact / report.p_info_bound)
                                              : report.p_quantum() / to_double(report.p_info_bound);
  return row;
}

/// Values recovered from one CSV row.
struct ParsedSweepRow {
  int n_boxes = 0;
  int n_colors = 0;
  std::string method;
  std::optional<Rational> p_quantum_exact;
  double p_quantum = 0.0;
  double std_error = 0.0;
  Rational p_classical;
  Rational info_bound;
  double ratio_to_bound = 0.0;
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

/// Parses sweep CSV text, skipping '#' metadata lines and the header.
inline std::vector<ParsedSweepRow> parse_sweep_csv(const std::string& text) {
  std::vector<ParsedSweepRow> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kSweepCsvHeader) throw DomainError("unexpected CSV header: " + line);
      header_seen = true;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 12) throw DomainError("CSV row has " + std::to_string(f.size()) + " fields: " + line);
    ParsedSweepRow row;
    row.n_boxes = std::stoi(f[0]);
    row.n_colors = std::stoi(f[1]);
    row.method = f[3];
    if (row.method == coding::to_string(coding::Method::ExactEnumeration)) {
      row.p_quantum_exact = parse_fraction(f[4]);
      row.p_quantum = to_double(*row.p_quantum_exact);
    } else {
      row.p_quantum = std::stod(f[4]);
    }
    row.std_error = std::stod(f[6]);
    row.p_classical = parse_fraction(f[7]);
    row.info_bound = parse_fraction(f[9]);
    row.ratio_to_bound = std::stod(f[11]);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json to_json(const asymptotics::SweepRow& row) {
  nlohmann::json j;
  j["n"] = row.n_boxes;
  j["d"] = row.n_colors;
  j["r"] = row.ratio;
  j["method"] = coding::to_string(row.method);
  if (row.p_quantum_exact) j["p_quantum_exact"] = to_fraction_string(*row.p_quantum_exact);
  j["p_quantum"] = row.p_quantum;
  j["stderr"] = row.std_error;
  j["p_classical"] = to_fraction_string(row.p_classical);
  j["info_bound"] = to_fraction_string(row.info_bound);
  j["ratio_to_bound"] = row.ratio_to_bound;
  return j;
}

inline nlohmann::json to_json(const coding::CodingReport& report) {
  nlohmann::json j = to_json(sweep_row_from_report(report));
  if (report.dim_w) j["dim_w"] = report.dim_w->str();
  if (report.p_quantum_exact) {
    j["min_side"] = {{"dim_smaller", report.sides.dim_smaller},
                     {"tie", report.sides.tie},
                     {"mult_smaller", report.sides.mult_smaller},
                     {"mult_zero", report.sides.mult_zero}};
  }
  return j;
}

inline nlohmann::json to_json(const qsim::CheckResult& check) {
  nlohmann::json j{{"check_name", check.check_name},
                   {"max_residual", check.max_residual},
                   {"tolerance", check.tolerance},
                   {"pass", check.pass}};
  if (!check.note.empty()) j["note"] = check.note;
  return j;
}

inline qsim::CheckResult check_from_json(const nlohmann::json& j) {
  qsim::CheckResult check;
  check.check_name = j.at("check_name").get<std::string>();
  check.max_residual = j.at("max_residual").get<double>();
  check.tolerance = j.at("tolerance").get<double>();
  check.pass = j.at("pass").get<bool>();
  if (j.contains("note")) check.note = j.at("note").get<std::string>();
  return check;
}

inline nlohmann::json to_json(const asymptotics::LemmaScanReport& r) {
  return {{"n", r.n},           {"d", r.d},
          {"a_threshold", r.a_threshold}, {"short_count", r.short_count},
          {"long_count", r.long_count},   {"satisfied", r.satisfied},
          {"ties", r.ties},             {"violations", r.violations}};
}

inline nlohmann::json to_json(const asymptotics::BoundCheckReport& r) {
  return {{"n", r.n},
          {"d", r.d},
          {"checked", r.checked},
          {"vacuous", r.vacuous},
          {"violations", r.violations},
          {"min_slack", r.min_slack},
          {"max_slack", r.max_slack},
          {"worst_rows", r.worst_rows}};
}

inline nlohmann::json to_json(const asymptotics::ErdosReport& r) {
  return {{"n_max", r.n_max},
          {"erdos_c", r.erdos_c},
          {"violations", r.violations},
          {"min_margin", r.min_margin},
          {"tightest_n", r.tightest_n}};
}

}  // namespace permcode::io
