#include "sgm/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "sgm/errors.hpp"

namespace sgm {

namespace {

// RFC 4180 field splitting: double quotes wrap fields, "" escapes a quote.
std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch != '"') {
        fields.back() += ch;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  return fields;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

template <typename T>
T parse_field(const std::string& text, std::size_t lineno, const char* name) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(lineno, fmt::format("bad {} value '{}'", name, text));
  }
  return value;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

void write_trial_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kTrialCsvHeader << '\n';
  for (const auto& r : records) {
    out << fmt::format("{},{},{},{},{},{},{},{:.3f}\n", r.rho, r.m, r.trial, r.match_ratio,
                       r.chance, r.disagreements, r.iterations, r.runtime_ms);
  }
}

std::vector<TrialRecord> read_trial_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  strip_cr(line);
  if (line != kTrialCsvHeader) throw ParseError(1, "unexpected header '" + line + "'");

  std::vector<TrialRecord> records;
  for (std::size_t lineno = 2; std::getline(in, line); ++lineno) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 8) throw ParseError(lineno, fmt::format("expected 8 fields, got {}", f.size()));
    TrialRecord r;
    r.rho = parse_field<double>(f[0], lineno, "rho");
    r.m = parse_field<Index>(f[1], lineno, "m");
    r.trial = parse_field<int>(f[2], lineno, "trial");
    r.match_ratio = parse_field<double>(f[3], lineno, "match_ratio");
    r.chance = parse_field<double>(f[4], lineno, "chance");
    r.disagreements = parse_field<long long>(f[5], lineno, "disagreements");
    r.iterations = parse_field<int>(f[6], lineno, "iterations");
    r.runtime_ms = parse_field<double>(f[7], lineno, "runtime_ms");
    records.push_back(r);
  }
  return records;
}

void write_match_csv(std::ostream& out, const MatchResult& result) {
  out << "label1,label2,is_seed\n";
  for (const auto& pair : result.mapping) {
    out << quote(pair.label1) << ',' << quote(pair.label2) << ',' << (pair.seed ? 1 : 0) << '\n';
  }
  out << "\nmetric,value\n";
  out << fmt::format("objective,{}\n", result.objective_relaxed);
  out << fmt::format("disagreements,{}\n", result.disagreements);
  out << fmt::format("iterations,{}\n", result.iterations);
  out << fmt::format("converged,{}\n", result.converged ? 1 : 0);
}

MatchCsv read_match_csv(std::istream& in) {
  MatchCsv csv;
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  strip_cr(line);
  if (line != "label1,label2,is_seed") throw ParseError(1, "unexpected header '" + line + "'");

  for (++lineno; std::getline(in, line); ++lineno) {
    strip_cr(line);
    if (line.empty()) break;
    const auto f = split(line);
    if (f.size() != 3) throw ParseError(lineno, "expected label1,label2,is_seed");
    csv.mapping.push_back({f[0], f[1], parse_field<int>(f[2], lineno, "is_seed") != 0});
  }

  ++lineno;
  if (!std::getline(in, line)) throw ParseError(lineno, "missing metric table");
  strip_cr(line);
  if (line != "metric,value") throw ParseError(lineno, "unexpected header '" + line + "'");
  int seen = 0;
  for (++lineno; std::getline(in, line); ++lineno) {
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 2) throw ParseError(lineno, "expected metric,value");
    if (f[0] == "objective") {
      csv.objective = parse_field<double>(f[1], lineno, "objective");
    } else if (f[0] == "disagreements") {
      csv.disagreements = parse_field<long long>(f[1], lineno, "disagreements");
    } else if (f[0] == "iterations") {
      csv.iterations = parse_field<int>(f[1], lineno, "iterations");
    } else if (f[0] == "converged") {
      csv.converged = parse_field<int>(f[1], lineno, "converged") != 0;
    } else {
      throw ParseError(lineno, "unknown metric '" + f[0] + "'");
    }
    ++seen;
  }
  if (seen != 4) throw ParseError(lineno, "metric table is incomplete");
  return csv;
}

}  // namespace sgm
