#include "recexp/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>

#include "recexp/error.hpp"

namespace recexp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

nlohmann::ordered_json number_or_null(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

double parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    fail(ErrorKind::Data, "not a number: '" + std::string(text) + "'");
  return value;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::vector<std::string>> read_csv_rows(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c != '"') {
          fields.back() += c;
        } else if (i + 1 < line.size() && line[i + 1] == '"') {
          fields.back() += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.emplace_back();
      } else if (c != '\r') {
        fields.back() += c;
      }
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::vector<double> read_values(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    auto field = trim(line);
    if (field.empty()) continue;
    field = trim(field.substr(0, field.find(',')));
    double x = 0.0;
    try {
      x = parse_double(field);
    } catch (const Error&) {
      if (first) {
        first = false;
        continue;
      }
      fail(ErrorKind::Data, "line " + std::to_string(line_no) + ": not a number: '" + std::string(field) + "'");
    }
    first = false;
    if (!std::isfinite(x)) fail(ErrorKind::Data, "line " + std::to_string(line_no) + ": non-finite value");
    values.push_back(x);
  }
  return values;
}

void write_records_csv(std::ostream& out, std::span<const RecordTuple> reps) {
  const std::size_t m = reps.empty() ? 0 : reps.front().size();
  out << "rep";
  for (std::size_t k = 1; k <= m; ++k) out << ",R" << k;
  out << '\n';
  for (std::size_t i = 0; i < reps.size(); ++i) {
    out << i;
    for (double x : reps[i].values()) out << ',' << format_double(x);
    out << '\n';
  }
}

void write_density_csv(std::ostream& out, std::span<const double> ts, std::span<const double> values) {
  out << "t,density\n";
  for (std::size_t i = 0; i < ts.size(); ++i) out << format_double(ts[i]) << ',' << format_double(values[i]) << '\n';
}

void write_scan_csv(std::ostream& out, const DeviationScan& scan) {
  out << "identity,u,v,lhs,rhs,abs_err,rel_err,mc_stderr,method,necessary_only\n";
  for (const auto& r : scan.reports) {
    out << to_string(r.identity) << ',' << format_double(r.params.u) << ',' << format_double(r.params.v) << ','
        << format_double(r.lhs) << ',' << format_double(r.rhs) << ',' << format_double(r.abs_err) << ','
        << format_double(r.rel_err) << ',' << (r.mc_stderr ? format_double(*r.mc_stderr) : std::string()) << ','
        << to_string(r.method) << ',' << (r.necessary_only ? "true" : "false") << '\n';
  }
}

nlohmann::ordered_json to_json(const IdentityReport& r) {
  nlohmann::ordered_json j;
  j["identity"] = to_string(r.identity);
  j["params"] = {{"n", r.params.n}, {"r", r.params.r}, {"k", r.params.k},
                 {"m", r.params.m}, {"u", r.params.u}, {"v", r.params.v}};
  j["query"] = {{"n", r.query.n}, {"r", r.query.r}, {"u", r.query.u}, {"v", r.query.v}};
  j["lhs"] = number_or_null(r.lhs);
  j["rhs"] = number_or_null(r.rhs);
  j["abs_err"] = number_or_null(r.abs_err);
  j["rel_err"] = number_or_null(r.rel_err);
  j["mc_stderr"] = r.mc_stderr ? number_or_null(*r.mc_stderr) : nlohmann::ordered_json(nullptr);
  j["method"] = to_string(r.method);
  j["necessary_only"] = r.necessary_only;
  return j;
}

nlohmann::ordered_json to_json(const GofConfig& c) {
  return {{"n", c.n},
          {"m", c.m},
          {"block_size", c.block_size},
          {"min_blocks", c.min_blocks},
          {"bootstrap_reps", c.bootstrap_reps},
          {"alpha", c.alpha},
          {"rng_seed", c.rng_seed},
          {"allow_necessary_only", c.allow_necessary_only}};
}

nlohmann::ordered_json to_json(const GofResult& r) {
  return {{"statistic", number_or_null(r.statistic)},
          {"p_value", r.p_value},
          {"used_blocks", r.used_blocks},
          {"discarded_blocks", r.discarded_blocks},
          {"decision", to_string(r.decision)},
          {"fitted_rate", number_or_null(r.fitted_rate)}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  const std::size_t len = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return std::string(buf, len);
}

nlohmann::ordered_json make_manifest(std::string_view subcommand, const nlohmann::ordered_json& config,
                                     std::uint64_t seed) {
  return {{"subcommand", subcommand},
          {"config", config},
          {"seed", seed},
          {"tool_version", kToolVersion},
          {"timestamp", utc_timestamp()}};
}

}  // namespace recexp
