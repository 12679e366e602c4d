#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "recexp/goftest.hpp"
#include "recexp/identities.hpp"
#include "recexp/records.hpp"

namespace recexp {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// 17 significant digits ("%.17g"); enough to recover any double exactly.
std::string format_double(double x);

/// Parses one decimal number (surrounding blanks allowed). Throws Data.
double parse_double(std::string_view text);

/// Quotes a field that holds a comma or a double quote.
std::string csv_field(std::string_view text);

/// Splits CSV text into rows of fields, undoing csv_field quoting.
std::vector<std::vector<std::string>> read_csv_rows(std::istream& in);

/// One value per line, or the first column of a CSV. A non-numeric first
/// line is taken as a header; blank lines are skipped. Throws Data on any
/// other unparsable or non-finite entry.
std::vector<double> read_values(std::istream& in);

/// rep,R1,...,Rm
void write_records_csv(std::ostream& out, std::span<const RecordTuple> reps);

/// t,density
void write_density_csv(std::ostream& out, std::span<const double> ts, std::span<const double> values);

/// identity,u,v,lhs,rhs,abs_err,rel_err,mc_stderr,method,necessary_only
void write_scan_csv(std::ostream& out, const DeviationScan& scan);

nlohmann::ordered_json to_json(const IdentityReport& report);
nlohmann::ordered_json to_json(const GofConfig& cfg);
nlohmann::ordered_json to_json(const GofResult& result);

/// UTC time in ISO 8601, second resolution.
std::string utc_timestamp();

/// subcommand, config, seed, tool_version, timestamp.
nlohmann::ordered_json make_manifest(std::string_view subcommand, const nlohmann::ordered_json& config,
                                     std::uint64_t seed);

}  // namespace recexp
