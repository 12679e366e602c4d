#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "recexp/distribution.hpp"

namespace recexp {

// End-to-end acceptance checks shared by `recexp reproduce` and the
// acceptance test binary. Every row is a single pass/fail comparison
// "value <op> threshold"; a criterion passes when all of its rows do.

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  /// Added to the fixed alternative set of the falsification criterion.
  std::vector<Distribution> extra_alternatives;
  std::size_t gof_null_reps = 500;
  std::size_t gof_power_reps = 500;
};

struct AcceptanceRow {
  int criterion = 0;
  std::string identity;
  std::string distribution;
  std::string g;
  std::string params;
  std::string metric;
  double value = 0.0;
  std::string op;  // "<", "<=", ">"
  double threshold = 0.0;
  std::string expectation;  // "null", "falsification", "consistency", "mc", "calibration"
  bool pass = false;
};

struct CriterionOutcome {
  int number = 0;
  std::string title;
  std::vector<AcceptanceRow> rows;
  bool pass() const;
};

/// Number of criteria computed in-process (the determinism criterion needs
/// two tool invocations and is checked by the caller).
inline constexpr int kLibraryCriteria = 8;

/// Runs criterion 1..kLibraryCriteria. Failures are reported in the rows,
/// never thrown; a numerical error inside a row marks that row failed.
CriterionOutcome run_criterion(int number, const AcceptanceOptions& options);

/// Fixed-width table, one line per row, then one PASS/FAIL line per criterion.
void print_table(std::ostream& out, const std::vector<CriterionOutcome>& outcomes);

/// criterion,identity,distribution,g,params,metric,value,op,threshold,expectation,pass
void write_rows_csv(std::ostream& out, const std::vector<CriterionOutcome>& outcomes);

}  // namespace recexp
