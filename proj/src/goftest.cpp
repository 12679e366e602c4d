#include "recexp/goftest.hpp"

#include <cmath>
#include <sstream>

#include "recexp/error.hpp"
#include "recexp/identities.hpp"
#include "recexp/parallel.hpp"

namespace recexp {

void GofConfig::validate() const {
  if (n < 2) fail(ErrorKind::Configuration, "gof needs n >= 2");
  if (m < 1) fail(ErrorKind::Configuration, "gof needs m >= 1");
  if (m > 2 && !allow_necessary_only)
    fail(ErrorKind::Configuration,
         "m >= 3 gives only a necessary-condition test; enable it explicitly");
  if (block_size < static_cast<std::size_t>(n + m))
    fail(ErrorKind::Configuration, "block size must be at least n + m");
  if (min_blocks < 1) fail(ErrorKind::Configuration, "min_blocks must be >= 1");
  if (bootstrap_reps < 200) fail(ErrorKind::Configuration, "bootstrap_reps must be >= 200");
  if (!(alpha > 0.0 && alpha < 1.0)) fail(ErrorKind::Configuration, "alpha must lie in (0, 1)");
}

std::string_view to_string(Decision d) noexcept {
  return d == Decision::Reject ? "REJECT" : "FAIL_TO_REJECT";
}

TupleExtraction extract_tuples(std::span<const double> data, const GofConfig& cfg) {
  cfg.validate();
  if (data.empty()) fail(ErrorKind::Data, "no data");
  for (double x : data)
    if (!std::isfinite(x) || x < 0.0) fail(ErrorKind::Data, "data must be finite and >= 0");

  const std::size_t want = static_cast<std::size_t>(cfg.n + cfg.m);
  const std::size_t blocks = data.size() / cfg.block_size;
  TupleExtraction out;
  std::vector<double> recs;
  for (std::size_t b = 0; b < blocks; ++b) {
    recs.clear();
    const auto block = data.subspan(b * cfg.block_size, cfg.block_size);
    for (double x : block) {
      // Strict inequality: a tie with the current record is not a record.
      if (recs.empty() || x > recs.back()) {
        recs.push_back(x);
        if (recs.size() == want) break;
      }
    }
    if (recs.size() == want)
      out.tuples.emplace_back(recs);
    else
      ++out.discarded_blocks;
  }

  if (out.tuples.size() < cfg.min_blocks) {
    std::ostringstream msg;
    msg << "only " << out.tuples.size() << " of " << blocks << " blocks hold " << want
        << " records (need " << cfg.min_blocks << ")";
    fail(ErrorKind::InsufficientData, msg.str());
  }
  return out;
}

double residual(const RecordTuple& t, int n, int m) {
  if (n < 2 || m < 1) fail(ErrorKind::Domain, "residual needs n >= 2 and m >= 1");
  if (t.size() != static_cast<std::size_t>(n + m)) {
    std::ostringstream msg;
    msg << "residual expects " << n + m << " records, got " << t.size();
    fail(ErrorKind::Shape, msg.str());
  }
  const auto& r = t.values();
  double middle = 0.0;
  for (int j = 1; j < n; ++j) middle += r[j];
  middle /= (n - 1);
  const double lo = r.front();
  const double hi = r.back();
  return (middle - rhs_note_m(n, m, lo, hi)) / (hi - lo);
}

double gof_statistic(std::span<const RecordTuple> tuples, int n, int m) {
  if (tuples.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : tuples) sum += residual(t, n, m);
  const double count = static_cast<double>(tuples.size());
  return std::sqrt(count) * std::abs(sum / count);
}

std::optional<RecordTuple> sample_block_records(const Distribution& d, std::size_t block_size,
                                                int count, Rng& rng) {
  if (count < 1) fail(ErrorKind::Domain, "need at least one record");
  if (block_size == 0) return std::nullopt;
  std::vector<double> recs;
  recs.reserve(static_cast<std::size_t>(count));
  const double limit = static_cast<double>(block_size);

  double big_h = std_exponential(rng);
  recs.push_back(d.inv_cum_hazard(big_h));
  double time = 1.0;
  while (static_cast<int>(recs.size()) < count) {
    // Draws until the next exceedance of the current record: geometric with
    // success probability exp(-H(record)).
    const double log_fail = std::log1p(-std::exp(-big_h));
    if (log_fail == 0.0) return std::nullopt;
    time += 1.0 + std::floor(std::log(uniform01(rng)) / log_fail);
    if (time > limit) return std::nullopt;
    // The exceeding value is the record shifted by a fresh Exp(1) in H-space.
    big_h += std_exponential(rng);
    recs.push_back(d.inv_cum_hazard(big_h));
    if (!(recs.back() > recs[recs.size() - 2])) return std::nullopt;
  }
  return RecordTuple(std::move(recs));
}

GofResult run_test(std::span<const double> data, const GofConfig& cfg) {
  const auto extraction = extract_tuples(data, cfg);

  double total = 0.0;
  for (double x : data) total += x;
  const double mean = total / static_cast<double>(data.size());
  if (!(mean > 0.0)) fail(ErrorKind::Data, "sample mean is zero; exponential rate undefined");

  GofResult result;
  result.fitted_rate = 1.0 / mean;
  result.used_blocks = extraction.tuples.size();
  result.discarded_blocks = extraction.discarded_blocks;
  result.statistic = gof_statistic(extraction.tuples, cfg.n, cfg.m);

  const auto fitted = make_exponential(result.fitted_rate);
  const std::size_t blocks = data.size() / cfg.block_size;
  const int want = cfg.n + cfg.m;
  std::vector<double> boot(cfg.bootstrap_reps);
  parallel_for(cfg.bootstrap_reps, [&](std::size_t rep) {
    Rng rng(cfg.rng_seed, rep + 1);
    std::vector<RecordTuple> tuples;
    tuples.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b)
      if (auto t = sample_block_records(fitted, cfg.block_size, want, rng)) tuples.push_back(std::move(*t));
    boot[rep] = gof_statistic(tuples, cfg.n, cfg.m);
  });

  std::size_t exceed = 0;
  for (double b : boot)
    if (b >= result.statistic) ++exceed;
  result.p_value = static_cast<double>(1 + exceed) / static_cast<double>(cfg.bootstrap_reps + 1);
  result.decision = result.p_value < cfg.alpha ? Decision::Reject : Decision::FailToReject;
  return result;
}

}  // namespace recexp
