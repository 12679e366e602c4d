#include "recexp/records.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "recexp/error.hpp"

namespace recexp {

RecordTuple::RecordTuple(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (!(values_[i - 1] < values_[i])) {
      std::ostringstream msg;
      msg << "record tuple is not strictly increasing at position " << i;
      fail(ErrorKind::Shape, msg.str());
    }
  }
}

void ConditionQuery::validate() const {
  if (n < 2) fail(ErrorKind::Domain, "condition query needs n >= 2");
  if (r < 1) fail(ErrorKind::Domain, "condition query needs r >= 1");
  if (!std::isfinite(u) || !std::isfinite(v)) fail(ErrorKind::Domain, "u and v must be finite");
  if (u < 0.0) fail(ErrorKind::Domain, "u must be >= 0");
  if (!(u < v)) {
    std::ostringstream msg;
    msg << "condition query needs u < v, got u = " << u << ", v = " << v;
    fail(ErrorKind::Ordering, msg.str());
  }
}

RecordTuple sample_records_naive(const Distribution& d, int m, Rng& rng,
                                 std::uint64_t draw_budget) {
  if (m < 1) fail(ErrorKind::Domain, "need at least one record");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m));
  std::uint64_t draws = 0;
  while (static_cast<int>(out.size()) < m) {
    if (draws == draw_budget) {
      std::ostringstream msg;
      msg << "draw budget of " << draw_budget << " exhausted after " << out.size() << " of " << m
          << " records";
      fail(ErrorKind::BudgetExhausted, msg.str());
    }
    ++draws;
    const double x = d.quantile(uniform01(rng));
    if (out.empty() || x > out.back()) out.push_back(x);
  }
  return RecordTuple(std::move(out));
}

RecordTuple sample_records_naive(const Distribution& d, int m, std::uint64_t seed,
                                 std::uint64_t stream, std::uint64_t draw_budget) {
  Rng rng(seed, stream);
  return sample_records_naive(d, m, rng, draw_budget);
}

RecordTuple sample_records_hazard(const Distribution& d, int m, Rng& rng) {
  if (m < 1) fail(ErrorKind::Domain, "need at least one record");
  std::vector<double> out(static_cast<std::size_t>(m));
  double s = 0.0;
  for (auto& x : out) {
    s += std_exponential(rng);
    x = d.inv_cum_hazard(s);
  }
  return RecordTuple(std::move(out));
}

RecordTuple sample_records_hazard(const Distribution& d, int m, std::uint64_t seed,
                                  std::uint64_t stream) {
  Rng rng(seed, stream);
  return sample_records_hazard(d, m, rng);
}

namespace detail {
void draw_hazard_uniforms(Rng& rng, double lo, double hi, std::span<double> out) {
  const double width = hi - lo;
  for (auto& x : out) x = lo + width * uniform01(rng);
}
}  // namespace detail

RecordTuple sample_conditional_middle(const Distribution& d, const ConditionQuery& q, Rng& rng) {
  q.validate();
  const double h_lo = d.cum_hazard(q.u);
  const double h_hi = d.cum_hazard(q.v);
  if (!(h_hi > h_lo)) fail(ErrorKind::DegenerateInterval, "H(v) == H(u): no mass between u and v");

  std::vector<double> out(static_cast<std::size_t>(q.middle_count()));
  detail::draw_hazard_uniforms(rng, h_lo, h_hi, out);
  std::sort(out.begin(), out.end());
  for (auto& x : out) x = std::clamp(d.inv_cum_hazard(x), q.u, q.v);
  return RecordTuple(std::move(out));
}

RecordTuple sample_conditional_middle(const Distribution& d, const ConditionQuery& q,
                                      std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  return sample_conditional_middle(d, q, rng);
}

}  // namespace recexp
