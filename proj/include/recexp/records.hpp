#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "recexp/distribution.hpp"
#include "recexp/rng.hpp"

namespace recexp {

/// Strictly increasing record values R_1 < R_2 < ... .
class RecordTuple {
 public:
  RecordTuple() = default;
  /// Throws Shape if values are not strictly increasing.
  explicit RecordTuple(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  /// 1-based access matching the R_k indexing.
  double record(std::size_t k) const { return values_.at(k - 1); }

 private:
  std::vector<double> values_;
};

/// "Given R_1 = u and R_{n+r} = v"; the targets are R_2, ..., R_n.
struct ConditionQuery {
  int n = 2;
  int r = 1;
  double u = 0.0;
  double v = 1.0;

  /// Throws Domain for bad indices, Ordering unless 0 <= u < v.
  void validate() const;
  int last_index() const noexcept { return n + r; }
  /// Number of records strictly between the two covariates.
  int middle_count() const noexcept { return n + r - 2; }
};

inline constexpr std::uint64_t kDefaultDrawBudget = 100'000'000;

/// First m upper records of an i.i.d. stream from d, found by scanning the
/// stream. Throws BudgetExhausted when more than draw_budget draws are used.
RecordTuple sample_records_naive(const Distribution& d, int m, Rng& rng,
                                 std::uint64_t draw_budget = kDefaultDrawBudget);
RecordTuple sample_records_naive(const Distribution& d, int m, std::uint64_t seed,
                                 std::uint64_t stream = 0,
                                 std::uint64_t draw_budget = kDefaultDrawBudget);

/// First m records via R_k = H^{-1}(xi_1 + ... + xi_k), xi i.i.d. Exp(1).
RecordTuple sample_records_hazard(const Distribution& d, int m, Rng& rng);
RecordTuple sample_records_hazard(const Distribution& d, int m, std::uint64_t seed,
                                  std::uint64_t stream = 0);

/// (R_2, ..., R_{n+r-1}) given R_1 = u and R_{n+r} = v, sampled exactly:
/// in H-space the middle records are uniform order statistics on
/// (H(u), H(v)).
RecordTuple sample_conditional_middle(const Distribution& d, const ConditionQuery& q, Rng& rng);
RecordTuple sample_conditional_middle(const Distribution& d, const ConditionQuery& q,
                                      std::uint64_t seed, std::uint64_t stream = 0);

namespace detail {
/// Unsorted i.i.d. uniforms on (lo, hi) as drawn by the conditional sampler.
void draw_hazard_uniforms(Rng& rng, double lo, double hi, std::span<double> out);
}  // namespace detail

}  // namespace recexp
