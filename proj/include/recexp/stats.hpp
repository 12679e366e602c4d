#pragma once

#include <cmath>
#include <cstdint>
#include <span>

namespace recexp {

/// Welford accumulator for mean and variance.
class RunningStats {
 public:
  void add(double x) noexcept {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two observations.
  double variance() const noexcept {
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
  }
  double standard_error() const noexcept {
    return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
  }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// sup |F_n - F| for ascending samples and the model cdf evaluated at them.
double ks_statistic(std::span<const double> sorted_samples, std::span<const double> model_cdf);

/// Two-sample sup |F_n - G_m|; inputs must be sorted ascending.
double ks_two_sample(std::span<const double> a_sorted, std::span<const double> b_sorted);

/// Asymptotic 95% critical value 1.358 / sqrt(n) of the one-sample statistic.
inline double ks_critical_95(std::size_t n) { return 1.358 / std::sqrt(static_cast<double>(n)); }

/// Asymptotic 95% critical value of the two-sample statistic.
inline double ks_two_sample_critical_95(std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return 1.358 * std::sqrt((nn + mm) / (nn * mm));
}

}  // namespace recexp
