#pragma once

#include <string>
#include <variant>
#include <vector>

namespace recexp {

// Families with closed-form cumulative hazard H and hazard h, all on [0, inf).
struct Exponential {
  double rate;
};
struct Weibull {
  double shape;
  double scale;
};
/// Linear failure rate: h(x) = a + b x, H(x) = a x + b x^2 / 2.
struct LinearFailureRate {
  double a;
  double b;
};
/// Lomax (Pareto type II shifted to 0): H(x) = alpha ln(1 + x / sigma).
struct Pareto {
  double alpha;
  double sigma;
};

/// An immutable continuous law on [0, inf) described through its hazard
/// machinery. Boundary evaluations return continuous limits (H(0) = 0).
class Distribution {
 public:
  using Family = std::variant<Exponential, Weibull, LinearFailureRate, Pareto>;

  explicit Distribution(Family family);

  const Family& family() const noexcept { return family_; }
  std::string name() const;
  std::vector<double> params() const;
  /// "exp:1", "weibull:2,1", ... in the same syntax parse_distribution accepts.
  std::string spec() const;
  double support_lo() const noexcept { return 0.0; }
  bool is_exponential() const noexcept;

  double cdf(double x) const;
  double survival(double x) const;
  double pdf(double x) const;
  double cum_hazard(double x) const;
  double hazard(double x) const;
  /// H^{-1}(s) for s >= 0. Throws Saturation when the result overflows.
  double inv_cum_hazard(double s) const;
  /// F^{-1}(p) for p in (0,1).
  double quantile(double p) const;

 private:
  Family family_;
};

Distribution make_exponential(double rate);
Distribution make_weibull(double shape, double scale);
Distribution make_linear_failure_rate(double a, double b);
Distribution make_pareto(double alpha, double sigma);

/// w(v) = h(v) v / H(v); identically 1 for the exponential law.
double w_signature(const Distribution& d, double v);

}  // namespace recexp
