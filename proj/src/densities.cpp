#include "recexp/densities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "recexp/error.hpp"
#include "recexp/quadrature.hpp"

namespace recexp {
namespace {

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

// Covariate-dependent quantities shared by every density evaluation for one
// conditioning event.
class Conditioner {
 public:
  Conditioner(const Distribution& d, const ConditionQuery& q) : d_(d), q_(q) {
    q_.validate();
    h_lo_ = d_.cum_hazard(q_.u);
    h_hi_ = d_.cum_hazard(q_.v);
    width_ = h_hi_ - h_lo_;
    if (!(width_ > 0.0)) {
      std::ostringstream msg;
      msg << d_.spec() << ": H(v) - H(u) = " << width_ << " on [" << q_.u << ", " << q_.v << "]";
      fail(ErrorKind::DegenerateInterval, msg.str());
    }
  }

  const ConditionQuery& query() const { return q_; }

  double single(int j, double t) const {
    if (!(t > q_.u && t < q_.v)) return 0.0;
    const int total = q_.n + q_.r;
    const double log_coef = log_factorial(total - 2) - log_factorial(j - 2) - log_factorial(total - 1 - j);
    const double big_h = d_.cum_hazard(t);
    const double below = (big_h - h_lo_) / width_;
    const double above = (h_hi_ - big_h) / width_;
    return std::exp(log_coef) * std::pow(below, j - 2) * std::pow(above, total - 1 - j) *
           d_.hazard(t) / width_;
  }

  double aggregate(double t) const {
    if (!(t > q_.u && t < q_.v)) return 0.0;
    const int n = q_.n;
    switch (q_.r) {
      case 1:
        return (n - 1) * d_.hazard(t) / width_;
      case 2: {
        const double below = (d_.cum_hazard(t) - h_lo_) / width_;
        return n * d_.hazard(t) / width_ * (1.0 - std::pow(below, n - 1));
      }
      default: {
        double sum = 0.0;
        for (int j = 2; j <= n; ++j) sum += single(j, t);
        return sum;
      }
    }
  }

 private:
  const Distribution& d_;
  ConditionQuery q_;
  double h_lo_ = 0.0;
  double h_hi_ = 0.0;
  double width_ = 0.0;
};

void check_index(int j, const ConditionQuery& q) {
  if (j < 2 || j > q.n + q.r - 1) {
    std::ostringstream msg;
    msg << "record index j = " << j << " outside 2.." << q.n + q.r - 1;
    fail(ErrorKind::Domain, msg.str());
  }
}

void check_g_at(const TestFunction& g, double u) {
  if (!g.admits(u)) {
    std::ostringstream msg;
    msg << g.name << " is not defined at u = " << u;
    fail(ErrorKind::Domain, msg.str());
  }
}

}  // namespace

double conditional_density(const Distribution& d, const DensityQuery& dq) {
  Conditioner c(d, dq.q);
  check_index(dq.j, dq.q);
  return c.single(dq.j, dq.t);
}

std::vector<double> conditional_cdf(const Distribution& d, int j, const ConditionQuery& q,
                                    std::span<const double> ascending_t) {
  Conditioner c(d, q);
  check_index(j, q);
  auto f = [&](double t) { return c.single(j, t); };

  std::vector<double> out;
  out.reserve(ascending_t.size());
  double acc = 0.0;
  double prev = q.u;
  for (double t : ascending_t) {
    if (t <= q.u) {
      out.push_back(0.0);
      continue;
    }
    const double upto = std::min(t, q.v);
    if (upto < prev) fail(ErrorKind::Domain, "conditional_cdf needs an ascending grid");
    acc += integral(f, prev, upto);
    prev = upto;
    out.push_back(std::min(acc, 1.0));
  }
  return out;
}

double aggregate_density(const Distribution& d, const ConditionQuery& q, double t) {
  return Conditioner(d, q).aggregate(t);
}

double lhs_by_quadrature(const Distribution& d, const TestFunction& g, const ConditionQuery& q) {
  Conditioner c(d, q);
  check_g_at(g, q.u);
  const double total = integral([&](double t) { return g.eval(t) * c.aggregate(t); }, q.u, q.v);
  return total / (q.n - 1);
}

double conditional_expectation(const Distribution& d, const TestFunction& g, int j,
                               const ConditionQuery& q) {
  Conditioner c(d, q);
  check_index(j, q);
  check_g_at(g, q.u);
  return integral([&](double t) { return g.eval(t) * c.single(j, t); }, q.u, q.v);
}

double lemma_rhs(const TestFunction& g, int n, int r, double u, double v) {
  ConditionQuery{n, r, u, v}.validate();
  check_g_at(g, u);
  const int big_n = n + r - 3;
  // Empty tail sum: the bracket is identically 1.
  if (big_n < n - 1) return (big_n + 1) * bar_g(g, u, v);

  // 1 - sum_{j=n-1}^{N} b_j(z) is the lower binomial sum over j = 0..n-2.
  std::vector<double> log_binom(static_cast<std::size_t>(n - 1));
  for (int j = 0; j <= n - 2; ++j)
    log_binom[j] = log_factorial(big_n) - log_factorial(j) - log_factorial(big_n - j);

  const double width = v - u;
  auto integrand = [&](double z) {
    double bracket = 0.0;
    for (int j = 0; j <= n - 2; ++j)
      bracket += std::exp(log_binom[j]) * std::pow(z, j) * std::pow(1.0 - z, big_n - j);
    return g.eval(u + width * z) * bracket;
  };
  return (big_n + 1) * integral(integrand, 0.0, 1.0);
}

}  // namespace recexp
