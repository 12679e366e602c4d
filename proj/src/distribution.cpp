#include "recexp/distribution.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "recexp/error.hpp"

namespace recexp {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

std::string shortest(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

Distribution::Distribution(Family family) : family_(family) {
  std::visit(overloaded{
                 [](const Exponential& e) {
                   if (!positive_finite(e.rate))
                     fail(ErrorKind::ParameterDomain, "exponential rate must be > 0");
                 },
                 [](const Weibull& w) {
                   if (!positive_finite(w.shape) || !positive_finite(w.scale))
                     fail(ErrorKind::ParameterDomain, "weibull shape and scale must be > 0");
                 },
                 [](const LinearFailureRate& l) {
                   if (!std::isfinite(l.a) || !std::isfinite(l.b) || l.a < 0.0 || l.b < 0.0 ||
                       l.a + l.b <= 0.0)
                     fail(ErrorKind::ParameterDomain,
                          "linear failure rate needs a >= 0, b >= 0 and a + b > 0");
                 },
                 [](const Pareto& p) {
                   if (!positive_finite(p.alpha) || !positive_finite(p.sigma))
                     fail(ErrorKind::ParameterDomain, "pareto alpha and sigma must be > 0");
                 },
             },
             family_);
}

std::string Distribution::name() const {
  return std::visit(overloaded{
                        [](const Exponential&) { return std::string("exp"); },
                        [](const Weibull&) { return std::string("weibull"); },
                        [](const LinearFailureRate&) { return std::string("lfr"); },
                        [](const Pareto&) { return std::string("pareto"); },
                    },
                    family_);
}

std::vector<double> Distribution::params() const {
  return std::visit(overloaded{
                        [](const Exponential& e) { return std::vector<double>{e.rate}; },
                        [](const Weibull& w) { return std::vector<double>{w.shape, w.scale}; },
                        [](const LinearFailureRate& l) { return std::vector<double>{l.a, l.b}; },
                        [](const Pareto& p) { return std::vector<double>{p.alpha, p.sigma}; },
                    },
                    family_);
}

std::string Distribution::spec() const {
  std::string out = name() + ":";
  const auto ps = params();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ',';
    out += shortest(ps[i]);
  }
  return out;
}

bool Distribution::is_exponential() const noexcept {
  return std::visit(overloaded{
                        [](const Exponential&) { return true; },
                        [](const Weibull& w) { return w.shape == 1.0; },
                        [](const LinearFailureRate& l) { return l.b == 0.0; },
                        [](const Pareto&) { return false; },
                    },
                    family_);
}

double Distribution::cum_hazard(double x) const {
  if (!(x > 0.0)) return 0.0;
  return std::visit(overloaded{
                        [x](const Exponential& e) { return e.rate * x; },
                        [x](const Weibull& w) { return std::pow(x / w.scale, w.shape); },
                        [x](const LinearFailureRate& l) { return x * (l.a + 0.5 * l.b * x); },
                        [x](const Pareto& p) { return p.alpha * std::log1p(x / p.sigma); },
                    },
                    family_);
}

double Distribution::hazard(double x) const {
  if (x < 0.0) return 0.0;
  return std::visit(overloaded{
                        [](const Exponential& e) { return e.rate; },
                        [x](const Weibull& w) {
                          if (w.shape == 1.0) return 1.0 / w.scale;
                          // x = 0 gives 0 or +inf, the one-sided limit.
                          return w.shape / w.scale * std::pow(x / w.scale, w.shape - 1.0);
                        },
                        [x](const LinearFailureRate& l) { return l.a + l.b * x; },
                        [x](const Pareto& p) { return p.alpha / (p.sigma + x); },
                    },
                    family_);
}

double Distribution::survival(double x) const { return std::exp(-cum_hazard(x)); }

double Distribution::cdf(double x) const { return -std::expm1(-cum_hazard(x)); }

double Distribution::pdf(double x) const {
  if (x < 0.0) return 0.0;
  const double s = survival(x);
  if (s == 0.0) return 0.0;
  return hazard(x) * s;
}

double Distribution::inv_cum_hazard(double s) const {
  if (std::isnan(s) || s < 0.0) fail(ErrorKind::Domain, "inverse cumulative hazard needs s >= 0");
  if (s == 0.0) return 0.0;
  const double x = std::visit(
      overloaded{
          [s](const Exponential& e) { return s / e.rate; },
          [s](const Weibull& w) { return w.scale * std::pow(s, 1.0 / w.shape); },
          // Root of b x^2 / 2 + a x - s written without cancellation.
          [s](const LinearFailureRate& l) {
            return 2.0 * s / (l.a + std::sqrt(l.a * l.a + 2.0 * l.b * s));
          },
          [s](const Pareto& p) { return p.sigma * std::expm1(s / p.alpha); },
      },
      family_);
  if (!std::isfinite(x)) {
    std::ostringstream msg;
    msg << spec() << ": inverse cumulative hazard overflowed at H = " << s;
    fail(ErrorKind::Saturation, msg.str());
  }
  return x;
}

double Distribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return 0.0;
    fail(ErrorKind::Domain, "quantile needs p in [0, 1)");
  }
  return inv_cum_hazard(-std::log1p(-p));
}

Distribution make_exponential(double rate) { return Distribution(Exponential{rate}); }

Distribution make_weibull(double shape, double scale) {
  return Distribution(Weibull{shape, scale});
}

Distribution make_linear_failure_rate(double a, double b) {
  return Distribution(LinearFailureRate{a, b});
}

Distribution make_pareto(double alpha, double sigma) { return Distribution(Pareto{alpha, sigma}); }

double w_signature(const Distribution& d, double v) {
  if (!(v > d.support_lo()) || !std::isfinite(v))
    fail(ErrorKind::Domain, "w signature needs v in the interior of the support");
  const double big_h = d.cum_hazard(v);
  if (!(big_h > 0.0)) fail(ErrorKind::Domain, "w signature needs H(v) > 0");
  return d.hazard(v) * v / big_h;
}

}  // namespace recexp
