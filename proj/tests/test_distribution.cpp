#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "recexp/distribution.hpp"
#include "recexp/rng.hpp"

using namespace recexp;

namespace {

std::vector<Distribution> builtins() {
  return {make_exponential(1.0),    make_exponential(2.5),         make_weibull(0.5, 1.0),
          make_weibull(2.0, 1.0),   make_weibull(1.7, 3.0),        make_linear_failure_rate(1.0, 1.0),
          make_linear_failure_rate(0.0, 2.0), make_pareto(2.0, 1.0), make_pareto(0.7, 2.0)};
}

std::vector<Distribution> alternatives() {
  return {make_weibull(0.5, 1.0), make_weibull(2.0, 1.0), make_linear_failure_rate(1.0, 1.0),
          make_pareto(2.0, 1.0)};
}

// Interior points drawn through the quantile so every law gets a sensible range.
std::vector<double> interior_points(const Distribution& d, std::uint64_t seed, int count = 100) {
  Rng rng(seed);
  std::vector<double> xs;
  for (int i = 0; i < count; ++i) xs.push_back(d.quantile(0.01 + 0.98 * uniform01(rng)));
  return xs;
}

}  // namespace

TEST_CASE("exponential closed forms", "[distributions]") {
  const auto e1 = make_exponential(1.0);
  REQUIRE(e1.cum_hazard(2.0) == 2.0);
  for (double x : {0.0, 0.3, 1.0, 7.5}) REQUIRE(e1.hazard(x) == 1.0);
  const auto e2 = make_exponential(2.0);
  REQUIRE(e2.quantile(1.0 - std::exp(-2.0)) == Catch::Approx(1.0).epsilon(1e-14));
  REQUIRE(e2.cdf(0.5) == Catch::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  REQUIRE(e1.cum_hazard(0.0) == 0.0);
  REQUIRE(e1.cdf(0.0) == 0.0);
}

TEST_CASE("weibull closed forms", "[distributions]") {
  const auto w = make_weibull(2.0, 1.0);
  REQUIRE(w.cum_hazard(3.0) == Catch::Approx(9.0));
  REQUIRE(w.hazard(1.0) == Catch::Approx(2.0));
  const auto w1 = make_weibull(1.0, 1.0);
  for (double x : {0.0, 0.1, 2.0, 11.0}) REQUIRE(w1.hazard(x) == 1.0);
  REQUIRE(w1.is_exponential());
  // shape < 1: hazard diverges at 0, the one-sided limit.
  REQUIRE(std::isinf(make_weibull(0.5, 1.0).hazard(0.0)));
}

TEST_CASE("linear failure rate closed forms", "[distributions]") {
  REQUIRE(make_linear_failure_rate(1.0, 0.0).cum_hazard(5.0) == 5.0);
  REQUIRE(make_linear_failure_rate(0.0, 2.0).cum_hazard(2.0) == 4.0);
  REQUIRE(make_linear_failure_rate(1.0, 1.0).hazard(1.0) == 2.0);
}

TEST_CASE("pareto closed forms", "[distributions]") {
  const auto p = make_pareto(2.0, 1.0);
  REQUIRE(p.cum_hazard(std::exp(1.0) - 1.0) == Catch::Approx(2.0));
  REQUIRE(p.hazard(1.0) == 1.0);
  REQUIRE(p.cdf(1.0) == Catch::Approx(0.75));
}

TEST_CASE("parameter-domain errors", "[distributions]") {
  REQUIRE_THROWS_KIND(make_exponential(0.0), ErrorKind::ParameterDomain);
  REQUIRE_THROWS_KIND(make_exponential(-1.0), ErrorKind::ParameterDomain);
  REQUIRE_THROWS_KIND(make_weibull(0.0, 1.0), ErrorKind::ParameterDomain);
  REQUIRE_THROWS_KIND(make_weibull(1.0, -2.0), ErrorKind::ParameterDomain);
  REQUIRE_THROWS_KIND(make_linear_failure_rate(0.0, 0.0), ErrorKind::ParameterDomain);
  REQUIRE_THROWS_KIND(make_linear_failure_rate(-1.0, 2.0), ErrorKind::ParameterDomain);
  REQUIRE_THROWS_KIND(make_pareto(2.0, 0.0), ErrorKind::ParameterDomain);
}

TEST_CASE("w signature", "[distributions]") {
  REQUIRE(w_signature(make_exponential(1.0), 3.0) == Catch::Approx(1.0).epsilon(1e-15));
  for (double v : {0.1, 1.0, 4.2}) REQUIRE(w_signature(make_weibull(2.0, 1.0), v) == Catch::Approx(2.0));
  REQUIRE(w_signature(make_linear_failure_rate(1.0, 1.0), 1.0) == Catch::Approx(4.0 / 3.0));

  REQUIRE_THROWS_KIND(w_signature(make_exponential(1.0), 0.0), ErrorKind::Domain);
  REQUIRE_THROWS_KIND(w_signature(make_exponential(1.0), -1.0), ErrorKind::Domain);
}

TEST_CASE("w signature is identically one exactly for exponentials", "[distributions][property]") {
  for (double c : {0.5, 1.0, 3.0, 17.0}) {
    const auto d = make_exponential(c);
    for (double v : interior_points(d, 11)) REQUIRE(std::abs(w_signature(d, v) - 1.0) <= 1e-12);
  }
  for (const auto& d : alternatives()) {
    double worst = 0.0;
    for (double v = 0.05; v <= 10.0; v += 0.05) worst = std::max(worst, std::abs(w_signature(d, v) - 1.0));
    INFO(d.spec());
    REQUIRE(worst > 0.1);
  }
}

TEST_CASE("hazard machinery is self-consistent", "[distributions][property]") {
  std::uint64_t seed = 100;
  for (const auto& d : builtins()) {
    INFO(d.spec());
    for (double x : interior_points(d, ++seed)) {
      // h = H' by central difference with a relative step.
      const double step = 1e-5 * x;
      const double fd = oracle::central_difference([&](double t) { return d.cum_hazard(t); }, x, step);
      REQUIRE(std::abs(fd - d.hazard(x)) <= 1e-6 * std::max(1.0, d.hazard(x)));

      REQUIRE(std::abs(d.cum_hazard(x) + std::log1p(-d.cdf(x))) <= 1e-12);
      REQUIRE(std::abs(d.hazard(x) - d.pdf(x) / (1.0 - d.cdf(x))) <= 1e-10 * std::max(1.0, d.hazard(x)));
      REQUIRE(std::abs(d.quantile(d.cdf(x)) - x) <= 1e-9 * std::max(1.0, x));
    }
  }
}

TEST_CASE("cdf is a proper distribution function", "[distributions][property]") {
  for (const auto& d : builtins()) {
    INFO(d.spec());
    REQUIRE(d.cdf(d.support_lo()) == 0.0);
    double prev = 0.0;
    for (double x = 0.0; x < 50.0; x += 0.25) {
      const double f = d.cdf(x);
      REQUIRE(f >= prev);
      prev = f;
    }
    REQUIRE(d.cdf(1e6) > 0.99);
  }
}

TEST_CASE("inverse cumulative hazard saturates loudly", "[distributions]") {
  REQUIRE_THROWS_KIND(make_pareto(2.0, 1.0).inv_cum_hazard(1e4), ErrorKind::Saturation);
  REQUIRE(make_exponential(1.0).inv_cum_hazard(40.0) == 40.0);
}

TEST_CASE("spec strings round trip", "[distributions]") {
  REQUIRE(make_weibull(2.0, 1.0).spec() == "weibull:2,1");
  REQUIRE(make_exponential(0.5).spec() == "exp:0.5");
  REQUIRE(make_linear_failure_rate(1.0, 1.0).spec() == "lfr:1,1");
}
