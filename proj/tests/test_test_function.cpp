#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "recexp/rng.hpp"
#include "recexp/test_function.hpp"

using namespace recexp;

namespace {

// Built-ins usable on [0, inf).
std::vector<TestFunction> family_from_zero() {
  return {g_identity(), g_power(0), g_power(2), g_power(3), g_exp(1.0), g_exp(-0.7)};
}

std::vector<TestFunction> family_all() {
  auto out = family_from_zero();
  out.push_back(g_neg_power(1));
  out.push_back(g_neg_power(2));
  return out;
}

// Independent I_n(0, v): Simpson in z.
double i_n_oracle(const TestFunction& g, int n, double u, double v) {
  return oracle::simpson([&](double z) { return g.eval(u + (v - u) * z) * std::pow(z, n - 1); }, 0.0,
                         1.0, 4000);
}

}  // namespace

TEST_CASE("built-in members evaluate", "[test_functions]") {
  REQUIRE(g_power(2)(3.0) == 9.0);
  REQUIRE(g_neg_power(2)(2.0) == 0.25);
  REQUIRE((*g_identity().antiderivative)(4.0) == 8.0);
  REQUIRE(g_power(0)(123.0) == 1.0);
  REQUIRE(g_exp(1.0)(1.0) == Catch::Approx(std::exp(1.0)));
  REQUIRE_THROWS_KIND(g_neg_power(2)(0.0), ErrorKind::Domain);
  REQUIRE_THROWS_KIND(g_power(-1), ErrorKind::ParameterDomain);
  REQUIRE_THROWS_KIND(g_neg_power(0), ErrorKind::ParameterDomain);
}

TEST_CASE("bar_g", "[test_functions]") {
  REQUIRE(bar_g(g_identity(), 0.0, 1.0) == Catch::Approx(0.5));
  REQUIRE(bar_g(g_power(2), 0.0, 1.0) == Catch::Approx(1.0 / 3.0));
  REQUIRE(bar_g(g_identity(), 1.0, 3.0) == Catch::Approx(2.0));
  REQUIRE(bar_g(g_neg_power(2), 1.0, 2.0) == Catch::Approx(0.5));

  REQUIRE_THROWS_KIND(bar_g(g_identity(), 1.0, 1.0), ErrorKind::Ordering);
  REQUIRE_THROWS_KIND(bar_g(g_identity(), 2.0, 1.0), ErrorKind::Ordering);
  REQUIRE_THROWS_KIND(bar_g(g_neg_power(2), 0.0, 1.0), ErrorKind::Domain);
}

TEST_CASE("I_n", "[test_functions]") {
  REQUIRE(i_n(g_identity(), 2, 0.0, 1.0) == Catch::Approx(1.0 / 3.0));
  // n I_n = (u + n v) / (n + 1) for g = x.
  for (int n = 1; n <= 6; ++n)
    REQUIRE(n * i_n(g_identity(), n, 0.7, 2.9) == Catch::Approx((0.7 + n * 2.9) / (n + 1)));
  for (int n = 1; n <= 6; ++n) REQUIRE(i_n(g_power(0), n, 0.3, 5.0) == Catch::Approx(1.0 / n));
  REQUIRE_THROWS_KIND(i_n(g_identity(), 0, 0.0, 1.0), ErrorKind::Domain);
  REQUIRE_THROWS_KIND(i_n(g_identity(), 2, 1.0, 0.0), ErrorKind::Ordering);
}

TEST_CASE("I_n matches a Simpson oracle for every built-in", "[test_functions]") {
  for (const auto& g : family_all()) {
    INFO(g.name);
    for (int n : {1, 2, 5})
      REQUIRE(i_n(g, n, 0.4, 2.2) == Catch::Approx(i_n_oracle(g, n, 0.4, 2.2)).epsilon(1e-10));
  }
}

TEST_CASE("I_1 equals the interval average", "[test_functions][property]") {
  Rng rng(5);
  for (const auto& g : family_all()) {
    INFO(g.name);
    for (int i = 0; i < 50; ++i) {
      const double u = 0.05 + 3.0 * uniform01(rng);
      const double v = u + 0.01 + 4.0 * uniform01(rng);
      const double avg = bar_g(g, u, v);
      REQUIRE(std::abs(i_n(g, 1, u, v) - avg) <= 1e-10 * std::max(1.0, std::abs(avg)));
    }
  }
}

TEST_CASE("bar_g from the antiderivative matches quadrature", "[test_functions][property]") {
  for (auto g : family_all()) {
    INFO(g.name);
    const double exact = bar_g(g, 0.3, 2.7);
    g.antiderivative.reset();
    REQUIRE(std::abs(bar_g(g, 0.3, 2.7) - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("exact calculus agrees with finite differences", "[test_functions][property]") {
  Rng rng(9);
  for (const auto& g : family_all()) {
    INFO(g.name);
    for (int i = 0; i < 50; ++i) {
      const double x = 0.2 + 3.0 * uniform01(rng);
      const double h = 1e-5 * x;
      const double scale = std::max(1.0, std::abs(g.eval(x)));
      const double d_anti = oracle::central_difference(*g.antiderivative, x, h);
      REQUIRE(std::abs(d_anti - g.eval(x)) <= 1e-7 * scale);
      const double d_eval = oracle::central_difference(g.eval, x, h);
      REQUIRE(std::abs(d_eval - (*g.derivative)(x)) <= 1e-7 * std::max(1.0, std::abs(d_eval)));
    }
  }
}

TEST_CASE("euler identity residual", "[test_functions]") {
  REQUIRE(euler_identity_residual(g_identity(), 2, 1.0) == Catch::Approx(0.0).margin(1e-15));

  SECTION("g = x^2, n = 3, v = 2 against a finite-difference oracle") {
    const auto g = g_power(2);
    auto in = [&](double v) { return i_n_oracle(g, 3, 0.0, v); };
    const double oracle_residual = 3 * in(2.0) - (g.eval(2.0) - oracle::central_difference(in, 2.0, 1e-4) * 2.0);
    REQUIRE(std::abs(oracle_residual) < 1e-8);
    REQUIRE(std::abs(euler_identity_residual(g, 3, 2.0)) < 1e-8);
  }

  SECTION("g = e^x, n = 2, v = 1 against a quadrature + finite-difference oracle") {
    const auto g = g_exp(1.0);
    auto in = [&](double v) { return i_n_oracle(g, 2, 0.0, v); };
    const double oracle_residual = 2 * in(1.0) - (g.eval(1.0) - oracle::central_difference(in, 1.0, 1e-4) * 1.0);
    REQUIRE(std::abs(oracle_residual) < 1e-6);
    REQUIRE(std::abs(euler_identity_residual(g, 2, 1.0)) < 1e-6);
  }

  REQUIRE_THROWS_KIND(euler_identity_residual(g_neg_power(2), 3, 1.0), ErrorKind::Domain);
  REQUIRE_THROWS_KIND(euler_identity_residual(g_identity(), 2, 0.0), ErrorKind::Domain);
}

TEST_CASE("euler identities hold across the family", "[test_functions][property]") {
  for (const auto& g : family_from_zero()) {
    INFO(g.name);
    for (int n = 1; n <= 6; ++n)
      for (double v : {0.5, 1.0, 2.0}) REQUIRE(std::abs(euler_identity_residual(g, n, v)) <= 1e-6);
  }
}
