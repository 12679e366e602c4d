#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "recexp/densities.hpp"
#include "recexp/identities.hpp"

using namespace recexp;

namespace {

std::vector<Distribution> alternatives() {
  return {make_weibull(0.5, 1.0), make_weibull(2.0, 1.0), make_linear_failure_rate(1.0, 1.0),
          make_pareto(2.0, 1.0)};
}

// Params at which every identity id is exercised during the null sweep.
std::vector<IdentityParams> null_cases() {
  std::vector<IdentityParams> out;
  for (int n : {2, 3, 4}) {
    out.push_back({IdentityId::Thm1, n});
    out.push_back({IdentityId::Thm2, n});
    out.push_back({IdentityId::Cor2, n});
    out.push_back({IdentityId::MeanX, n});
    for (int m : {1, 2, 3}) out.push_back({IdentityId::NoteM, n, 1, 1, m});
    for (int r : {1, 2, 3}) out.push_back({IdentityId::Lemma, n, r});
  }
  for (int k : {1, 2})
    for (int r : {1, 2}) {
      out.push_back({IdentityId::Yab08c, 2, r, k});
      out.push_back({IdentityId::InvPower, 2, r, k});
    }
  return out;
}

bool depends_on_g(IdentityId id) {
  return id == IdentityId::Thm1 || id == IdentityId::Thm2 || id == IdentityId::Lemma;
}

}  // namespace

TEST_CASE("identity right-hand sides", "[identities]") {
  REQUIRE(rhs_theorem1(g_identity(), 0.0, 1.0) == Catch::Approx(0.5));
  REQUIRE(rhs_theorem1(g_power(2), 0.0, 1.0) == Catch::Approx(1.0 / 3.0));
  REQUIRE(rhs_theorem1(g_power(0), 2.0, 9.0) == Catch::Approx(1.0));

  REQUIRE(rhs_theorem2(g_identity(), 2, 0.0, 1.0) == Catch::Approx(1.0 / 3.0));
  REQUIRE(rhs_theorem2(g_identity(), 3, 0.0, 1.0) == Catch::Approx(0.375));
  for (int n = 2; n <= 5; ++n) REQUIRE(rhs_theorem2(g_power(0), n, 0.4, 3.0) == Catch::Approx(1.0));

  REQUIRE_THROWS_KIND(rhs_theorem1(g_identity(), 1.0, 1.0), ErrorKind::Ordering);
  REQUIRE_THROWS_KIND(rhs_theorem2(g_identity(), 1, 0.0, 1.0), ErrorKind::Domain);
}

TEST_CASE("weighted mean, inverse power and note right-hand sides", "[identities]") {
  REQUIRE(rhs_weighted_mean(1, 1, 0.0, 1.0) == Catch::Approx(0.5));
  REQUIRE(rhs_weighted_mean(2, 1, 0.0, 3.0) == Catch::Approx(2.0));
  for (int k = 1; k <= 4; ++k) REQUIRE(rhs_weighted_mean(k, k, 1.2, 3.4) == Catch::Approx(2.3));

  REQUIRE(rhs_inverse_power(1, 1, 1.0, 2.0) == Catch::Approx(0.5));
  REQUIRE(rhs_inverse_power(2, 1, 1.0, std::nextafter(1.0, 2.0)) == Catch::Approx(1.0));
  REQUIRE(rhs_inverse_power(1, 2, 2.0, 3.0) == Catch::Approx(1.0 / 12.0));
  REQUIRE_THROWS_KIND(rhs_inverse_power(1, 1, 0.0, 2.0), ErrorKind::Domain);

  for (int n = 2; n <= 5; ++n) REQUIRE(rhs_note_m(n, 1, 0.7, 2.5) == Catch::Approx(1.6));
  REQUIRE(rhs_note_m(2, 2, 0.0, 1.0) == Catch::Approx(1.0 / 3.0));
  // ((n+2m-2) u + n v) / (2n+2m-2) = 12 / 8.
  REQUIRE(rhs_note_m(2, 3, 0.0, 6.0) == Catch::Approx(1.5));
}

TEST_CASE("note identity for m = 3 agrees with Monte Carlo", "[identities][mc]") {
  const auto report = check_identity(make_exponential(1.0), g_identity(), {IdentityId::NoteM, 2, 1, 1, 3, 0.0, 6.0},
                                     {Method::MonteCarlo, 100000, 8});
  REQUIRE(report.necessary_only);
  REQUIRE(report.abs_err < 4.0 * *report.mc_stderr);
  REQUIRE(report.rhs == Catch::Approx(1.5));
}

TEST_CASE("check_identity", "[identities]") {
  SECTION("THM1 under exponential(1), g = x^2") {
    const auto rep = check_identity(make_exponential(1.0), g_power(2), {IdentityId::Thm1, 3, 1, 1, 1, 0.5, 2.0});
    // Both sides against independent Simpson oracles.
    const double rhs_oracle = oracle::simpson([](double t) { return t * t; }, 0.5, 2.0) / 1.5;
    const double lhs_oracle = oracle::simpson_open(
        [&](double t) { return t * t * aggregate_density(make_exponential(1.0), {3, 1, 0.5, 2.0}, t); }, 0.5, 2.0) / 2.0;
    REQUIRE(rep.rhs == Catch::Approx(rhs_oracle).epsilon(1e-12));
    REQUIRE(rep.lhs == Catch::Approx(lhs_oracle).epsilon(1e-10));
    REQUIRE(rep.abs_err < 1e-8);
    REQUIRE(rep.method == Method::Quadrature);
    REQUIRE_FALSE(rep.mc_stderr.has_value());
  }
  SECTION("THM1 under weibull(2,1) is falsified") {
    const auto rep = check_identity(make_weibull(2.0, 1.0), g_identity(), {IdentityId::Thm1, 2, 1, 1, 1, 0.0, 1.0});
    REQUIRE(rep.abs_err > 0.01);
  }
  SECTION("THM2 is rate free") {
    const IdentityParams p{IdentityId::Thm2, 2, 2, 1, 1, 0.0, 1.0};
    const auto r2 = check_identity(make_exponential(2.0), g_identity(), p);
    const auto r1 = check_identity(make_exponential(1.0), g_identity(), p);
    REQUIRE(r2.abs_err < 1e-8);
    REQUIRE(std::abs(r2.lhs - r1.lhs) < 1e-12);
  }
  SECTION("report bookkeeping") {
    const auto rep = check_identity(make_weibull(2.0, 1.0), g_identity(), {IdentityId::MeanX, 3, 1, 1, 1, 0.2, 1.0},
                                    {Method::MonteCarlo, 1000, 3});
    REQUIRE(rep.mc_stderr.has_value());
    REQUIRE(rep.abs_err == std::abs(rep.lhs - rep.rhs));
    REQUIRE(rep.rel_err == rep.abs_err / std::abs(rep.rhs));
    REQUIRE(rep.query.n == 3);
    REQUIRE(rep.query.r == 1);
  }
  SECTION("configuration errors") {
    REQUIRE_THROWS_KIND(check_identity(make_exponential(1.0), g_identity(), {IdentityId::Thm1},
                                       {Method::MonteCarlo, 99, 1}),
                        ErrorKind::Configuration);
    REQUIRE_THROWS_KIND(check_identity(make_exponential(1.0), g_identity(), {IdentityId::InvPower, 2, 1, 1, 1, 0.0, 1.0}),
                        ErrorKind::Domain);
    REQUIRE_THROWS_KIND(check_identity(make_exponential(1.0), g_identity(), {IdentityId::Thm1, 2, 1, 1, 1, 2.0, 1.0}),
                        ErrorKind::Ordering);
  }
}

TEST_CASE("identity ids parse", "[identities]") {
  for (auto id : all_identities()) REQUIRE(parse_identity(to_string(id)) == id);
  REQUIRE(parse_identity("thm1") == IdentityId::Thm1);
  REQUIRE_FALSE(parse_identity("THM3").has_value());
  REQUIRE(parse_method("mc") == Method::MonteCarlo);
}

TEST_CASE("default grid", "[identities]") {
  const auto g = default_grid(IdentityId::Thm1);
  REQUIRE(g.points.size() == 100);
  REQUIRE(g.points.front().first == 0.0);
  for (auto [u, v] : g.points) REQUIRE(u < v);
  for (auto [u, v] : default_grid(IdentityId::InvPower).points) REQUIRE(u > 0.0);
}

TEST_CASE("deviation scans", "[identities]") {
  const auto e1 = make_exponential(1.0);
  REQUIRE(deviation_scan(e1, g_identity(), {IdentityId::Thm1, 2}, default_grid(IdentityId::Thm1)).sup_abs_err < 1e-7);
  REQUIRE(deviation_scan(make_linear_failure_rate(1.0, 1.0), g_identity(), {IdentityId::Thm1, 2},
                         default_grid(IdentityId::Thm1))
              .sup_abs_err > 1e-3);
  REQUIRE(deviation_scan(e1, g_identity(), {IdentityId::Lemma, 3, 2}, default_grid(IdentityId::Lemma)).sup_abs_err < 1e-7);

  const auto scan = deviation_scan(e1, g_power(2), {IdentityId::Thm2, 3}, default_grid(IdentityId::Thm2));
  double worst = 0.0;
  for (const auto& r : scan.reports) worst = std::max(worst, r.abs_err);
  REQUIRE(scan.sup_abs_err == worst);
  REQUIRE(scan.reports.size() == scan.grid.points.size());
}

TEST_CASE("exponential null: every identity vanishes on the default grid", "[identities][property]") {
  const std::vector<TestFunction> gs{g_identity(), g_power(0), g_power(2), g_exp(1.0)};
  for (double c : {0.5, 1.0, 3.0}) {
    const auto d = make_exponential(c);
    for (const auto& p : null_cases()) {
      const auto grid = default_grid(p.id);
      for (std::size_t gi = 0; gi < (depends_on_g(p.id) ? gs.size() : 1); ++gi) {
        INFO("c=" << c << " id=" << to_string(p.id) << " n=" << p.n << " r=" << p.r << " k=" << p.k
                  << " m=" << p.m << " g=" << gs[gi].name);
        REQUIRE(deviation_scan(d, gs[gi], p, grid).sup_abs_err < 1e-6);
      }
    }
  }
}

TEST_CASE("inverse-power g away from zero satisfies the sum identities", "[identities]") {
  const auto d = make_exponential(1.0);
  for (auto id : {IdentityId::Thm1, IdentityId::Thm2}) {
    const auto rep = check_identity(d, g_neg_power(2), {id, 3, 1, 1, 1, 0.5, 2.5});
    REQUIRE(rep.abs_err < 1e-8);
  }
}

TEST_CASE("falsification: alternatives break THM1 and THM2", "[identities][property]") {
  for (const auto& d : alternatives()) {
    for (auto id : {IdentityId::Thm1, IdentityId::Thm2}) {
      INFO(d.spec() << " " << to_string(id));
      REQUIRE(deviation_scan(d, g_identity(), {id, 2}, default_grid(id)).sup_abs_err > 1e-3);
    }
  }
}

TEST_CASE("Monte Carlo left sides agree with quadrature", "[identities][mc]") {
  Rng pick(2718);
  const std::vector<Distribution> laws{make_exponential(1.0), make_weibull(2.0, 1.0), make_weibull(0.5, 1.0),
                                       make_linear_failure_rate(1.0, 1.0), make_pareto(2.0, 1.0)};
  const std::vector<IdentityId> ids{IdentityId::Thm1, IdentityId::Thm2, IdentityId::Yab08c, IdentityId::NoteM,
                                    IdentityId::Lemma};
  const int trials = 200;
  int within = 0;
  for (int t = 0; t < trials; ++t) {
    const auto& d = laws[t % laws.size()];
    IdentityParams p;
    p.id = ids[(t / laws.size()) % ids.size()];
    p.n = 2 + static_cast<int>(3 * uniform01(pick));
    p.r = 1 + static_cast<int>(2 * uniform01(pick));
    p.k = 1 + static_cast<int>(2 * uniform01(pick));
    p.m = 1 + static_cast<int>(3 * uniform01(pick));
    p.u = 2.0 * uniform01(pick);
    p.v = p.u + 0.1 + 3.0 * uniform01(pick);
    const auto quad = check_identity(d, g_identity(), p);
    const auto mc = check_identity(d, g_identity(), p, {Method::MonteCarlo, 2000, 99, static_cast<std::uint64_t>(t)});
    if (std::abs(mc.lhs - quad.lhs) <= 4.0 * *mc.mc_stderr) ++within;
  }
  REQUIRE(within >= 190);
}

TEST_CASE("equivariance under rescaling", "[identities][property]") {
  // Scaling the law by lambda and (u, v) by lambda scales both sides of the
  // g = x identities by lambda.
  for (double lambda : {0.25, 3.0, 10.0}) {
    const std::vector<std::pair<Distribution, Distribution>> pairs{
        {make_exponential(1.0), make_exponential(1.0 / lambda)},
        {make_weibull(2.0, 1.0), make_weibull(2.0, lambda)},
        {make_pareto(2.0, 1.0), make_pareto(2.0, lambda)}};
    for (const auto& [base, scaled] : pairs) {
      for (auto id : {IdentityId::Thm1, IdentityId::Thm2, IdentityId::Cor2, IdentityId::NoteM}) {
        const IdentityParams p{id, 3, 1, 1, 2, 0.3, 1.7};
        IdentityParams q = p;
        q.u *= lambda;
        q.v *= lambda;
        const auto a = check_identity(base, g_identity(), p);
        const auto b = check_identity(scaled, g_identity(), q);
        INFO(base.spec() << " " << to_string(id) << " lambda=" << lambda);
        REQUIRE(std::abs(b.lhs - lambda * a.lhs) <= 1e-10 * std::abs(b.lhs));
        REQUIRE(std::abs(b.rhs - lambda * a.rhs) <= 1e-10 * std::abs(b.rhs));
      }
    }
  }
}

TEST_CASE("closed forms for g = x agree with the two-spacing right side", "[identities][property]") {
  Rng rng(61);
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + static_cast<int>(10 * uniform01(rng));
    const double u = 5.0 * uniform01(rng);
    const double v = u + 0.01 + 5.0 * uniform01(rng);
    const double thm2 = rhs_theorem2(g_identity(), n, u, v);
    const double first = (u + v) / 2.0 - (v - u) / (2.0 * (n + 1));
    const double second = ((n + 2) * u + n * v) / (n + 2 + n);
    REQUIRE(std::abs(thm2 - first) <= 1e-12 * std::max(1.0, v));
    REQUIRE(std::abs(thm2 - second) <= 1e-12 * std::max(1.0, v));
  }
}
