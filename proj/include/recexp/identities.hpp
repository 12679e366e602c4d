#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "recexp/distribution.hpp"
#include "recexp/records.hpp"
#include "recexp/test_function.hpp"

namespace recexp {

// Right-hand sides of the regression identities. Each holds for every
// (u, v) when the law is exponential.

/// Adjacent-covariate sum identity: the interval average of g.
double rhs_theorem1(const TestFunction& g, double u, double v);
/// Second covariate two spacings away: gbar - (n I_n - gbar) / (n - 1).
double rhs_theorem2(const TestFunction& g, int n, double u, double v);
/// E[R_n | R_{n-k} = u, R_{n+r} = v] = (r u + k v) / (k + r).
double rhs_weighted_mean(int k, int r, double u, double v);
/// E[R_n^{-(k+r)} | R_{n-k} = u, R_{n+r} = v] = 1 / (u^r v^k).
double rhs_inverse_power(int k, int r, double u, double v);
/// Mean of R_2..R_n given R_1 = u, R_{n+m} = v: ((n+2m-2) u + n v) / (2n+2m-2).
double rhs_note_m(int n, int m, double u, double v);

enum class IdentityId { Thm1, Thm2, Cor2, MeanX, Yab08c, InvPower, NoteM, Lemma };
enum class Method { Quadrature, MonteCarlo };

std::string_view to_string(IdentityId id) noexcept;
std::string_view to_string(Method m) noexcept;
/// Accepts the upper-case ids (THM1, ..., LEMMA), case-insensitively.
std::optional<IdentityId> parse_identity(std::string_view text);
std::optional<Method> parse_method(std::string_view text);
const std::vector<IdentityId>& all_identities();

/// Which identity to check and at which indices. Fields that an identity
/// does not use are ignored:
///   THM1, MEAN_X   n          (second covariate R_{n+1})
///   THM2, COR2     n          (second covariate R_{n+2})
///   YAB08C         k, r       (target R_{k+1} given R_1, R_{k+1+r})
///   INV_POWER      k, r       (same indexing, u > 0)
///   NOTE_M         n, m       (second covariate R_{n+m})
///   LEMMA          n, r       (sum form, exponential-law right-hand side)
/// COR2, MEAN_X, YAB08C and NOTE_M fix g(x) = x; INV_POWER fixes
/// g(x) = x^{-(k+r)}.
struct IdentityParams {
  IdentityId id = IdentityId::Thm1;
  int n = 2;
  int r = 1;
  int k = 1;
  int m = 1;
  double u = 0.0;
  double v = 1.0;
};

struct CheckOptions {
  Method method = Method::Quadrature;
  std::uint64_t mc_budget = 100'000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
};

struct IdentityReport {
  IdentityId identity = IdentityId::Thm1;
  IdentityParams params;
  /// The conditioning event actually evaluated.
  ConditionQuery query;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  std::optional<double> mc_stderr;
  Method method = Method::Quadrature;
  /// Set for NOTE_M with m >= 3: the identity is only known to be necessary.
  bool necessary_only = false;
};

/// Conditioning event used by an identity (validated).
ConditionQuery query_for(const IdentityParams& p);

/// Computes both sides of the chosen identity for law d and fills a report.
/// Quadrature is available for every identity (r > 2 goes through the sum
/// of single densities); Monte Carlo averages mc_budget exact conditional
/// samples drawn from stream (seed, stream).
IdentityReport check_identity(const Distribution& d, const TestFunction& g,
                              const IdentityParams& params, const CheckOptions& options = {});

struct GridSpec {
  std::vector<std::pair<double, double>> points;
};

/// 10 x 10 grid: u in {0} and 9 log-spaced values on [0.01, 3] (10
/// log-spaced values on [0.1, 3] when u = 0 is inadmissible, as for
/// INV_POWER), crossed with 10 log-spaced widths v - u on [0.05, 5].
GridSpec default_grid(IdentityId id);

struct DeviationScan {
  GridSpec grid;
  std::vector<IdentityReport> reports;
  double sup_abs_err = 0.0;
};

/// Runs check_identity over every grid point (concurrently; Monte Carlo
/// point i uses stream options.stream + i) and records the largest error.
DeviationScan deviation_scan(const Distribution& d, const TestFunction& g,
                             const IdentityParams& params, const GridSpec& grid,
                             const CheckOptions& options = {});

}  // namespace recexp
