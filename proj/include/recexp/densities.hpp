#pragma once

#include <span>
#include <vector>

#include "recexp/distribution.hpp"
#include "recexp/records.hpp"
#include "recexp/test_function.hpp"

namespace recexp {

/// Point t at which to evaluate the density of R_j given the covariates of q.
struct DensityQuery {
  int j = 2;
  ConditionQuery q;
  double t = 0.0;
};

/// Density of R_j at t given R_1 = u, R_{n+r} = v:
///
///   (n+r-2)! / ((j-2)! (n+r-1-j)!) A^{j-2} (1-A)^{n+r-1-j} h(t) / (H(v) - H(u)),
///   A = (H(t) - H(u)) / (H(v) - H(u)).
///
/// Any 2 <= j <= n+r-1 is accepted: by the Markov property of records the
/// same form covers every intermediate index, not only j <= n. Returns 0 for
/// t outside (u, v).
double conditional_density(const Distribution& d, const DensityQuery& dq);

/// P(R_j <= t | covariates) for each t in an ascending grid, by cumulative
/// quadrature of conditional_density.
std::vector<double> conditional_cdf(const Distribution& d, int j, const ConditionQuery& q,
                                    std::span<const double> ascending_t);

/// sum_{j=2}^{n} f_j(t | u, v). Closed forms for r = 1 and r = 2; larger r
/// sums the individual densities.
double aggregate_density(const Distribution& d, const ConditionQuery& q, double t);

/// E[(g(R_2) + ... + g(R_n)) / (n - 1) | R_1 = u, R_{n+r} = v] by quadrature.
double lhs_by_quadrature(const Distribution& d, const TestFunction& g, const ConditionQuery& q);

/// E[g(R_j) | R_1 = u, R_{n+r} = v] by quadrature of the single density.
double conditional_expectation(const Distribution& d, const TestFunction& g, int j,
                               const ConditionQuery& q);

/// Exponential-law value of E[sum_{j=2}^n g(R_j) | R_1 = u, R_{n+r} = v]:
/// (N+1) int_0^1 g(u+(v-u)z) [1 - sum_{j=n-1}^{N} C(N,j) z^j (1-z)^{N-j}] dz,
/// N = n + r - 3, with an empty sum when N < n - 1.
double lemma_rhs(const TestFunction& g, int n, int r, double u, double v);

}  // namespace recexp
