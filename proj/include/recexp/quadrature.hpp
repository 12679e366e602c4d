#pragma once

#include <functional>

namespace recexp {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod integration over [a, b].
///
/// The interval with the largest error estimate is bisected until the total
/// estimate drops below max(abs_tol, rel_tol * |value|). The rule never
/// evaluates the integrand at a or b, so integrable endpoint singularities
/// (e.g. a hazard rate that blows up at 0) are handled by refinement alone.
///
/// Throws NumericalError carrying the achieved error when max_intervals is
/// reached first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options = {});

/// Shorthand returning just the value.
double integral(const std::function<double(double)>& f, double a, double b,
                const QuadratureOptions& options = {});

}  // namespace recexp
