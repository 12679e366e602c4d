#include "recexp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "recexp/error.hpp"

namespace recexp {
namespace {

// Kronrod abscissae on [0,1); odd indices are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error, l1;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double l1 = std::abs(fc) * kKronrodWeights[7];

  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kKronrodWeights[i] * (f1 + f2);
    l1 += kKronrodWeights[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f1 + f2);
  }

  const double value = kronrod * half;
  l1 *= std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  if (!std::isfinite(value)) error = std::numeric_limits<double>::infinity();
  return {a, b, value, error, l1};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& options) {
  if (a == b) return {0.0, 0.0, 0};

  std::vector<Segment> heap;
  heap.reserve(static_cast<std::size_t>(options.max_intervals) + 1);
  heap.push_back(gk15(f, a, b));

  double value = heap.front().value;
  double error = heap.front().error;
  double l1 = heap.front().l1;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  auto target = [&] {
    return std::max({options.abs_tol, options.rel_tol * std::abs(value), 50.0 * eps * l1});
  };

  while (!(error <= target())) {
    if (static_cast<int>(heap.size()) >= options.max_intervals) {
      std::ostringstream msg;
      msg << "quadrature on [" << a << ", " << b << "] stopped after " << heap.size()
          << " intervals with error estimate " << error << " (target " << target() << ")";
      throw NumericalError(msg.str(), value, error);
    }
    std::pop_heap(heap.begin(), heap.end());
    const Segment worst = heap.back();
    heap.pop_back();

    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      std::ostringstream msg;
      msg << "quadrature on [" << a << ", " << b << "] cannot bisect below width "
          << (worst.b - worst.a) << "; error estimate " << error;
      throw NumericalError(msg.str(), value, error);
    }
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);

    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());

    if (!std::isfinite(worst.error) || !std::isfinite(worst.value)) {
      // inf - inf in the running sums; rebuild them.
      value = error = l1 = 0.0;
      for (const auto& s : heap) {
        value += s.value;
        error += s.error;
        l1 += s.l1;
      }
    }
  }

  // Re-sum to shed the drift of the running updates.
  double total = 0.0;
  double total_error = 0.0;
  for (const auto& s : heap) {
    total += s.value;
    total_error += s.error;
  }
  return {total, total_error, static_cast<int>(heap.size())};
}

double integral(const std::function<double(double)>& f, double a, double b,
                const QuadratureOptions& options) {
  return integrate(f, a, b, options).value;
}

}  // namespace recexp
