#include "recexp/identities.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "recexp/densities.hpp"
#include "recexp/error.hpp"
#include "recexp/parallel.hpp"
#include "recexp/stats.hpp"

namespace recexp {
namespace {

void check_ordered(double u, double v) {
  if (!std::isfinite(u) || !std::isfinite(v)) fail(ErrorKind::Domain, "u and v must be finite");
  if (u < 0.0) fail(ErrorKind::Domain, "u must be >= 0");
  if (!(u < v)) {
    std::ostringstream msg;
    msg << "need u < v, got u = " << u << ", v = " << v;
    fail(ErrorKind::Ordering, msg.str());
  }
}

std::vector<double> logspace(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = lo * std::exp(step * i);
  out.back() = hi;
  return out;
}

bool uses_fixed_identity_g(IdentityId id) {
  return id == IdentityId::Cor2 || id == IdentityId::MeanX || id == IdentityId::Yab08c ||
         id == IdentityId::NoteM;
}

// The function of the sampled middle records whose conditional mean is the
// identity's left-hand side.
struct LhsFunctional {
  TestFunction g;
  int first;  // 0-based index into (R_2, ..., R_{n+r-1})
  int last;   // inclusive
  double scale;

  double operator()(const std::vector<double>& middle) const {
    double s = 0.0;
    for (int i = first; i <= last; ++i) s += g.eval(middle[i]);
    return s * scale;
  }
};

LhsFunctional functional_for(const IdentityParams& p, const TestFunction& g,
                             const ConditionQuery& q) {
  switch (p.id) {
    case IdentityId::Yab08c:
      return {g_identity(), p.k - 1, p.k - 1, 1.0};
    case IdentityId::InvPower:
      return {g_neg_power(p.k + p.r), p.k - 1, p.k - 1, 1.0};
    case IdentityId::Lemma:
      return {g, 0, q.n - 2, 1.0};
    default:
      return {uses_fixed_identity_g(p.id) ? g_identity() : g, 0, q.n - 2, 1.0 / (q.n - 1)};
  }
}

double quadrature_lhs(const Distribution& d, const IdentityParams& p, const LhsFunctional& f,
                      const ConditionQuery& q) {
  if (p.id == IdentityId::Yab08c || p.id == IdentityId::InvPower)
    return conditional_expectation(d, f.g, f.first + 2, q);
  return lhs_by_quadrature(d, f.g, q) * (q.n - 1) * f.scale;
}

double rhs_for(const IdentityParams& p, const TestFunction& g) {
  switch (p.id) {
    case IdentityId::Thm1:
      return rhs_theorem1(g, p.u, p.v);
    case IdentityId::MeanX:
      check_ordered(p.u, p.v);
      return 0.5 * (p.u + p.v);
    case IdentityId::Thm2:
      return rhs_theorem2(g, p.n, p.u, p.v);
    case IdentityId::Cor2:
      check_ordered(p.u, p.v);
      return ((p.n + 2) * p.u + p.n * p.v) / (p.n + 2 + p.n);
    case IdentityId::Yab08c:
      return rhs_weighted_mean(p.k, p.r, p.u, p.v);
    case IdentityId::InvPower:
      return rhs_inverse_power(p.k, p.r, p.u, p.v);
    case IdentityId::NoteM:
      return rhs_note_m(p.n, p.m, p.u, p.v);
    case IdentityId::Lemma:
      return lemma_rhs(g, p.n, p.r, p.u, p.v);
  }
  return 0.0;
}

}  // namespace

double rhs_theorem1(const TestFunction& g, double u, double v) { return bar_g(g, u, v); }

double rhs_theorem2(const TestFunction& g, int n, double u, double v) {
  if (n < 2) fail(ErrorKind::Domain, "rhs_theorem2 needs n >= 2");
  const double avg = bar_g(g, u, v);
  return avg - (n * i_n(g, n, u, v) - avg) / (n - 1);
}

double rhs_weighted_mean(int k, int r, double u, double v) {
  if (k < 1 || r < 1) fail(ErrorKind::Domain, "weighted mean needs k >= 1 and r >= 1");
  check_ordered(u, v);
  return (r * u + k * v) / (k + r);
}

double rhs_inverse_power(int k, int r, double u, double v) {
  if (k < 1 || r < 1) fail(ErrorKind::Domain, "inverse power needs k >= 1 and r >= 1");
  if (!(u > 0.0)) fail(ErrorKind::Domain, "inverse power needs u > 0");
  check_ordered(u, v);
  return 1.0 / (std::pow(u, r) * std::pow(v, k));
}

double rhs_note_m(int n, int m, double u, double v) {
  if (n < 2 || m < 1) fail(ErrorKind::Domain, "note identity needs n >= 2 and m >= 1");
  check_ordered(u, v);
  return ((n + 2 * m - 2) * u + n * v) / (2 * n + 2 * m - 2);
}

std::string_view to_string(IdentityId id) noexcept {
  switch (id) {
    case IdentityId::Thm1: return "THM1";
    case IdentityId::Thm2: return "THM2";
    case IdentityId::Cor2: return "COR2";
    case IdentityId::MeanX: return "MEAN_X";
    case IdentityId::Yab08c: return "YAB08C";
    case IdentityId::InvPower: return "INV_POWER";
    case IdentityId::NoteM: return "NOTE_M";
    case IdentityId::Lemma: return "LEMMA";
  }
  return "?";
}

std::string_view to_string(Method m) noexcept {
  return m == Method::Quadrature ? "QUADRATURE" : "MONTE_CARLO";
}

const std::vector<IdentityId>& all_identities() {
  static const std::vector<IdentityId> ids = {
      IdentityId::Thm1,   IdentityId::Thm2,     IdentityId::Cor2,  IdentityId::MeanX,
      IdentityId::Yab08c, IdentityId::InvPower, IdentityId::NoteM, IdentityId::Lemma};
  return ids;
}

namespace {
std::string upper(std::string_view text) {
  std::string out(text);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}
}  // namespace

std::optional<IdentityId> parse_identity(std::string_view text) {
  const auto key = upper(text);
  for (auto id : all_identities())
    if (to_string(id) == key) return id;
  return std::nullopt;
}

std::optional<Method> parse_method(std::string_view text) {
  const auto key = upper(text);
  if (key == "QUADRATURE" || key == "QUAD") return Method::Quadrature;
  if (key == "MONTE_CARLO" || key == "MC") return Method::MonteCarlo;
  return std::nullopt;
}

ConditionQuery query_for(const IdentityParams& p) {
  ConditionQuery q;
  q.u = p.u;
  q.v = p.v;
  switch (p.id) {
    case IdentityId::Thm1:
    case IdentityId::MeanX:
      q.n = p.n;
      q.r = 1;
      break;
    case IdentityId::Thm2:
    case IdentityId::Cor2:
      q.n = p.n;
      q.r = 2;
      break;
    case IdentityId::Yab08c:
    case IdentityId::InvPower:
      if (p.k < 1) fail(ErrorKind::Domain, "k must be >= 1");
      q.n = p.k + 1;
      q.r = p.r;
      break;
    case IdentityId::NoteM:
      q.n = p.n;
      q.r = p.m;
      break;
    case IdentityId::Lemma:
      q.n = p.n;
      q.r = p.r;
      break;
  }
  q.validate();
  return q;
}

IdentityReport check_identity(const Distribution& d, const TestFunction& g,
                              const IdentityParams& params, const CheckOptions& options) {
  IdentityReport report;
  report.identity = params.id;
  report.params = params;
  report.method = options.method;
  report.query = query_for(params);
  report.necessary_only = params.id == IdentityId::NoteM && params.m >= 3;

  const auto functional = functional_for(params, g, report.query);
  report.rhs = rhs_for(params, g);

  if (options.method == Method::Quadrature) {
    report.lhs = quadrature_lhs(d, params, functional, report.query);
  } else {
    if (options.mc_budget < 100) fail(ErrorKind::Configuration, "Monte Carlo budget must be >= 100");
    if (!functional.g.admits(report.query.u))
      fail(ErrorKind::Domain, functional.g.name + " is not defined at u");
    Rng rng(options.seed, options.stream);
    RunningStats acc;
    for (std::uint64_t i = 0; i < options.mc_budget; ++i)
      acc.add(functional(sample_conditional_middle(d, report.query, rng).values()));
    report.lhs = acc.mean();
    report.mc_stderr = acc.standard_error();
  }

  report.abs_err = std::abs(report.lhs - report.rhs);
  report.rel_err = report.abs_err / std::max(std::abs(report.rhs), 1e-12);
  return report;
}

GridSpec default_grid(IdentityId id) {
  std::vector<double> us;
  if (id == IdentityId::InvPower) {
    us = logspace(0.1, 3.0, 10);
  } else {
    us.push_back(0.0);
    const auto rest = logspace(0.01, 3.0, 9);
    us.insert(us.end(), rest.begin(), rest.end());
  }
  const auto widths = logspace(0.05, 5.0, 10);
  GridSpec grid;
  for (double u : us)
    for (double w : widths) grid.points.emplace_back(u, u + w);
  return grid;
}

DeviationScan deviation_scan(const Distribution& d, const TestFunction& g,
                             const IdentityParams& params, const GridSpec& grid,
                             const CheckOptions& options) {
  DeviationScan scan;
  scan.grid = grid;
  scan.reports.resize(grid.points.size());
  parallel_for(grid.points.size(), [&](std::size_t i) {
    IdentityParams p = params;
    p.u = grid.points[i].first;
    p.v = grid.points[i].second;
    CheckOptions o = options;
    o.stream = options.stream + i;
    scan.reports[i] = check_identity(d, g, p, o);
  });
  for (const auto& r : scan.reports) {
    const double e = std::isnan(r.abs_err) ? INFINITY : r.abs_err;
    scan.sup_abs_err = std::max(scan.sup_abs_err, e);
  }
  return scan;
}

}  // namespace recexp
