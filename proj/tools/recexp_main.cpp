// recexp: command-line front end for the record-value exponentiality tools.
//
// Exit codes: 0 success, 1 acceptance failure, 2 usage error, 3 data or
// computation error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "recexp/acceptance.hpp"
#include "recexp/densities.hpp"
#include "recexp/error.hpp"
#include "recexp/goftest.hpp"
#include "recexp/identities.hpp"
#include "recexp/io.hpp"
#include "recexp/records.hpp"
#include "recexp/spec_parse.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace recexp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParameterDomain:
    case ErrorKind::Domain:
    case ErrorKind::Ordering:
    case ErrorKind::DegenerateInterval:
    case ErrorKind::Configuration:
      return kExitUsage;
    default:
      return kExitData;
  }
}

// Writes the payload to --out (plus a manifest sidecar) or to stdout.
void emit(const std::string& out_path, const std::string& payload, const json& manifest) {
  if (out_path.empty() || out_path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) fail(ErrorKind::Data, "cannot write " + out_path);
  file << payload;
  std::ofstream side(out_path + ".manifest.json", std::ios::binary);
  side << manifest.dump(2) << '\n';
}

struct SampleArgs {
  std::string dist = "exp:1";
  int m = 3;
  std::size_t reps = 1;
  std::uint64_t seed = 1;
  std::string method = "hazard";
  std::uint64_t budget = kDefaultDrawBudget;
  std::string out;
};

int run_sample(const SampleArgs& a) {
  const auto d = parse_distribution(a.dist);
  if (a.method != "naive" && a.method != "hazard") fail(ErrorKind::Configuration, "--method must be naive or hazard");
  if (a.m < 1) fail(ErrorKind::Domain, "--m must be >= 1");
  std::vector<RecordTuple> reps;
  reps.reserve(a.reps);
  for (std::size_t i = 0; i < a.reps; ++i)
    reps.push_back(a.method == "naive" ? sample_records_naive(d, a.m, a.seed, i, a.budget)
                                       : sample_records_hazard(d, a.m, a.seed, i));
  std::ostringstream csv;
  write_records_csv(csv, reps);
  const json config{{"dist", d.spec()}, {"m", a.m}, {"reps", a.reps}, {"method", a.method}, {"budget", a.budget}};
  emit(a.out, csv.str(), make_manifest("sample", config, a.seed));
  return kExitOk;
}

struct DensityArgs {
  std::string dist = "exp:1";
  int n = 2;
  int r = 1;
  std::optional<int> j;
  double u = 0.0;
  double v = 1.0;
  std::size_t points = 101;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::string out;
};

int run_density(const DensityArgs& a) {
  const auto d = parse_distribution(a.dist);
  const ConditionQuery q{a.n, a.r, a.u, a.v};
  q.validate();
  if (a.points < 2) fail(ErrorKind::Configuration, "--points must be >= 2");
  const double lo = a.t_min.value_or(a.u);
  const double hi = a.t_max.value_or(a.v);
  if (!(lo < hi)) fail(ErrorKind::Ordering, "need t-min < t-max");
  std::vector<double> ts(a.points), ds(a.points);
  for (std::size_t i = 0; i < a.points; ++i) {
    ts[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(a.points - 1);
    ds[i] = a.j ? conditional_density(d, {*a.j, q, ts[i]}) : aggregate_density(d, q, ts[i]);
  }
  std::ostringstream csv;
  write_density_csv(csv, ts, ds);
  json config{{"dist", d.spec()}, {"n", a.n}, {"r", a.r}, {"j", nullptr}, {"u", a.u}, {"v", a.v},
              {"points", a.points}, {"t_min", lo}, {"t_max", hi}};
  if (a.j) config["j"] = *a.j;
  emit(a.out, csv.str(), make_manifest("density", config, 0));
  return kExitOk;
}

struct CheckArgs {
  std::string dist = "exp:1";
  std::string g = "g:x";
  std::string identity = "THM1";
  IdentityParams params;
  std::string method = "quad";
  std::uint64_t mc_budget = 100'000;
  std::uint64_t seed = 1;
  std::string grid;
  std::string out;
};

GridSpec load_grid(const std::string& spec, IdentityId id) {
  if (spec == "default") return default_grid(id);
  std::ifstream in(spec);
  if (!in) fail(ErrorKind::Data, "cannot read grid file " + spec);
  GridSpec grid;
  const auto rows = read_csv_rows(in);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() < 2) fail(ErrorKind::Data, "grid rows need two columns u,v");
    if (i == 0 && rows[i][0] == "u") continue;
    grid.points.emplace_back(parse_double(rows[i][0]), parse_double(rows[i][1]));
  }
  if (grid.points.empty()) fail(ErrorKind::Data, "grid file holds no points");
  return grid;
}

int run_check(CheckArgs a, bool scan) {
  const auto d = parse_distribution(a.dist);
  const auto g = parse_test_function(a.g);
  const auto id = parse_identity(a.identity);
  if (!id) fail(ErrorKind::Configuration, "unknown identity '" + a.identity + "'");
  const auto method = parse_method(a.method);
  if (!method) fail(ErrorKind::Configuration, "--method must be quad or mc");
  a.params.id = *id;
  const CheckOptions options{.method = *method, .mc_budget = a.mc_budget, .seed = a.seed, .stream = 0};

  json config{{"dist", d.spec()},      {"g", "g:" + g.name}, {"identity", to_string(*id)}, {"n", a.params.n},
              {"r", a.params.r},       {"k", a.params.k},    {"m", a.params.m},             {"u", a.params.u},
              {"v", a.params.v},       {"method", to_string(*method)},                      {"mc_budget", a.mc_budget}};

  if (scan || !a.grid.empty()) {
    const auto grid = load_grid(a.grid.empty() ? "default" : a.grid, *id);
    config.erase("u");
    config.erase("v");
    config["grid"] = a.grid.empty() ? "default" : a.grid;
    const auto result = deviation_scan(d, g, a.params, grid, options);
    std::ostringstream csv;
    write_scan_csv(csv, result);
    emit(a.out, csv.str(), make_manifest(scan ? "scan" : "check", config, a.seed));
    std::cerr << "sup_abs_err " << format_double(result.sup_abs_err) << '\n';
    return kExitOk;
  }

  auto report = to_json(check_identity(d, g, a.params, options));
  json out{{"distribution", d.spec()}, {"g", "g:" + g.name}};
  out.update(report);
  emit(a.out, out.dump(2) + "\n", make_manifest("check", config, a.seed));
  return kExitOk;
}

struct GofArgs {
  std::string input;
  GofConfig cfg;
  std::string out;
};

int run_gof(const GofArgs& a) {
  a.cfg.validate();
  std::vector<double> data;
  if (a.input == "-") {
    data = read_values(std::cin);
  } else {
    std::ifstream in(a.input);
    if (!in) fail(ErrorKind::Data, "cannot read " + a.input);
    data = read_values(in);
  }
  const auto result = run_test(data, a.cfg);
  json out = to_json(result);
  out["config"] = to_json(a.cfg);
  json config = to_json(a.cfg);
  config["input"] = a.input;
  emit(a.out, out.dump(2) + "\n", make_manifest("gof", config, a.cfg.rng_seed));
  return kExitOk;
}

struct ReproduceArgs {
  std::uint64_t seed = AcceptanceOptions{}.seed;
  std::vector<std::string> alts;
  std::vector<int> criteria;
  std::string out_dir;
};

int run_reproduce(const ReproduceArgs& a) {
  AcceptanceOptions options;
  options.seed = a.seed;
  for (const auto& s : a.alts) options.extra_alternatives.push_back(parse_distribution(s));
  std::vector<int> which = a.criteria;
  if (which.empty())
    for (int c = 1; c <= kLibraryCriteria; ++c) which.push_back(c);

  std::vector<CriterionOutcome> outcomes;
  for (int c : which) {
    if (c < 1 || c > kLibraryCriteria) fail(ErrorKind::Configuration, "--criterion must be in 1.." + std::to_string(kLibraryCriteria));
    outcomes.push_back(run_criterion(c, options));
  }

  std::ostringstream table;
  print_table(table, outcomes);
  std::cout << table.str();

  if (!a.out_dir.empty()) {
    fs::create_directories(a.out_dir);
    std::ofstream(fs::path(a.out_dir) / "table.txt", std::ios::binary) << table.str();
    std::ofstream csv(fs::path(a.out_dir) / "acceptance.csv", std::ios::binary);
    write_rows_csv(csv, outcomes);
    json alts = json::array();
    for (const auto& d : options.extra_alternatives) alts.push_back(d.spec());
    const json config{{"alt", alts}, {"criteria", which}};
    std::ofstream(fs::path(a.out_dir) / "manifest.json", std::ios::binary)
        << make_manifest("reproduce", config, a.seed).dump(2) << '\n';
  }

  const bool ok = std::all_of(outcomes.begin(), outcomes.end(), [](const CriterionOutcome& c) { return c.pass(); });
  return ok ? kExitOk : kExitFailure;
}

std::string help_footer() {
  std::string text = "\nIdentity ids (--identity):";
  for (auto id : all_identities()) text += " " + std::string(to_string(id));
  return text + "\n\n" + spec_string_help() +
         "\nExit codes: 0 success, 1 acceptance failure, 2 usage error, 3 data or computation error.\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Record-value characterizations of the exponential law: sampling, conditional densities, "
               "identity checks and an exponentiality test."};
  app.footer(help_footer());
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  SampleArgs sample;
  auto* s = app.add_subcommand("sample", "Simulate record sequences; CSV rep,R1..Rm");
  s->add_option("--dist", sample.dist, "Distribution spec string")->capture_default_str();
  s->add_option("--m", sample.m, "Records per replicate")->capture_default_str();
  s->add_option("--reps", sample.reps, "Number of replicates")->capture_default_str();
  s->add_option("--seed", sample.seed, "RNG seed; replicate i uses stream i")->capture_default_str();
  s->add_option("--method", sample.method, "naive | hazard")->capture_default_str();
  s->add_option("--budget", sample.budget, "Draw budget per replicate (naive)")->capture_default_str();
  s->add_option("--out", sample.out, "Output file (default stdout)");

  DensityArgs density;
  auto* de = app.add_subcommand("density", "Conditional density of middle records given R_1=u, R_{n+r}=v; CSV t,density");
  de->add_option("--dist", density.dist, "Distribution spec string")->capture_default_str();
  de->add_option("--n", density.n)->capture_default_str();
  de->add_option("--r", density.r)->capture_default_str();
  de->add_option("--j", density.j, "Single record index 2..n+r-1 (default: sum over j = 2..n)");
  de->add_option("--u", density.u)->capture_default_str();
  de->add_option("--v", density.v)->capture_default_str();
  de->add_option("--points", density.points, "Evenly spaced t values")->capture_default_str();
  de->add_option("--t-min", density.t_min, "First t (default u)");
  de->add_option("--t-max", density.t_max, "Last t (default v)");
  de->add_option("--out", density.out, "Output file (default stdout)");

  CheckArgs check;
  auto add_check_options = [&](CLI::App* c) {
    c->add_option("--dist", check.dist, "Distribution spec string")->capture_default_str();
    c->add_option("--g", check.g, "Test function spec string")->capture_default_str();
    c->add_option("--identity", check.identity, "Identity id")->capture_default_str();
    c->add_option("--n", check.params.n)->capture_default_str();
    c->add_option("--r", check.params.r)->capture_default_str();
    c->add_option("--k", check.params.k)->capture_default_str();
    c->add_option("--m", check.params.m)->capture_default_str();
    c->add_option("--u", check.params.u)->capture_default_str();
    c->add_option("--v", check.params.v)->capture_default_str();
    c->add_option("--method", check.method, "quad | mc")->capture_default_str();
    c->add_option("--mc-budget", check.mc_budget, "Monte Carlo sample size")->capture_default_str();
    c->add_option("--seed", check.seed, "RNG seed")->capture_default_str();
    c->add_option("--out", check.out, "Output file (default stdout)");
  };
  auto* ch = app.add_subcommand("check", "Both sides of one identity; JSON, or CSV with --grid");
  add_check_options(ch);
  ch->add_option("--grid", check.grid, "'default' or a CSV file of u,v pairs; switches to a scan");
  auto* sc = app.add_subcommand("scan", "Deviation scan over a (u,v) grid; CSV");
  add_check_options(sc);
  sc->add_option("--grid", check.grid, "'default' or a CSV file of u,v pairs")->default_str("default");

  GofArgs gof;
  auto* go = app.add_subcommand("gof", "Exponentiality test from blocked record regression residuals; JSON");
  go->add_option("--input", gof.input, "CSV path, one value per line or first column ('-' for stdin)")->required();
  go->add_option("--n", gof.cfg.n)->capture_default_str();
  go->add_option("--m", gof.cfg.m, "Covariate spacing (1 or 2; larger needs --necessary-only)")->capture_default_str();
  go->add_option("--block-size", gof.cfg.block_size)->capture_default_str();
  go->add_option("--min-blocks", gof.cfg.min_blocks)->capture_default_str();
  go->add_option("--bootstrap", gof.cfg.bootstrap_reps, "Bootstrap replicates (>= 200)")->capture_default_str();
  go->add_option("--alpha", gof.cfg.alpha)->capture_default_str();
  go->add_option("--seed", gof.cfg.rng_seed)->capture_default_str();
  go->add_flag("--necessary-only", gof.cfg.allow_necessary_only, "Allow m >= 3 (necessary condition only)");
  go->add_option("--out", gof.out, "Output file (default stdout)");

  ReproduceArgs repro;
  auto* re = app.add_subcommand("reproduce", "Run the acceptance suite and print a pass/fail table");
  re->add_option("--seed", repro.seed, "RNG seed")->capture_default_str();
  re->add_option("--alt", repro.alts, "Extra alternative distribution (repeatable)");
  re->add_option("--criterion", repro.criteria, "Run only these criteria (repeatable, 1..8)");
  re->add_option("--out", repro.out_dir, "Directory for table.txt, acceptance.csv and manifest.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*s) return run_sample(sample);
    if (*de) return run_density(density);
    if (*ch) return run_check(check, false);
    if (*sc) return run_check(check, true);
    if (*go) return run_gof(gof);
    if (*re) return run_reproduce(repro);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
