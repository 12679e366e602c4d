#include "recexp/spec_parse.hpp"

#include <charconv>
#include <vector>

#include "recexp/error.hpp"

namespace recexp {
namespace {

[[noreturn]] void bad_spec(std::string_view text, std::string_view why) {
  fail(ErrorKind::ParameterDomain, "bad spec '" + std::string(text) + "': " + std::string(why));
}

double parse_number(std::string_view whole, std::string_view token) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) bad_spec(whole, "not a decimal number");
  return value;
}

int parse_int(std::string_view whole, std::string_view token) {
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) bad_spec(whole, "not an integer");
  return value;
}

std::vector<double> parse_list(std::string_view whole, std::string_view body) {
  std::vector<double> out;
  for (;;) {
    const auto comma = body.find(',');
    out.push_back(parse_number(whole, body.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

// "name(arg)" -> arg, or nullopt-like empty view with ok = false.
bool call_arg(std::string_view body, std::string_view name, std::string_view& arg) {
  if (body.size() < name.size() + 2 || body.substr(0, name.size()) != name) return false;
  if (body[name.size()] != '(' || body.back() != ')') return false;
  arg = body.substr(name.size() + 1, body.size() - name.size() - 2);
  return true;
}

}  // namespace

Distribution parse_distribution(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) bad_spec(text, "expected <family>:<params>");
  const auto family = text.substr(0, colon);
  const auto ps = parse_list(text, text.substr(colon + 1));

  auto need = [&](std::size_t count) {
    if (ps.size() != count) bad_spec(text, "wrong number of parameters");
  };
  if (family == "exp") {
    need(1);
    return make_exponential(ps[0]);
  }
  if (family == "weibull") {
    need(2);
    return make_weibull(ps[0], ps[1]);
  }
  if (family == "lfr") {
    need(2);
    return make_linear_failure_rate(ps[0], ps[1]);
  }
  if (family == "pareto") {
    need(2);
    return make_pareto(ps[0], ps[1]);
  }
  bad_spec(text, "unknown family");
}

TestFunction parse_test_function(std::string_view text) {
  auto body = text;
  if (body.substr(0, 2) == "g:") body.remove_prefix(2);
  if (body == "x") return g_identity();
  std::string_view arg;
  if (call_arg(body, "pow", arg)) return g_power(parse_int(text, arg));
  if (call_arg(body, "negpow", arg)) return g_neg_power(parse_int(text, arg));
  if (call_arg(body, "exp", arg)) return g_exp(parse_number(text, arg));
  bad_spec(text, "unknown test function");
}

std::string spec_string_help() {
  return "Distributions (support [0, inf)):\n"
         "  exp:<rate>              F(x) = 1 - exp(-rate x)\n"
         "  weibull:<shape>,<scale> H(x) = (x / scale)^shape\n"
         "  lfr:<a>,<b>             H(x) = a x + b x^2 / 2\n"
         "  pareto:<alpha>,<sigma>  H(x) = alpha ln(1 + x / sigma)\n"
         "Test functions g:\n"
         "  g:x  g:pow(<p>)  g:negpow(<p>)  g:exp(<a>)\n"
         "Identities:\n"
         "  THM1       mean of g(R_2..R_n) given R_1, R_{n+1} vs average of g\n"
         "  THM2       same given R_1, R_{n+2} vs gbar - (n I_n - gbar)/(n-1)\n"
         "  COR2       THM2 with g = x: ((n+2)u + n v)/(2n+2)\n"
         "  MEAN_X     THM1 with g = x: (u + v)/2\n"
         "  YAB08C     E[R_n | R_{n-k}=u, R_{n+r}=v] = (r u + k v)/(k + r)\n"
         "  INV_POWER  E[R_n^-(k+r) | R_{n-k}=u, R_{n+r}=v] = 1/(u^r v^k)\n"
         "  NOTE_M     mean of R_2..R_n given R_1, R_{n+m}; necessary only for m >= 3\n"
         "  LEMMA      sum of g(R_2..R_n) given R_1, R_{n+r} vs exponential closed form\n";
}

}  // namespace recexp
