#pragma once

#include <string>
#include <string_view>

#include "recexp/distribution.hpp"
#include "recexp/test_function.hpp"

namespace recexp {

/// "exp:<rate>", "weibull:<shape>,<scale>", "lfr:<a>,<b>", "pareto:<alpha>,<sigma>".
/// Throws ParameterDomain on malformed text or parameters.
Distribution parse_distribution(std::string_view text);

/// "g:x", "g:pow(<p>)", "g:negpow(<p>)", "g:exp(<a>)"; the "g:" prefix is
/// optional.
TestFunction parse_test_function(std::string_view text);

/// Help text listing every accepted spec string.
std::string spec_string_help();

}  // namespace recexp
