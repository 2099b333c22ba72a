#pragma once

// JSON model documents:
//
//   {
//     "variables": [{"name": "X1", "domain": ["0", "1"]}, ...],
//     "contexts":  ["u", ...],
//     "equations": {
//       "X1": {"rules": [{"when": {"X2": "1", "_ctx": "u"}, "then": "0"}],
//              "default": "1"},
//       ...
//     }
//   }
//
// Unknown keys are rejected. Every variable needs an equation.

#include "relcalc/scm.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace relcalc {

CausalModel parse_model(std::string_view json_text, std::size_t max_variables = kDefaultMaxVariables);
CausalModel read_model(const std::filesystem::path& path, std::size_t max_variables = kDefaultMaxVariables);
// Pretty-printed, keys in a fixed order, trailing newline.
std::string write_model(const CausalModel& m);

} // namespace relcalc
