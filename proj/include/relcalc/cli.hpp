#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relcalc {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kModelFormatVersion = "1";

// Runs one `relcalc` invocation. Exit codes: 0 = true/consistent/derivable,
// 1 = false/inconsistent/not derivable, 2 = input or usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Variable names in "natural" order: X2 before X10.
bool natural_less(const std::string& a, const std::string& b);

} // namespace relcalc
