#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace elicit {

/// Runs one `elicit` invocation; `args` excludes the program name.
/// Exit codes: 0 success or pass, 2 certified negative answer (certificate
/// JSON on `out`), 1 usage or input error (message on `err`).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace elicit
