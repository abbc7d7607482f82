#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lya/bundle.hpp"
#include "lya/json_io.hpp"

namespace lya::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kCapExceeded = 3 };

/// Names accepted by `lya examples`.
const std::vector<std::string>& example_names();
/// Fixture JSON for a bundled example; UnknownExample otherwise.
json_io::json example_json(const std::string& name);
/// The two-chart circle bundle with 3dim fibres.
BundleSpec circle_bundle();

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// (or --out), one-line summaries and usage errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lya::cli
