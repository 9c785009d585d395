#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace amoeba::cli {

/// Runs one command line (without the program name). Reports go to files
/// under --out and to `out`; diagnostics go to `err`. Returns 0 on success,
/// 1 on usage or input errors, 2 on computational failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amoeba::cli
