#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace srgeo::cli {

/// Runs the srgeo command line on the given arguments (without argv[0]).
/// Returns the process exit code: 0 success, 1 usage error, 2 computation
/// error. All output goes to the supplied streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace srgeo::cli
