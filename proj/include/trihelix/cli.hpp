#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trihelix::cli {

// Runs one trihelix invocation. Exit codes: 0 success, 1 usage error, 2 data
// error, 3 numeric degeneracy.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trihelix::cli
