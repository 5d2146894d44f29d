#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace rectsurf {

/// Runs one CLI invocation; returns the process exit code (0 ok, 2 usage or
/// validation error, 3 numerical non-convergence).
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rectsurf
