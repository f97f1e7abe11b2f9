#pragma once

#include <string>
#include <vector>

namespace lbx {

// Batch front end; every verb delegates to one library operation.
// Exit codes: 0 pass/success, 1 verified failure (failure witness, check
// failure, infeasible lift), 2 usage or parse errors.
int run_cli(const std::vector<std::string>& args);

} // namespace lbx
