#pragma once

#include <string>
#include <vector>

namespace lap {

// Entry point behind the `lap` binary; also callable in-process for tests.
// args excludes the program name.  Exit codes: 0 success / checks passed,
// 1 computation or identity-check failure (including unwritable outputs),
// 2 usage error (unknown flag, malformed set, config/checkpoint mismatch).
int run(const std::vector<std::string>& args);

}  // namespace lap
