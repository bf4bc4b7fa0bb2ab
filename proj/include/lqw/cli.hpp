#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lqw {

// Full CLI entry point (also used in-process by the tests).
// Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 bound undefined (c <= 0 detected).
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace lqw
