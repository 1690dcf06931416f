#pragma once

#include <string>
#include <vector>

namespace daqgo {

// Full command-line surface of the daqgo tool.  args excludes the program
// name.  Returns 0 on success, 2 for usage errors, 1 for runtime failures.
int cli_dispatch(std::vector<std::string> args);

}  // namespace daqgo
