#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace headway::cli {

/// Entry point shared by the binary and the tests.
///
/// args excludes the program name. Returns the process exit status:
/// 0 success, 1 runtime/data error (message on `err`), 2 usage error
/// (usage text on `err`).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

} // namespace headway::cli
