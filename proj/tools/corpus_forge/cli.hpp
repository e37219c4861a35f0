#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cforge::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 2,
    exit_config = 3,      // bad config, missing or rejected credentials
    exit_generation = 4,  // transport/protocol failures, nothing generated
    exit_insufficient = 5,
    exit_data = 6,        // unreadable, malformed, empty or leaking corpora
    exit_internal = 70,
};

// args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace cforge::cli
