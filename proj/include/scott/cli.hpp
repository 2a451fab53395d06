#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace scott::cli {

// exit status: 0 success, 1 domain verdict (distinct / inequivalent /
// invalid code), 2 usage or input error
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace scott::cli
