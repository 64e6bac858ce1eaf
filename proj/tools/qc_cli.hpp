#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcdense::cli {

// Exit codes: 0 = verified / computed, 1 = property violated (the report
// carries the counterexample), 2 = usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace qcdense::cli
