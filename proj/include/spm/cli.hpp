#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spm {

// Subcommands: compare, match, oracle, gen, bench. Exit codes: 0 match or
// success, 1 no match, 2 usage or input error. All stdout output is
// deterministic for a given seed and inputs; wall-clock timing goes to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spm
