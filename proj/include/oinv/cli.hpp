#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oinv {

// Executes one CLI invocation. Returns 0 on success or a passing check, 1 on
// a mathematical failure (failed certificate, rejected rewrite, rank
// deficit), 2 on a usage error. Identical arguments and streams produce
// byte-identical output.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace oinv
