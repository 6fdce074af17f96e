#pragma once

// Command-line front end. Exit codes: 0 all checks passed, 1 a verification
// failed, 2 degenerate input or sampling failure, 3 I/O error.

#include <ostream>

namespace torvol::cli {

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace torvol::cli
