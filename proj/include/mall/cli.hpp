#pragma once

#include <iosfwd>

namespace mall {

// Exit codes: 0 true/success, 1 false/refuted, 2 error, 3 unknown.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mall
