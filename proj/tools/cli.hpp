#pragma once

#include <iosfwd>

namespace srr::cli {

/// Entry point of the `srr` tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace srr::cli
