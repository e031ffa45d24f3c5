#pragma once

#include <ostream>

namespace qcomb::cli {

/// Runs the command line tool. Returns 0 on success, 1 when a structure fails
/// its check or a library error is raised, and 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcomb::cli
