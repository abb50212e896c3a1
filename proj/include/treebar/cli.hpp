#pragma once

#include <ostream>

namespace treebar::cli {

/// Entry point of the `treebar` executable. Returns 0 iff every executed
/// check passed, 1 when a check failed and 2 on usage or input errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Worker count for suite fan-out: TREEBAR_WORKERS if set, else hardware concurrency.
unsigned worker_count();

}  // namespace treebar::cli
