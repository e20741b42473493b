#pragma once

#include <ostream>

namespace ajsf::cli {

/// Runs one `ajsf` subcommand. Results go to `out`, diagnostics to `err`.
/// Returns 0 on success, 1 on domain, budget or numerical errors (reported
/// as one JSON object on `err`) and 2 on usage errors.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ajsf::cli
