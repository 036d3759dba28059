#pragma once

#include <iosfwd>

namespace pealab {

/// The pealab command line. Reports go to out as JSON, diagnostics to err.
/// Returns 0 when every check passes, 1 when one fails, 2 on usage or
/// validation errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pealab
