#pragma once

#include <iosfwd>

namespace qsg {

// Runs the kernel and axiom invariant suites, printing one line per check.
// Returns true when every check passes.
bool run_selftest(std::ostream& out);

}  // namespace qsg
