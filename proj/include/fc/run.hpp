#pragma once

#include <iosfwd>

#include "fc/config.hpp"

namespace fc {

struct RunOutcome {
  SolveReport report;
  bool converged = false;
};

// Solves every step and writes the outputs named in c.output. Nonconvergence
// is logged with its step index and returns converged = false; other solver
// errors propagate.
RunOutcome run_config(const RunConfig& c, std::ostream& log);

}  // namespace fc
