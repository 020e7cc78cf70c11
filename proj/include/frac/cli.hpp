#pragma once

#include <iosfwd>

namespace frac {

// fraclab <command> [--config PATH] [--seed INT] [--out DIR] [--deterministic]
//
// Commands: propagate, norm, verify, decay-fit, kernel-norm, nse-solve,
// potential-solve. Each writes report.json and report.csv to --out.
//
// Exit codes: 0 success, 2 usage error or violated hypothesis (including a
// malformed config or unknown command), 1 anything else.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frac
