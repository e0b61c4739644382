// Command-line front end. Exposed as a function so the test suite can
// drive subcommands in-process. Exit codes: 0 success, 2 input/parse
// problem, 3 complete separation, 4 non-convergence.

#pragma once

namespace geolog {

int run_cli(int argc, const char* const* argv);

}  // namespace geolog
