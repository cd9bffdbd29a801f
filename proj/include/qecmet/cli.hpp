// cli.hpp — command dispatch for the qecmet tool. Exposed as a function so the
// exit-code and output contracts are testable in-process.

#pragma once

namespace qecmet {

// Exit codes: 0 success (and: condition holds), 2 negative verdict
// (condition fails / bound not applicable), 1 usage or runtime error.
// stdout carries machine-readable data only; diagnostics go to stderr.
int run_cli(int argc, const char* const* argv);

}  // namespace qecmet
