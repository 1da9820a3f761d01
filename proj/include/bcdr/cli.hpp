#pragma once

namespace bcdr {

// Entry point of the command-line tool; argv follows main() conventions.
// Returns 0 on success, 1 on I/O or processing failures, 2 on bad flags.
int run_cli(int argc, const char* const* argv);

}  // namespace bcdr
