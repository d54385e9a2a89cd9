#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pretopo::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2; // bad arguments, config or parse errors
inline constexpr int exit_data = 3;   // well-formed input that cannot be processed

// Entry point of the `pretopo` tool. args[0] is the program name.
// Subcommands: generate, cluster, eval, render, ingest.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pretopo::cli
