#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plexdist::cli {

/// Runs one command line (without the program name). Returns the exit status.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace plexdist::cli
