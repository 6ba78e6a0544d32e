#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace solitonlab {

/// Runs one subcommand. `args` excludes the program name, e.g.
/// {"evolve", "--config", "run.cfg", "--set", "dt=0.001"}.
///
/// Exit status: 0 success, 1 analysis or I/O failure, 2 configuration error
/// (message names the key), 3 physics precondition (message names the
/// inequality), 4 numerical abort (message names the step).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace solitonlab
