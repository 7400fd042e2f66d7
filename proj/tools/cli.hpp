#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bosongap::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kComputation = 2, kIo = 3 };

// Runs one invocation. args excludes the program name; args[0] is usually
// the subcommand. Table output goes to `out` unless --out names a file.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Helpers shared with the tests.
std::vector<double> parse_grid(const std::string& spec);
std::vector<int> parse_int_list(const std::string& spec);

// Turns a JSON config object into flag tokens ("--key", "value").
std::vector<std::string> config_tokens(const std::string& json_text);

}  // namespace bosongap::cli
