// Copyright 2026 The tornadowatch Authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0

#ifndef TORNADO_CLI_HPP
#define TORNADO_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tornado::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `tornadowatch` invocation. `args` excludes the program name.
/// Alerts, tables and summaries go to `out`, diagnostics to `err`; `in` feeds
/// the monitor when no snapshot paths are given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// `key = value` lines; `#` starts a comment; blank lines are ignored.
/// Underscores in keys are read as dashes. Throws SyntaxError.
ConfigEntries parse_config(std::string_view text);

/// Appends `--key value` for every config key that is not already given on
/// the command line, so flags win over the file. `args[0]` is the
/// subcommand.
std::vector<std::string> apply_config(const std::vector<std::string>& args, const ConfigEntries& config);

} // namespace tornado::cli

#endif // TORNADO_CLI_HPP
