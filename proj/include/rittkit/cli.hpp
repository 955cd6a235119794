#pragma once

#include <string>
#include <vector>

namespace rittkit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitExtension = 4;

struct Outcome {
    int exit_code = kExitOk;
    /// The output document (JSON, two-space indent, trailing newline).
    std::string document;
};

/// Runs one subcommand; `args` excludes the program name. `--job FILE` reads the subcommand
/// and its options from a JSON document instead.
Outcome run_command(const std::vector<std::string>& args);

const std::vector<std::string>& subcommands();

}  // namespace rittkit::cli
