#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "ksmap/pencil_file.hpp"

namespace ksmap {

inline constexpr const char* kToolVersion = "0.1.0";

/// Command-line overrides; unset fields fall back to the pencil file, then to defaults.
struct RunOptions {
    std::optional<double> tol;
    std::optional<int> truncation;
    std::optional<int> degree_bound;
    std::optional<int> samples;
    unsigned seed = 0;
    std::string stage;  // restricts `analyze` to one stage
};

struct RunResult {
    nlohmann::ordered_json report;
    int exit_code = 0;
};

enum ExitCode { kExitOk = 0, kExitInput = 2, kExitNumeric = 3, kExitInvariant = 4 };

/// Runs a command on pencil file text. Never throws: every error is encoded
/// in the report and the exit code.
RunResult run_text(const std::string& command, const std::string& text, const RunOptions& opts,
                   const std::string& source_name = "<input>");
RunResult run_file(const std::string& command, const std::string& path, const RunOptions& opts);

bool is_command(const std::string& command);

}  // namespace ksmap
