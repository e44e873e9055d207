#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace detkit {

// Command-line overrides; unset fields fall back to the problem file and
// then to the documented defaults.
struct CliOptions {
    std::optional<std::uint32_t> cap;
    std::optional<std::uint32_t> order;
    std::optional<std::pair<std::uint32_t, std::uint32_t>> box;
};

struct RunResult {
    std::string json;    // full report envelope
    std::string summary; // short human-readable account
    int exit_code = 0;   // 0 ok, 1 mathematical failure, 2 usage, 3 caps
};

// Dispatch one command.  `input` is the problem file text, except for
// `verify` where it is a previously emitted JSON certificate.  Never throws;
// failures are encoded in the envelope and the exit code.
RunResult run(const std::string& command, const std::string& input,
              const CliOptions& opts = {});

const std::vector<std::string>& command_names();

} // namespace detkit
