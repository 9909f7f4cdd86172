#pragma once

// Batch front-end: one command applied to one JSON document, producing one
// canonical JSON report (sorted keys, 2-space indent, trailing newline).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace monotor::cli {

inline constexpr const char* kSchemaVersion = "monotor/1";

struct RunOptions {
  std::optional<std::pair<long, long>> window;  // applied to every coordinate
  std::optional<unsigned> box;
  std::uint64_t seed = 0;
};

const std::vector<std::string>& command_names();

/// Parses `input` (UTF-8 JSON), runs `command` and renders the report.
/// Throws SchemaError for malformed input or unknown commands and
/// DomainError for mathematically invalid input.
std::string run(const std::string& command, const std::string& input, const RunOptions& options);

/// Full command-line entry point; returns the process exit code
/// (0 ok, 2 domain error, 3 schema or usage error, 1 internal error).
int main_entry(int argc, char** argv);

}  // namespace monotor::cli
