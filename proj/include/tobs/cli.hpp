#pragma once

#include <json.hpp>

#include <string>

namespace tobs {

inline constexpr const char* kArtifactVersion = "1.0.0";

// Configuration rejected before execution (exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fill defaults and check the document against the shipped schema
// (configs/schema.json); returns the normalized config.
nlohmann::json validate_config(const nlohmann::json& config);

// Execute a validated config: writes the data file and its manifest
// (<output path>.manifest.json).  Returns 0, or 3 when a numerical invariant
// fails while running.
int run_config(const nlohmann::json& config);

// Full command-line entry: subcommand + flags -> config -> run.
// Exit codes: 0 success, 2 config/usage error, 3 invariant failure.
int run_cli(int argc, char** argv);

}  // namespace tobs
