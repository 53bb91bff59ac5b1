#pragma once

#include <json.hpp>

#include <string>

namespace rankshift::cli {

/// Result of executing one resolved configuration.
struct Outcome {
  int exit_code = 0;
  /// Main artifact: JSON document or CSV text.
  std::string body;
  /// For CSV output written to a file: a JSON document with the config and summary.
  std::string sidecar;
  /// Domain error: the body is an error document and no artifact is written.
  bool error = false;
};

/// Runs a resolved RunConfig (as embedded in every JSON result under "config").
/// Domain errors are reported in the body with exit code 1.
Outcome execute(const nlohmann::json& config);

/// Full command-line entry point. Returns the process exit code.
int run(int argc, char** argv);

} // namespace rankshift::cli
