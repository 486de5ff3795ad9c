#pragma once

#include <string>

namespace roughkit {

struct RunResult {
  int exit_code = 0;        // 0 ok, 1 input error, 2 bound-audit failure
  std::string summary;      // one line for the terminal
  std::string error;        // set when exit_code != 0 for input errors
};

// Executes one command described by a JSON config. Writes the artifacts named
// in the config plus a <out>.config.json sidecar holding the full config, so
// any run can be replayed byte-identically. Never throws; failures land in
// the returned exit code and message.
RunResult run_config(const std::string& config_json);

// Convenience for replay: loads the sidecar and re-runs it.
RunResult replay(const std::string& config_file);

// Parallelism cap from ROUGHKIT_THREADS (>= 1, default 1).
int thread_cap();

}  // namespace roughkit
