#pragma once

#include <string>
#include <utility>
#include <vector>

#include "photoncount/config.hpp"

namespace pcs {

// Everything a command produced: a JSON summary, named CSV payloads,
// and the exit status the harness should report (0 ok, 2 config,
// 3 numerical, 4 statistical).
struct ResultBundle {
  std::string summary_json;
  std::vector<std::pair<std::string, std::string>> files;
  int status = 0;
};

// command is one of: tables, evolve, trajectories, g2, derive-check.
ResultBundle run_command(const std::string& command, const SimConfig& cfg);

const char* version_string();

}  // namespace pcs
