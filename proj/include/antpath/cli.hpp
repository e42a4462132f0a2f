#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace antpath::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,   // bad flags, validation failures, malformed input files
  kNoPath = 2,  // unreachable goal or timeout
  kIo = 3,
};

// Entry point for the `planner` tool: gen-maps, solve, bench, export-pheromone.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace antpath::cli
