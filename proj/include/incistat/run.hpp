#pragma once

#include <string>
#include <vector>

namespace incistat::cli {

// Exit codes distinguish the failure families.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitConvergence = 4;

/// Full command-line entry point (args exclude the program name). All output
/// files of a run are buffered and flushed together with the manifest, so a
/// failed run leaves no partial files.
int run(const std::vector<std::string>& args);

}  // namespace incistat::cli
