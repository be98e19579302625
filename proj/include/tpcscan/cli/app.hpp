#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace tpcscan::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
/// Some images in a batch could not be scanned.
inline constexpr int kExitPartial = 1;
/// Findings present and fail_on_findings set.
inline constexpr int kExitFindings = 2;
inline constexpr int kExitUsage = 64;
/// Malformed input document, database or config.
inline constexpr int kExitData = 65;
inline constexpr int kExitInternal = 70;
inline constexpr int kExitIo = 74;

using Environment = std::map<std::string, std::string>;

/// Runs one command line (without the program name). `env` replaces the
/// process environment when given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment* env = nullptr);

} // namespace tpcscan::cli
