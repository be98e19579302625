#pragma once

#include "tpcscan/common/bytes.hpp"
#include "tpcscan/matcher/types.hpp"
#include "tpcscan/report/license.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>

namespace tpcscan::cli {

class ConfigError : public Error {
public:
    using Error::Error;
};

/// A file or directory that cannot be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

inline constexpr const char* kDbEnv = "TPCSCAN_DB";

// Config file (JSON, every key optional):
//   {"thresholds": {"alpha": 0.74, "beta": 0.52, "gamma": 0.64},
//    "min_string_len": 4, "embed_iterations": 3, "recursion_depth": 3,
//    "db_dir": "tpcdb", "output_dir": "reports", "fail_on_findings": false,
//    "jobs": 0, "distribution": "closed"}
// Relative paths in a file resolve against the file's directory.
struct Config {
    matcher::Thresholds thresholds;
    std::size_t min_string_len = 4;
    int embed_iterations = 3;
    int recursion_depth = 3;
    std::filesystem::path db_dir = "tpcdb";
    std::filesystem::path output_dir = "reports";
    bool fail_on_findings = false;
    /// Images scanned in parallel; 0 means one per hardware thread.
    unsigned jobs = 0;
    report::Distribution distribution = report::Distribution::closed;

    /// Throws ConfigError when a field is out of range.
    void validate() const;
    unsigned effective_jobs() const;
};

/// Overlays the keys present in `j` onto `base`. Unknown keys and wrong
/// types are ConfigErrors.
Config apply_config_json(Config base, const nlohmann::json& j, const std::filesystem::path& relative_to = {});
Config load_config_file(const std::filesystem::path& file, Config base = {});
nlohmann::json to_json(const Config& config);

} // namespace tpcscan::cli
