#pragma once

#include "tpcscan/binfeat/features.hpp"
#include "tpcscan/cli/config.hpp"
#include "tpcscan/extraction/unpack.hpp"
#include "tpcscan/matcher/acfg_match.hpp"
#include "tpcscan/report/scan_report.hpp"
#include "tpcscan/tpcdb/database.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tpcscan::cli {

/// Features of every ELF object in the unpacked image, function ids
/// prefixed by the object path. A monolithic image without ELF objects is
/// read as a flat riscv32 blob loaded at 0.
binfeat::BinaryFeatures image_features(const extraction::FirmwareImage& image, const extraction::UnpackResult& unpacked,
                                       const binfeat::FeatureConfig& config = {});

Bytes read_bytes(const std::filesystem::path& path);

struct ImageJob {
    std::filesystem::path path;
    report::ImageMeta meta;
};

struct ImageOutcome {
    report::ImageMeta meta;
    std::filesystem::path path;
    std::optional<report::ScanReport> report;
    /// Set when the image could not be scanned.
    std::string error;
};

/// Unpack, feature extraction, both matching channels, union and report.
/// Holds the database-side ACFG state, so one Scanner serves a whole batch.
class Scanner {
public:
    Scanner(const tpcdb::TpcDatabase& db, const Config& config);

    binfeat::BinaryFeatures features(const extraction::FirmwareImage& image,
                                     extraction::FirmwareInfo* info = nullptr,
                                     std::vector<std::string>* warnings = nullptr) const;
    std::vector<matcher::MatchResult> match(const binfeat::BinaryFeatures& features,
                                            std::vector<std::string>* warnings = nullptr) const;
    report::ScanReport scan(const extraction::FirmwareImage& image, const report::ImageMeta& meta) const;

    /// Scans `jobs` on up to `parallelism` threads. A failing image gets an
    /// error entry; the rest of the batch carries on. Output order follows
    /// the input.
    std::vector<ImageOutcome> scan_batch(const std::vector<ImageJob>& jobs, unsigned parallelism) const;

    const tpcdb::TpcDatabase& database() const { return db_; }

private:
    const tpcdb::TpcDatabase& db_;
    Config config_;
    matcher::CfgMatcher cfg_;
};

} // namespace tpcscan::cli
