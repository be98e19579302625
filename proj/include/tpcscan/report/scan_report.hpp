#pragma once

#include "tpcscan/common/date.hpp"
#include "tpcscan/extraction/types.hpp"
#include "tpcscan/matcher/types.hpp"
#include "tpcscan/report/license.hpp"
#include "tpcscan/report/severity.hpp"
#include "tpcscan/tpcdb/database.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tpcscan::report {

inline constexpr int kReportSchemaVersion = 1;

/// What the scanner knows about an image besides its bytes.
struct ImageMeta {
    std::string id;
    std::string name;
    std::string vendor;
    /// Device lineage for series analysis; empty when not part of one.
    std::string lineage;
    std::string firmware_version;
    std::optional<Date> release_date;

    bool operator==(const ImageMeta&) const = default;
};

struct Finding {
    std::string tpc;
    std::string version;
    tpcdb::CveRecord cve;
    Severity severity = Severity::low;
    /// Set when the image's release date is known.
    std::optional<bool> disclosed_before_release;
};

struct ScanReport {
    ImageMeta image;
    extraction::FirmwareInfo firmware_info;
    std::vector<matcher::MatchResult> matches;
    std::vector<Finding> findings;
    SeverityCounts severity_counts;
    std::vector<LicenseFlag> license_flags;
    std::vector<std::string> suggestions;
    std::vector<std::string> warnings;
    std::int64_t wall_time_ms = 0;
};

struct ReportOptions {
    Distribution distribution = Distribution::closed;
};

/// Findings come from the CVE versions check of every match with a concrete
/// version; "unknown" matches stay listed without findings. Findings are
/// ordered by (tpc, cve_id) and suggestions by TPC.
ScanReport build_report(const ImageMeta& image, const extraction::FirmwareInfo& info,
                        std::vector<matcher::MatchResult> matches, const tpcdb::TpcDatabase& db,
                        std::int64_t wall_time_ms = 0, const ReportOptions& options = {});

/// Newest version of a TPC in the database, if any.
std::optional<std::string> latest_version(const tpcdb::TpcDatabase& db, std::string_view tpc);

/// Fixed field set and ordering. `with_timing = false` drops wall_time_ms
/// so two runs can be compared byte for byte.
nlohmann::json to_json(const ScanReport& report, bool with_timing = true);
ScanReport report_from_json(const nlohmann::json& j);

/// Problems that break the report's invariants; empty when consistent.
std::vector<std::string> check_report(const ScanReport& report);

/// "TPCs: n, Vulns: m, time: t ms"
std::string summary_line(const ScanReport& report);
/// Multi-line plain-text rendering.
std::string render_text(const ScanReport& report);

nlohmann::json to_json(const ImageMeta& meta);
ImageMeta image_meta_from_json(const nlohmann::json& j);

} // namespace tpcscan::report
