#pragma once

#include "tpcscan/report/scan_report.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace tpcscan::report {

class InsufficientSeries : public Error {
public:
    using Error::Error;
};

/// Reports from more than one lineage passed to one analysis.
class MixedLineage : public Error {
public:
    using Error::Error;
};

inline constexpr const char* kAbsent = "absent";

/// One TPC between two consecutive images. A TPC missing from an image
/// shows as version "absent".
struct TpcTransition {
    std::string tpc;
    std::string from_image;
    std::string to_image;
    std::string from_version;
    std::string to_version;
    bool changed = false;
};

/// Maximal run of consecutive images that keep one TPC version.
struct UnchangedRun {
    std::string tpc;
    std::string version;
    std::string first_image;
    std::string last_image;
    int updates = 0;

    /// "<tpc> <version> unchanged across <n> update(s)"
    std::string describe() const;
};

/// One (image, TPC) cell: CVE count and how many of them were published
/// before the image's release, shown as "n (m)".
struct SeriesCell {
    std::string image;
    std::string firmware_version;
    std::string tpc;
    std::string version;
    int cves = 0;
    int disclosed_before_release = 0;

    std::string count_text() const;
};

struct SeriesReport {
    std::string lineage;
    std::vector<std::string> images;
    std::vector<TpcTransition> transitions;
    std::vector<UnchangedRun> unchanged;
    std::vector<SeriesCell> cells;
    int updates = 0;
    int updates_changing_tpcs = 0;
    int total_findings = 0;
    int disclosed_before_release = 0;
};

/// `reports` ordered by firmware release date and sharing one lineage id.
/// Throws InsufficientSeries for fewer than two reports and MixedLineage
/// when the lineage ids differ.
SeriesReport series_analysis(const std::vector<ScanReport>& reports);

nlohmann::json to_json(const SeriesReport& s);
std::string render_text(const SeriesReport& s);

} // namespace tpcscan::report
