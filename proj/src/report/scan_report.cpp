#include "tpcscan/report/scan_report.hpp"

#include "tpcscan/extraction/unpack.hpp"
#include "tpcscan/tpcdb/version.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tpcscan::report {

std::optional<std::string> latest_version(const tpcdb::TpcDatabase& db, std::string_view tpc)
{
    const auto* rec = db.find(tpc);
    if (!rec || rec->versions.empty()) return std::nullopt;
    const auto it = std::max_element(rec->versions.begin(), rec->versions.end(), [](const auto& a, const auto& b) {
        return tpcdb::compare_versions(a.version, b.version) < 0;
    });
    return it->version;
}

ScanReport build_report(const ImageMeta& image, const extraction::FirmwareInfo& info,
                        std::vector<matcher::MatchResult> matches, const tpcdb::TpcDatabase& db,
                        std::int64_t wall_time_ms, const ReportOptions& options)
{
    ScanReport r;
    r.image = image;
    r.firmware_info = info;
    r.wall_time_ms = wall_time_ms;
    std::stable_sort(matches.begin(), matches.end(),
                     [](const auto& a, const auto& b) { return a.tpc < b.tpc; });
    r.matches = std::move(matches);

    for (const auto& m : r.matches) {
        if (!m.version_known()) {
            r.warnings.push_back(m.tpc + ": version unknown; CVE check skipped");
            continue;
        }
        auto q = db.query_cves(m.tpc, m.version);
        for (auto& w : q.warnings) r.warnings.push_back(std::move(w));
        for (auto& cve : q.records) {
            Finding f;
            f.tpc = m.tpc;
            f.version = m.version;
            f.severity = severity_bucket(cve.cvss);
            if (image.release_date) f.disclosed_before_release = cve.published < *image.release_date;
            f.cve = std::move(cve);
            r.findings.push_back(std::move(f));
        }
    }
    std::stable_sort(r.findings.begin(), r.findings.end(), [](const Finding& a, const Finding& b) {
        if (a.tpc != b.tpc) return a.tpc < b.tpc;
        return a.cve.cve_id < b.cve.cve_id;
    });
    for (const auto& f : r.findings) r.severity_counts.add(f.severity);

    std::map<std::string, std::pair<std::string, int>> vulnerable;
    for (const auto& f : r.findings) {
        auto& entry = vulnerable[f.tpc];
        entry.first = f.version;
        ++entry.second;
    }
    for (const auto& [tpc, entry] : vulnerable) {
        const auto& [version, count] = entry;
        const auto latest = latest_version(db, tpc);
        if (latest && tpcdb::compare_versions(*latest, version) > 0) {
            r.suggestions.push_back("upgrade " + tpc + " " + version + " → " + *latest);
        } else {
            r.suggestions.push_back(tpc + " " + version + " is the newest version in the database; patch " +
                                    std::to_string(count) + " known CVE" + (count == 1 ? "" : "s"));
        }
    }

    auto lic = license_check(r.matches, db, options.distribution);
    r.license_flags = std::move(lic.flags);
    for (auto& w : lic.warnings) r.warnings.push_back(std::move(w));
    return r;
}

nlohmann::json to_json(const ImageMeta& meta)
{
    return {{"id", meta.id},
            {"name", meta.name},
            {"vendor", meta.vendor},
            {"lineage", meta.lineage},
            {"firmware_version", meta.firmware_version},
            {"release_date", meta.release_date ? nlohmann::json(format_date(*meta.release_date)) : nlohmann::json()}};
}

ImageMeta image_meta_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw tpcdb::SchemaError("image must be an object");
    ImageMeta m;
    m.id = j.value("id", "");
    m.name = j.value("name", "");
    m.vendor = j.value("vendor", "");
    m.lineage = j.value("lineage", "");
    m.firmware_version = j.value("firmware_version", "");
    if (auto it = j.find("release_date"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw tpcdb::SchemaError("release_date must be a string");
        m.release_date = parse_date(it->get<std::string>());
        if (!m.release_date) throw tpcdb::SchemaError("release_date is not an ISO-8601 date");
    }
    return m;
}

nlohmann::json to_json(const ScanReport& report, bool with_timing)
{
    nlohmann::json matches = nlohmann::json::array();
    for (const auto& m : report.matches) matches.push_back(matcher::to_json(m));
    nlohmann::json findings = nlohmann::json::array();
    for (const auto& f : report.findings) {
        findings.push_back({{"tpc", f.tpc},
                            {"version", f.version},
                            {"severity", to_string(f.severity)},
                            {"cve", tpcdb::cve_to_json(f.cve)},
                            {"disclosed_before_release", f.disclosed_before_release
                                                             ? nlohmann::json(*f.disclosed_before_release)
                                                             : nlohmann::json()}});
    }
    nlohmann::json flags = nlohmann::json::array();
    for (const auto& fl : report.license_flags) flags.push_back({{"tpc", fl.tpc}, {"license", fl.license}});
    nlohmann::json j = {{"schema_version", kReportSchemaVersion},
                        {"image", to_json(report.image)},
                        {"firmware", extraction::to_json(report.firmware_info)},
                        {"matches", matches},
                        {"findings", findings},
                        {"severity_counts", to_json(report.severity_counts)},
                        {"license_flags", flags},
                        {"suggestions", report.suggestions},
                        {"warnings", report.warnings}};
    if (with_timing) j["wall_time_ms"] = report.wall_time_ms;
    return j;
}

ScanReport report_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw tpcdb::SchemaError("report must be an object");
    if (j.value("schema_version", 0) != kReportSchemaVersion) throw tpcdb::SchemaError("unsupported report schema_version");
    ScanReport r;
    try {
        r.image = image_meta_from_json(j.at("image"));
        r.firmware_info = extraction::firmware_info_from_json(j.at("firmware"));
        for (const auto& m : j.at("matches")) r.matches.push_back(matcher::match_from_json(m));
        for (const auto& fj : j.at("findings")) {
            Finding f;
            f.tpc = fj.at("tpc").get<std::string>();
            f.version = fj.at("version").get<std::string>();
            f.cve = tpcdb::cve_from_json(fj.at("cve"));
            const auto sev = severity_from_string(fj.at("severity").get<std::string>());
            if (!sev) throw tpcdb::SchemaError("unknown severity");
            f.severity = *sev;
            if (auto it = fj.find("disclosed_before_release"); it != fj.end() && !it->is_null()) {
                f.disclosed_before_release = it->get<bool>();
            }
            r.findings.push_back(std::move(f));
        }
        r.severity_counts = severity_counts_from_json(j.at("severity_counts"));
        for (const auto& fl : j.at("license_flags")) {
            r.license_flags.push_back({fl.at("tpc").get<std::string>(), fl.at("license").get<std::string>()});
        }
        r.suggestions = j.at("suggestions").get<std::vector<std::string>>();
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        r.wall_time_ms = j.value("wall_time_ms", std::int64_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw tpcdb::SchemaError(std::string("report: ") + e.what());
    }
    return r;
}

std::vector<std::string> check_report(const ScanReport& report)
{
    std::vector<std::string> problems;
    SeverityCounts recount;
    std::set<std::pair<std::string, std::string>> matched;
    std::set<std::string> matched_tpcs;
    for (const auto& m : report.matches) {
        matched.insert({m.tpc, m.version});
        matched_tpcs.insert(m.tpc);
    }
    for (const auto& f : report.findings) {
        try {
            if (severity_bucket(f.cve.cvss) != f.severity) {
                problems.push_back(f.cve.cve_id + ": severity does not match cvss");
            }
        } catch (const OutOfRange&) {
            problems.push_back(f.cve.cve_id + ": cvss out of range");
        }
        recount.add(f.severity);
        if (!matched.count({f.tpc, f.version})) {
            problems.push_back(f.cve.cve_id + ": finding for " + f.tpc + " " + f.version + " has no match");
        }
    }
    if (recount != report.severity_counts) problems.push_back("severity_counts do not reconcile with findings");
    for (const auto& fl : report.license_flags) {
        if (!matched_tpcs.count(fl.tpc)) problems.push_back("license flag for unmatched TPC " + fl.tpc);
    }
    return problems;
}

std::string summary_line(const ScanReport& report)
{
    return "TPCs: " + std::to_string(report.matches.size()) + ", Vulns: " + std::to_string(report.findings.size()) +
           ", time: " + std::to_string(report.wall_time_ms) + " ms";
}

std::string render_text(const ScanReport& report)
{
    std::ostringstream out;
    out << report.image.id;
    if (!report.image.name.empty() && report.image.name != report.image.id) out << " (" << report.image.name << ")";
    out << ": " << summary_line(report) << "\n";
    out << "  os " << extraction::to_string(report.firmware_info.os_class) << ", arch "
        << to_string(report.firmware_info.arch) << ", filesystem "
        << extraction::to_string(report.firmware_info.filesystem) << "\n";
    for (const auto& m : report.matches) {
        out << "  tpc " << m.tpc << " " << m.version << " [" << matcher::to_string(m.channel) << ", score " << m.score
            << "]\n";
    }
    const auto& c = report.severity_counts;
    out << "  severity: critical " << c.critical << ", high " << c.high << ", medium " << c.medium << ", low " << c.low
        << "\n";
    for (const auto& f : report.findings) {
        out << "  " << f.cve.cve_id << " " << f.tpc << " " << f.version << " " << to_string(f.severity) << " ("
            << f.cve.cvss << ")\n";
    }
    for (const auto& fl : report.license_flags) out << "  license: " << fl.tpc << " is " << fl.license << "\n";
    for (const auto& s : report.suggestions) out << "  suggest: " << s << "\n";
    for (const auto& w : report.warnings) out << "  warning: " << w << "\n";
    return out.str();
}

} // namespace tpcscan::report
