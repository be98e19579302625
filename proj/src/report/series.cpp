#include "tpcscan/report/series.hpp"

#include "tpcscan/tpcdb/version.hpp"

#include <map>
#include <set>
#include <sstream>

namespace tpcscan::report {

std::string UnchangedRun::describe() const
{
    return tpc + " " + version + " unchanged across " + std::to_string(updates) + " update" +
           (updates == 1 ? "" : "s");
}

std::string SeriesCell::count_text() const
{
    return std::to_string(cves) + " (" + std::to_string(disclosed_before_release) + ")";
}

namespace {

std::string label(const ScanReport& r)
{
    return r.image.firmware_version.empty() ? r.image.id : r.image.firmware_version;
}

// tpc -> version for one image; "unknown" kept as reported
std::map<std::string, std::string> versions_of(const ScanReport& r)
{
    std::map<std::string, std::string> out;
    for (const auto& m : r.matches) out[m.tpc] = m.version;
    return out;
}

bool same_version(const std::string& a, const std::string& b)
{
    if (a == kAbsent || b == kAbsent) return a == b;
    if (tpcdb::is_unknown_version(a) || tpcdb::is_unknown_version(b)) return a == b;
    return tpcdb::versions_equivalent(a, b);
}

} // namespace

SeriesReport series_analysis(const std::vector<ScanReport>& reports)
{
    if (reports.size() < 2) throw InsufficientSeries("series analysis needs at least two reports");
    SeriesReport s;
    s.lineage = reports.front().image.lineage;
    for (const auto& r : reports) {
        if (r.image.lineage != s.lineage) {
            throw MixedLineage("reports belong to lineages '" + s.lineage + "' and '" + r.image.lineage + "'");
        }
        s.images.push_back(label(r));
    }

    std::vector<std::map<std::string, std::string>> per_image;
    std::set<std::string> tpcs;
    for (const auto& r : reports) {
        per_image.push_back(versions_of(r));
        for (const auto& [t, v] : per_image.back()) tpcs.insert(t);
    }
    auto version_at = [&](std::size_t i, const std::string& tpc) {
        const auto it = per_image[i].find(tpc);
        return it == per_image[i].end() ? std::string(kAbsent) : it->second;
    };

    for (std::size_t i = 1; i < reports.size(); ++i) {
        bool any_change = false;
        for (const auto& tpc : tpcs) {
            TpcTransition t{tpc, s.images[i - 1], s.images[i], version_at(i - 1, tpc), version_at(i, tpc), false};
            if (t.from_version == kAbsent && t.to_version == kAbsent) continue;
            t.changed = !same_version(t.from_version, t.to_version);
            any_change = any_change || t.changed;
            s.transitions.push_back(std::move(t));
        }
        ++s.updates;
        if (any_change) ++s.updates_changing_tpcs;
    }

    for (const auto& tpc : tpcs) {
        std::size_t start = 0;
        for (std::size_t i = 1; i <= reports.size(); ++i) {
            const bool boundary = i == reports.size() || !same_version(version_at(i, tpc), version_at(start, tpc));
            if (!boundary) continue;
            const auto v = version_at(start, tpc);
            if (i - start >= 2 && v != kAbsent) {
                s.unchanged.push_back({tpc, v, s.images[start], s.images[i - 1], static_cast<int>(i - start - 1)});
            }
            start = i;
        }
    }

    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        std::map<std::string, SeriesCell> cells;
        for (const auto& m : r.matches) cells[m.tpc] = {r.image.id, r.image.firmware_version, m.tpc, m.version, 0, 0};
        for (const auto& f : r.findings) {
            auto& c = cells[f.tpc];
            if (c.tpc.empty()) c = {r.image.id, r.image.firmware_version, f.tpc, f.version, 0, 0};
            ++c.cves;
            ++s.total_findings;
            bool before = false;
            if (f.disclosed_before_release) {
                before = *f.disclosed_before_release;
            } else if (r.image.release_date) {
                before = f.cve.published < *r.image.release_date;
            }
            if (before) {
                ++c.disclosed_before_release;
                ++s.disclosed_before_release;
            }
        }
        for (auto& [t, c] : cells) s.cells.push_back(std::move(c));
    }
    return s;
}

nlohmann::json to_json(const SeriesReport& s)
{
    nlohmann::json transitions = nlohmann::json::array();
    for (const auto& t : s.transitions) {
        transitions.push_back({{"tpc", t.tpc},
                               {"from_image", t.from_image},
                               {"to_image", t.to_image},
                               {"from_version", t.from_version},
                               {"to_version", t.to_version},
                               {"changed", t.changed}});
    }
    nlohmann::json unchanged = nlohmann::json::array();
    for (const auto& u : s.unchanged) {
        unchanged.push_back({{"tpc", u.tpc},
                             {"version", u.version},
                             {"first_image", u.first_image},
                             {"last_image", u.last_image},
                             {"updates", u.updates},
                             {"text", u.describe()}});
    }
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : s.cells) {
        cells.push_back({{"image", c.image},
                         {"firmware_version", c.firmware_version},
                         {"tpc", c.tpc},
                         {"version", c.version},
                         {"cves", c.cves},
                         {"disclosed_before_release", c.disclosed_before_release},
                         {"text", c.count_text()}});
    }
    return {{"lineage", s.lineage},
            {"images", s.images},
            {"updates", s.updates},
            {"updates_changing_tpcs", s.updates_changing_tpcs},
            {"transitions", transitions},
            {"unchanged", unchanged},
            {"cells", cells},
            {"total_findings", s.total_findings},
            {"disclosed_before_release", s.disclosed_before_release}};
}

std::string render_text(const SeriesReport& s)
{
    std::ostringstream out;
    out << "lineage " << (s.lineage.empty() ? "-" : s.lineage) << ": " << s.images.size() << " images, " << s.updates
        << " updates, " << s.updates_changing_tpcs << " changed TPCs\n";
    for (const auto& c : s.cells) {
        out << "  " << (c.firmware_version.empty() ? c.image : c.firmware_version) << "  " << c.tpc << " " << c.version
            << "  " << c.count_text() << "\n";
    }
    for (const auto& u : s.unchanged) out << "  " << u.describe() << "\n";
    out << "  CVEs disclosed before release: " << s.disclosed_before_release << " of " << s.total_findings << "\n";
    return out.str();
}

} // namespace tpcscan::report
