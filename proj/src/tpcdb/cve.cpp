#include "tpcscan/tpcdb/cve.hpp"

#include "tpcscan/tpcdb/version.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <sstream>

namespace tpcscan::tpcdb {

std::string normalize_product(std::string_view name)
{
    std::string out;
    for (char c : name) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isspace(u) || c == '-') {
            if (!out.empty() && out.back() != '_') out.push_back('_');
        } else {
            out.push_back(static_cast<char>(std::tolower(u)));
        }
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

namespace {

// Bounds compare on components only, so "1.0.1f" and "1_0_1f" are the same point.
std::strong_ordering component_order(std::string_view a, std::string_view b)
{
    return versions_equivalent(a, b) ? std::strong_ordering::equal : compare_versions(a, b);
}

} // namespace

bool VersionRange::contains(std::string_view version) const
{
    if (!exact.empty()) {
        return std::any_of(exact.begin(), exact.end(), [&](const std::string& v) { return versions_equivalent(v, version); });
    }
    if (start) {
        const auto c = component_order(version, *start);
        if (c < 0 || (c == 0 && !start_inclusive)) return false;
    }
    if (end) {
        const auto c = component_order(version, *end);
        if (c > 0 || (c == 0 && !end_inclusive)) return false;
    }
    return start || end;
}

bool CveRecord::affects(std::string_view version) const
{
    return std::any_of(ranges.begin(), ranges.end(), [&](const VersionRange& r) { return r.contains(version); });
}

bool valid_cve_id(std::string_view id)
{
    static const std::regex pattern("CVE-[0-9]{4}-[0-9]{4,}");
    return std::regex_match(id.begin(), id.end(), pattern);
}

namespace {

std::optional<std::string> opt_string(const nlohmann::json& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_string() || it->get<std::string>().empty()) {
        throw SchemaError(std::string(key) + " must be a non-empty string");
    }
    return it->get<std::string>();
}

VersionRange range_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw SchemaError("range must be an object");
    VersionRange r;
    if (auto it = j.find("versions"); it != j.end()) {
        if (!it->is_array() || it->empty()) throw SchemaError("versions must be a non-empty list");
        for (const auto& v : *it) {
            if (!v.is_string() || v.get<std::string>().empty()) throw SchemaError("versions entries must be strings");
            r.exact.push_back(v.get<std::string>());
        }
        if (j.contains("start_incl") || j.contains("start_excl") || j.contains("end_incl") || j.contains("end_excl")) {
            throw SchemaError("range mixes versions with bounds");
        }
        return r;
    }
    const auto si = opt_string(j, "start_incl");
    const auto se = opt_string(j, "start_excl");
    const auto ei = opt_string(j, "end_incl");
    const auto ee = opt_string(j, "end_excl");
    if (si && se) throw SchemaError("range has both start_incl and start_excl");
    if (ei && ee) throw SchemaError("range has both end_incl and end_excl");
    r.start = si ? si : se;
    r.start_inclusive = !se;
    r.end = ei ? ei : ee;
    r.end_inclusive = !ee;
    if (!r.start && !r.end) throw SchemaError("range has no bound");
    if (r.start && r.end && compare_versions(*r.start, *r.end) > 0) throw SchemaError("range start is after its end");
    return r;
}

} // namespace

CveRecord cve_from_json(const nlohmann::json& e)
{
    if (!e.is_object()) throw SchemaError("entry must be an object");
    CveRecord r;
    if (!e.contains("cve_id") || !e["cve_id"].is_string()) throw SchemaError("missing cve_id");
    r.cve_id = e["cve_id"].get<std::string>();
    if (!valid_cve_id(r.cve_id)) throw SchemaError("malformed cve_id");
    if (!e.contains("product") || !e["product"].is_string()) throw SchemaError("missing product");
    r.product = normalize_product(e["product"].get<std::string>());
    if (r.product.empty()) throw SchemaError("empty product");
    if (!e.contains("cvss") || !e["cvss"].is_number()) throw SchemaError("missing cvss");
    r.cvss = e["cvss"].get<double>();
    if (!(r.cvss >= 0.0 && r.cvss <= 10.0)) throw SchemaError("cvss outside [0,10]");
    if (!e.contains("published") || !e["published"].is_string()) throw SchemaError("missing published date");
    const auto date = parse_date(e["published"].get<std::string>());
    if (!date) throw SchemaError("published is not an ISO-8601 date");
    r.published = *date;
    if (auto it = e.find("description"); it != e.end()) {
        if (!it->is_string()) throw SchemaError("description must be a string");
        r.description = it->get<std::string>();
    }
    if (!e.contains("ranges") || !e["ranges"].is_array() || e["ranges"].empty()) {
        throw SchemaError("ranges must be a non-empty list");
    }
    for (const auto& rj : e["ranges"]) r.ranges.push_back(range_from_json(rj));
    return r;
}

nlohmann::json range_to_json(const VersionRange& r)
{
    nlohmann::json j = nlohmann::json::object();
    if (!r.exact.empty()) {
        j["versions"] = r.exact;
        return j;
    }
    if (r.start) j[r.start_inclusive ? "start_incl" : "start_excl"] = *r.start;
    if (r.end) j[r.end_inclusive ? "end_incl" : "end_excl"] = *r.end;
    return j;
}

nlohmann::json cve_to_json(const CveRecord& r)
{
    nlohmann::json ranges = nlohmann::json::array();
    for (const auto& range : r.ranges) ranges.push_back(range_to_json(range));
    return {{"cve_id", r.cve_id},
            {"product", r.product},
            {"ranges", ranges},
            {"cvss", r.cvss},
            {"published", format_date(r.published)},
            {"description", r.description}};
}

CveImport import_cve_feed(const nlohmann::json& doc)
{
    const nlohmann::json* list = &doc;
    if (doc.is_object() && doc.contains("cves")) list = &doc["cves"];
    if (!list->is_array()) throw SchemaError("CVE feed must be a JSON list");
    CveImport out;
    for (std::size_t i = 0; i < list->size(); ++i) {
        const auto& e = (*list)[i];
        try {
            out.records.push_back(cve_from_json(e));
        } catch (const SchemaError& err) {
            std::string id;
            if (e.is_object() && e.contains("cve_id") && e["cve_id"].is_string()) id = e["cve_id"].get<std::string>();
            out.rejects.push_back({i, id, err.what()});
        }
    }
    return out;
}

CveImport import_cve_feed_text(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("CVE feed is not JSON: ") + e.what());
    }
    return import_cve_feed(doc);
}

namespace {

struct ProductRanges {
    std::vector<std::string> exact;
    std::vector<VersionRange> ranges;
};

std::vector<std::string> split_cpe(const std::string& uri)
{
    std::vector<std::string> out;
    std::string cur;
    for (std::size_t i = 0; i < uri.size(); ++i) {
        if (uri[i] == '\\' && i + 1 < uri.size()) {
            cur.push_back(uri[++i]);
        } else if (uri[i] == ':') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(uri[i]);
        }
    }
    out.push_back(cur);
    return out;
}

void collect_matches(const nlohmann::json& node, std::map<std::string, ProductRanges>& products)
{
    for (const char* key : {"cpe_match", "cpeMatch"}) {
        if (!node.contains(key)) continue;
        for (const auto& m : node[key]) {
            if (!m.value("vulnerable", false)) continue;
            const std::string uri = m.contains("cpe23Uri") ? m["cpe23Uri"].get<std::string>() : m.value("criteria", "");
            const auto parts = split_cpe(uri);
            if (parts.size() < 6 || parts[2] != "a") continue;
            auto& pr = products[normalize_product(parts[4])];
            const std::string& version = parts[5];
            const bool bounded = m.contains("versionStartIncluding") || m.contains("versionStartExcluding") ||
                                 m.contains("versionEndIncluding") || m.contains("versionEndExcluding");
            if (bounded) {
                VersionRange r;
                if (m.contains("versionStartIncluding")) r.start = m["versionStartIncluding"].get<std::string>();
                if (m.contains("versionStartExcluding")) {
                    r.start = m["versionStartExcluding"].get<std::string>();
                    r.start_inclusive = false;
                }
                if (m.contains("versionEndIncluding")) r.end = m["versionEndIncluding"].get<std::string>();
                if (m.contains("versionEndExcluding")) {
                    r.end = m["versionEndExcluding"].get<std::string>();
                    r.end_inclusive = false;
                }
                pr.ranges.push_back(r);
            } else if (version == "*" || version.empty()) {
                VersionRange all;
                all.start = "0"; // every numbered release
                pr.ranges.push_back(all);
            } else if (version != "-") {
                std::string v = version;
                if (parts.size() > 6 && parts[6] != "*" && parts[6] != "-" && !parts[6].empty()) {
                    v += "-" + parts[6]; // update field, e.g. "beta1"
                }
                pr.exact.push_back(v);
            }
        }
    }
    for (const char* key : {"children", "nodes"}) {
        if (!node.contains(key)) continue;
        for (const auto& child : node[key]) collect_matches(child, products);
    }
}

std::string english(const nlohmann::json& list)
{
    for (const auto& d : list) {
        if (d.value("lang", "en") == "en") return d.value("value", "");
    }
    return list.empty() ? "" : list[0].value("value", "");
}

nlohmann::json flat_entries(const std::string& id, const std::string& description, double cvss,
                            const std::string& published, const std::map<std::string, ProductRanges>& products)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [product, pr] : products) {
        nlohmann::json ranges = nlohmann::json::array();
        for (const auto& r : pr.ranges) ranges.push_back(range_to_json(r));
        if (!pr.exact.empty()) {
            auto exact = pr.exact;
            std::sort(exact.begin(), exact.end(), VersionLess{});
            exact.erase(std::unique(exact.begin(), exact.end()), exact.end());
            ranges.push_back({{"versions", exact}});
        }
        if (ranges.empty()) continue;
        out.push_back({{"cve_id", id},
                       {"product", product},
                       {"ranges", ranges},
                       {"cvss", cvss},
                       {"published", published.substr(0, 10)},
                       {"description", description}});
    }
    return out;
}

} // namespace

nlohmann::json nvd_to_flat(const nlohmann::json& nvd)
{
    nlohmann::json out = nlohmann::json::array();
    if (nvd.contains("CVE_Items")) {
        for (const auto& item : nvd["CVE_Items"]) {
            const auto& cve = item.at("cve");
            const std::string id = cve.at("CVE_data_meta").at("ID").get<std::string>();
            const std::string description = english(cve.value("description", nlohmann::json::object())
                                                        .value("description_data", nlohmann::json::array()));
            double cvss = 0.0;
            const auto& impact = item.value("impact", nlohmann::json::object());
            if (impact.contains("baseMetricV3")) {
                cvss = impact["baseMetricV3"]["cvssV3"]["baseScore"].get<double>();
            } else if (impact.contains("baseMetricV2")) {
                cvss = impact["baseMetricV2"]["cvssV2"]["baseScore"].get<double>();
            }
            std::map<std::string, ProductRanges> products;
            if (item.contains("configurations")) collect_matches(item["configurations"], products);
            for (auto& e : flat_entries(id, description, cvss, item.value("publishedDate", ""), products)) {
                out.push_back(std::move(e));
            }
        }
        return out;
    }
    if (nvd.contains("vulnerabilities")) {
        for (const auto& v : nvd["vulnerabilities"]) {
            const auto& cve = v.at("cve");
            const std::string id = cve.at("id").get<std::string>();
            const std::string description = english(cve.value("descriptions", nlohmann::json::array()));
            double cvss = 0.0;
            const auto& metrics = cve.value("metrics", nlohmann::json::object());
            for (const char* key : {"cvssMetricV31", "cvssMetricV30", "cvssMetricV2"}) {
                if (metrics.contains(key) && !metrics[key].empty()) {
                    cvss = metrics[key][0]["cvssData"]["baseScore"].get<double>();
                    break;
                }
            }
            std::map<std::string, ProductRanges> products;
            for (const auto& config : cve.value("configurations", nlohmann::json::array())) {
                collect_matches(config, products);
            }
            for (auto& e : flat_entries(id, description, cvss, cve.value("published", ""), products)) {
                out.push_back(std::move(e));
            }
        }
        return out;
    }
    throw SchemaError("not an NVD feed: expected CVE_Items or vulnerabilities");
}

} // namespace tpcscan::tpcdb
