#include "tpcscan/report/severity.hpp"

#include "tpcscan/tpcdb/types.hpp"

#include <cmath>
#include <string>

namespace tpcscan::report {

Severity severity_bucket(double cvss)
{
    if (!(cvss >= 0.0 && cvss <= 10.0)) throw OutOfRange("CVSS score outside [0,10]: " + std::to_string(cvss));
    if (cvss >= 9.0) return Severity::critical;
    if (cvss >= 7.0) return Severity::high;
    if (cvss >= 4.0) return Severity::medium;
    return Severity::low;
}

std::string_view to_string(Severity s)
{
    switch (s) {
    case Severity::critical: return "critical";
    case Severity::high: return "high";
    case Severity::medium: return "medium";
    case Severity::low: return "low";
    }
    return "low";
}

std::optional<Severity> severity_from_string(std::string_view s)
{
    for (auto v : {Severity::critical, Severity::high, Severity::medium, Severity::low}) {
        if (to_string(v) == s) return v;
    }
    return std::nullopt;
}

void SeverityCounts::add(Severity s)
{
    switch (s) {
    case Severity::critical: ++critical; break;
    case Severity::high: ++high; break;
    case Severity::medium: ++medium; break;
    case Severity::low: ++low; break;
    }
}

nlohmann::json to_json(const SeverityCounts& c)
{
    return {{"critical", c.critical}, {"high", c.high}, {"medium", c.medium}, {"low", c.low}};
}

SeverityCounts severity_counts_from_json(const nlohmann::json& j)
{
    SeverityCounts c;
    try {
        c.critical = j.at("critical").get<int>();
        c.high = j.at("high").get<int>();
        c.medium = j.at("medium").get<int>();
        c.low = j.at("low").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw tpcdb::SchemaError(std::string("severity_counts: ") + e.what());
    }
    return c;
}

} // namespace tpcscan::report
