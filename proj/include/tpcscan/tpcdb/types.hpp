#pragma once

#include "tpcscan/binfeat/acfg.hpp"
#include "tpcscan/common/bytes.hpp"
#include "tpcscan/common/date.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tpcscan::tpcdb {

/// A document that cannot be read against its schema at all.
class SchemaError : public Error {
public:
    using Error::Error;
};

struct VersionSignature {
    std::string version;
    std::optional<Date> release_date;
    std::set<std::string> strings;
    /// "name(paramtypes)"
    std::set<std::string> functions;
    /// Record-wide intersections, copied into every version.
    std::set<std::string> sharing_strings;
    std::set<std::string> sharing_functions;
    std::set<std::string> unique_strings;
    std::set<std::string> unique_functions;
    std::vector<binfeat::Acfg> acfgs;
};

struct TpcRecord {
    std::string name;
    /// SPDX-style expression, or "unknown".
    std::string license = "unknown";
    std::optional<std::string> cpe_product;
    std::vector<VersionSignature> versions;

    const VersionSignature* find_version(std::string_view v) const;
    /// Lower-cased product name used to match CVE records.
    std::string product() const;
};

struct VersionRange {
    std::optional<std::string> start;
    std::optional<std::string> end;
    bool start_inclusive = true;
    bool end_inclusive = true;
    /// Non-empty for an exact-version list; bounds are then unset.
    std::vector<std::string> exact;

    bool contains(std::string_view version) const;
    bool operator==(const VersionRange&) const = default;
};

struct CveRecord {
    std::string cve_id;
    std::string product;
    std::vector<VersionRange> ranges;
    double cvss = 0.0;
    Date published{};
    std::string description;

    bool affects(std::string_view version) const;
};

/// Lower-case, trimmed, with spaces and '-' folded to '_'.
std::string normalize_product(std::string_view name);

} // namespace tpcscan::tpcdb
