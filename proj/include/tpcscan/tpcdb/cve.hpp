#pragma once

#include "tpcscan/tpcdb/types.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace tpcscan::tpcdb {

// Flat CVE ingest schema: a JSON list (or {"cves": [...]}) of
//   {"cve_id": "CVE-2014-0160", "product": "openssl",
//    "ranges": [{"start_incl": "1.0.1", "end_incl": "1.0.1f"},
//               {"versions": ["1.0.2-beta1"]}],
//    "cvss": 7.5, "published": "2014-04-07", "description": "..."}
// A range takes at most one of start_incl/start_excl and one of
// end_incl/end_excl, or a non-empty "versions" list.

struct CveReject {
    std::size_t index = 0;
    std::string cve_id;
    std::string reason;
};

struct CveImport {
    std::vector<CveRecord> records;
    std::vector<CveReject> rejects;
};

bool valid_cve_id(std::string_view id);

/// Validates every entry; bad entries land in `rejects`. Throws SchemaError
/// when the document is not a list of objects.
CveImport import_cve_feed(const nlohmann::json& doc);
/// Parses text first; unparseable JSON is a SchemaError.
CveImport import_cve_feed_text(std::string_view text);

/// Throws SchemaError with the reason on any violation.
CveRecord cve_from_json(const nlohmann::json& entry);
nlohmann::json cve_to_json(const CveRecord& record);
nlohmann::json range_to_json(const VersionRange& range);

/// Converts an NVD JSON 1.1 feed ("CVE_Items") or an NVD API 2.0 response
/// ("vulnerabilities") into the flat schema. One flat entry per CVE and
/// vulnerable application product; explicit CPE versions become an exact
/// list, versionStart*/versionEnd* attributes become bounded ranges.
nlohmann::json nvd_to_flat(const nlohmann::json& nvd);

} // namespace tpcscan::tpcdb
