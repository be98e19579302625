#pragma once

#include "tpcscan/tpcdb/cve.hpp"
#include "tpcscan/tpcdb/types.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tpcscan::tpcdb {

inline constexpr int kSchemaVersion = 1;

struct CveQuery {
    std::vector<CveRecord> records;
    std::vector<std::string> warnings;
};

/// Immutable once loaded; safe for concurrent readers.
class TpcDatabase {
public:
    std::vector<TpcRecord> tpcs;
    std::vector<CveRecord> cves;

    /// Lookup by normalized name.
    const TpcRecord* find(std::string_view name) const;
    /// Replaces a record with the same normalized name, keeping name order.
    void upsert(TpcRecord record);
    /// Adds records, replacing any with the same (cve_id, product).
    void add_cves(std::vector<CveRecord> records);

    /// Records whose product matches the TPC and whose ranges hold the
    /// version, sorted by cve_id. Unknown TPCs and unknown versions give an
    /// empty result and a warning.
    CveQuery query_cves(std::string_view tpc, std::string_view version) const;
};

nlohmann::json tpc_to_json(const TpcRecord& record);
/// Throws SchemaError on a shape error.
TpcRecord tpc_from_json(const nlohmann::json& j);

// On disk: <dir>/index.json, <dir>/tpcs/<name>.json, <dir>/cves.json.
void save_database(const TpcDatabase& db, const std::filesystem::path& dir);
/// Throws SchemaError on a missing index, a schema version mismatch or a
/// malformed file.
TpcDatabase load_database(const std::filesystem::path& dir);

struct BuildOptions {
    std::size_t min_string_len = 4;
};

/// Builds a record from a source tree laid out as
///   <dir>/tpc.json   {"name", "license", "cpe_product",
///                     "versions": {"<v>": {"release_date": "YYYY-MM-DD"}}}
///   <dir>/<v>/src/   C/C++ sources
///   <dir>/<v>/bin/   riscv32 ELF builds and/or *.acfg.json documents
/// Every version named in tpc.json must have a directory.
TpcRecord build_tpc_record(const std::filesystem::path& dir, const BuildOptions& options = {});

/// One version from a single path: a directory (walked recursively), a
/// source file, an *.acfg.json document or a riscv32 ELF file. Sources give
/// strings and functions, the rest ACFGs. Sharing and unique sets are left
/// for put_version.
VersionSignature version_from_path(const std::filesystem::path& path, const std::string& version,
                                   const BuildOptions& options = {});

/// Adds or replaces a version and re-derives the record's sharing and
/// unique sets. A replacement without a release date keeps the old one.
void put_version(TpcRecord& record, VersionSignature version);

} // namespace tpcscan::tpcdb
