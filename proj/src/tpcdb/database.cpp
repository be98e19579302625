#include "tpcscan/tpcdb/database.hpp"

#include "tpcscan/binfeat/acfg_json.hpp"
#include "tpcscan/binfeat/elf.hpp"
#include "tpcscan/binfeat/features.hpp"
#include "tpcscan/tpcdb/signatures.hpp"
#include "tpcscan/tpcdb/source_lexer.hpp"
#include "tpcscan/tpcdb/version.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

namespace tpcscan::tpcdb {

namespace fs = std::filesystem;

const VersionSignature* TpcRecord::find_version(std::string_view v) const
{
    for (const auto& sig : versions) {
        if (sig.version == v) return &sig;
    }
    return nullptr;
}

std::string TpcRecord::product() const
{
    return normalize_product(cpe_product.value_or(name));
}

const TpcRecord* TpcDatabase::find(std::string_view name) const
{
    const std::string key = normalize_product(name);
    for (const auto& t : tpcs) {
        if (normalize_product(t.name) == key) return &t;
    }
    return nullptr;
}

void TpcDatabase::upsert(TpcRecord record)
{
    const std::string key = normalize_product(record.name);
    auto it = std::find_if(tpcs.begin(), tpcs.end(), [&](const TpcRecord& t) { return normalize_product(t.name) == key; });
    if (it != tpcs.end()) {
        *it = std::move(record);
    } else {
        tpcs.push_back(std::move(record));
    }
    std::sort(tpcs.begin(), tpcs.end(), [](const TpcRecord& a, const TpcRecord& b) { return a.name < b.name; });
}

void TpcDatabase::add_cves(std::vector<CveRecord> records)
{
    for (auto& r : records) {
        auto it = std::find_if(cves.begin(), cves.end(), [&](const CveRecord& c) {
            return c.cve_id == r.cve_id && c.product == r.product;
        });
        if (it != cves.end()) {
            *it = std::move(r);
        } else {
            cves.push_back(std::move(r));
        }
    }
    std::sort(cves.begin(), cves.end(), [](const CveRecord& a, const CveRecord& b) {
        return std::tie(a.cve_id, a.product) < std::tie(b.cve_id, b.product);
    });
}

CveQuery TpcDatabase::query_cves(std::string_view tpc, std::string_view version) const
{
    CveQuery out;
    const TpcRecord* record = find(tpc);
    if (!record) {
        out.warnings.push_back("unknown TPC: " + std::string(tpc));
        return out;
    }
    if (is_unknown_version(version)) {
        out.warnings.push_back("version of " + record->name + " is unknown; no CVE lookup");
        return out;
    }
    const std::string product = record->product();
    for (const auto& c : cves) {
        if (c.product == product && c.affects(version)) out.records.push_back(c);
    }
    std::sort(out.records.begin(), out.records.end(),
              [](const CveRecord& a, const CveRecord& b) { return a.cve_id < b.cve_id; });
    return out;
}

namespace {

nlohmann::json set_json(const std::set<std::string>& s) { return nlohmann::json(std::vector<std::string>(s.begin(), s.end())); }

std::set<std::string> json_set(const nlohmann::json& j, const char* key)
{
    std::set<std::string> out;
    if (!j.contains(key)) return out;
    if (!j[key].is_array()) throw SchemaError(std::string(key) + " must be a list");
    for (const auto& v : j[key]) {
        if (!v.is_string()) throw SchemaError(std::string(key) + " entries must be strings");
        out.insert(v.get<std::string>());
    }
    return out;
}

nlohmann::json read_json_file(const fs::path& p)
{
    std::ifstream f(p);
    if (!f) throw SchemaError("cannot open " + p.string());
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(p.string() + ": " + e.what());
    }
}

void write_json_file(const fs::path& p, const nlohmann::json& j)
{
    fs::create_directories(p.parent_path());
    std::ofstream f(p);
    f << j.dump(1) << '\n';
    if (!f) throw Error("cannot write " + p.string());
}

std::string file_stem_for(const std::string& name)
{
    std::string out = normalize_product(name);
    for (char& c : out) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) c = '_';
    }
    return out;
}

} // namespace

nlohmann::json tpc_to_json(const TpcRecord& r)
{
    nlohmann::json versions = nlohmann::json::array();
    for (const auto& v : r.versions) {
        nlohmann::json acfgs = nlohmann::json::array();
        for (const auto& a : v.acfgs) acfgs.push_back(binfeat::acfg_to_json(a));
        versions.push_back({{"version", v.version},
                            {"release_date", v.release_date ? nlohmann::json(format_date(*v.release_date)) : nlohmann::json()},
                            {"strings", set_json(v.strings)},
                            {"functions", set_json(v.functions)},
                            {"unique_strings", set_json(v.unique_strings)},
                            {"unique_functions", set_json(v.unique_functions)},
                            {"acfgs", acfgs}});
    }
    const VersionSignature* first = r.versions.empty() ? nullptr : &r.versions.front();
    return {{"schema_version", kSchemaVersion},
            {"name", r.name},
            {"license", r.license},
            {"cpe_product", r.cpe_product ? nlohmann::json(*r.cpe_product) : nlohmann::json()},
            {"sharing_strings", first ? set_json(first->sharing_strings) : nlohmann::json::array()},
            {"sharing_functions", first ? set_json(first->sharing_functions) : nlohmann::json::array()},
            {"versions", versions}};
}

TpcRecord tpc_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw SchemaError("TPC record must be an object");
    if (j.value("schema_version", 0) != kSchemaVersion) throw SchemaError("unsupported TPC record schema_version");
    TpcRecord r;
    try {
        r.name = j.at("name").get<std::string>();
        r.license = j.value("license", "unknown");
        if (j.contains("cpe_product") && !j["cpe_product"].is_null()) r.cpe_product = j["cpe_product"].get<std::string>();
        const auto sharing_strings = json_set(j, "sharing_strings");
        const auto sharing_functions = json_set(j, "sharing_functions");
        for (const auto& vj : j.at("versions")) {
            VersionSignature v;
            v.version = vj.at("version").get<std::string>();
            if (vj.contains("release_date") && !vj["release_date"].is_null()) {
                v.release_date = parse_date(vj["release_date"].get<std::string>());
                if (!v.release_date) throw SchemaError("bad release_date for " + r.name + " " + v.version);
            }
            v.strings = json_set(vj, "strings");
            v.functions = json_set(vj, "functions");
            v.unique_strings = json_set(vj, "unique_strings");
            v.unique_functions = json_set(vj, "unique_functions");
            v.sharing_strings = sharing_strings;
            v.sharing_functions = sharing_functions;
            if (vj.contains("acfgs")) v.acfgs = binfeat::acfgs_from_document(vj["acfgs"]);
            r.versions.push_back(std::move(v));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("malformed TPC record: " + std::string(e.what()));
    } catch (const binfeat::InvalidAcfg& e) {
        throw SchemaError("malformed ACFG in TPC record: " + std::string(e.what()));
    }
    if (r.name.empty()) throw SchemaError("TPC record without a name");
    std::set<std::string> seen;
    for (const auto& v : r.versions) {
        if (!seen.insert(v.version).second) throw SchemaError("duplicate version " + v.version + " in " + r.name);
    }
    return r;
}

void save_database(const TpcDatabase& db, const fs::path& dir)
{
    nlohmann::json index_tpcs = nlohmann::json::array();
    for (const auto& t : db.tpcs) {
        const std::string rel = "tpcs/" + file_stem_for(t.name) + ".json";
        write_json_file(dir / rel, tpc_to_json(t));
        std::vector<std::string> versions;
        for (const auto& v : t.versions) versions.push_back(v.version);
        index_tpcs.push_back({{"name", t.name}, {"file", rel}, {"license", t.license}, {"versions", versions}});
    }
    nlohmann::json cves = nlohmann::json::array();
    for (const auto& c : db.cves) cves.push_back(cve_to_json(c));
    write_json_file(dir / "cves.json", cves);
    write_json_file(dir / "index.json",
                    {{"schema_version", kSchemaVersion}, {"tpcs", index_tpcs}, {"cves", "cves.json"}});
}

TpcDatabase load_database(const fs::path& dir)
{
    if (!fs::exists(dir / "index.json")) throw SchemaError("no TPC database at " + dir.string());
    const auto index = read_json_file(dir / "index.json");
    if (!index.is_object() || index.value("schema_version", 0) != kSchemaVersion) {
        throw SchemaError("unsupported database schema_version in " + (dir / "index.json").string());
    }
    TpcDatabase db;
    for (const auto& entry : index.value("tpcs", nlohmann::json::array())) {
        db.upsert(tpc_from_json(read_json_file(dir / entry.at("file").get<std::string>())));
    }
    const auto cve_doc = read_json_file(dir / index.value("cves", "cves.json"));
    CveImport imported = import_cve_feed(cve_doc);
    if (!imported.rejects.empty()) {
        throw SchemaError("stored CVE record " + std::to_string(imported.rejects.front().index) +
                          " is invalid: " + imported.rejects.front().reason);
    }
    db.add_cves(std::move(imported.records));
    return db;
}

namespace {

bool is_source_file(const fs::path& p)
{
    static const std::set<std::string> exts{".c", ".h", ".cc", ".cpp", ".cxx", ".hpp", ".hh", ".hxx", ".inc"};
    return exts.count(p.extension().string()) != 0;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

std::vector<fs::path> sorted_files(const fs::path& dir)
{
    std::vector<fs::path> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.is_regular_file()) out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

void add_source(VersionSignature& sig, const fs::path& p, const BuildOptions& options)
{
    const SourceFeatures sf = lex_source_features(slurp(p));
    for (const auto& lit : sf.strings) {
        auto runs = observable_strings(lit, options.min_string_len);
        sig.strings.insert(runs.begin(), runs.end());
    }
    sig.functions.insert(sf.functions.begin(), sf.functions.end());
}

// ACFG documents and riscv32 ELF files; anything else is ignored.
void add_binary(VersionSignature& sig, const fs::path& p)
{
    if (p.filename().string().ends_with(".acfg.json")) {
        auto acfgs = binfeat::acfgs_from_document(read_json_file(p));
        std::move(acfgs.begin(), acfgs.end(), std::back_inserter(sig.acfgs));
        return;
    }
    const std::string bytes = slurp(p);
    if (!binfeat::looks_like_elf(as_bytes(bytes))) return;
    const auto elf = binfeat::parse_elf(as_bytes(bytes));
    auto acfgs = binfeat::elf_acfgs(as_bytes(bytes), elf);
    std::move(acfgs.begin(), acfgs.end(), std::back_inserter(sig.acfgs));
}

} // namespace

TpcRecord build_tpc_record(const fs::path& dir, const BuildOptions& options)
{
    const auto meta = read_json_file(dir / "tpc.json");
    TpcRecord record;
    try {
        record.name = meta.at("name").get<std::string>();
        record.license = meta.value("license", "unknown");
        if (meta.contains("cpe_product") && !meta["cpe_product"].is_null()) {
            record.cpe_product = meta["cpe_product"].get<std::string>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(dir.string() + "/tpc.json: " + e.what());
    }
    const auto version_meta = meta.value("versions", nlohmann::json::object());

    std::vector<std::string> names;
    for (const auto& [v, _] : version_meta.items()) names.push_back(v);
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_directory()) names.push_back(e.path().filename().string());
    }
    std::sort(names.begin(), names.end(), VersionLess{});
    names.erase(std::unique(names.begin(), names.end()), names.end());

    std::vector<VersionSignature> versions;
    for (const auto& v : names) {
        const fs::path vdir = dir / v;
        if (!fs::is_directory(vdir)) throw SchemaError(record.name + ": no directory for version " + v);
        VersionSignature sig;
        sig.version = v;
        for (const auto& p : sorted_files(vdir / "src")) {
            if (is_source_file(p)) add_source(sig, p, options);
        }
        if (version_meta.contains(v) && version_meta[v].contains("release_date")) {
            sig.release_date = parse_date(version_meta[v]["release_date"].get<std::string>());
            if (!sig.release_date) throw SchemaError(record.name + " " + v + ": bad release_date");
        }
        for (const auto& p : sorted_files(vdir / "bin")) add_binary(sig, p);
        versions.push_back(std::move(sig));
    }
    record.versions = std::move(versions);
    rederive(record);
    return record;
}

VersionSignature version_from_path(const fs::path& path, const std::string& version, const BuildOptions& options)
{
    if (!fs::exists(path)) throw SchemaError("no such file or directory: " + path.string());
    VersionSignature sig;
    sig.version = version;
    std::vector<fs::path> files = fs::is_directory(path) ? sorted_files(path) : std::vector<fs::path>{path};
    for (const auto& p : files) {
        if (is_source_file(p)) {
            add_source(sig, p, options);
        } else {
            add_binary(sig, p);
        }
    }
    return sig;
}

void put_version(TpcRecord& record, VersionSignature version)
{
    auto it = std::find_if(record.versions.begin(), record.versions.end(), [&](const VersionSignature& v) {
        return v.version == version.version;
    });
    if (it != record.versions.end()) {
        if (!version.release_date) version.release_date = it->release_date;
        *it = std::move(version);
    } else {
        record.versions.push_back(std::move(version));
    }
    std::stable_sort(record.versions.begin(), record.versions.end(),
                     [](const VersionSignature& a, const VersionSignature& b) { return VersionLess{}(a.version, b.version); });
    rederive(record);
}

} // namespace tpcscan::tpcdb
