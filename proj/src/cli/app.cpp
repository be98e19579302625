#include "tpcscan/cli/app.hpp"

#include "tpcscan/cli/config.hpp"
#include "tpcscan/cli/pipeline.hpp"
#include "tpcscan/matcher/evaluation.hpp"
#include "tpcscan/matcher/tuning.hpp"
#include "tpcscan/report/series.hpp"
#include "tpcscan/tpcdb/cve.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>

namespace tpcscan::cli {

namespace fs = std::filesystem;

namespace {

struct Flags {
    std::string config_file;
    std::string db_dir;
    std::optional<double> alpha, beta, gamma;
    std::optional<int> min_string_len, embed_iterations, recursion_depth, jobs;
    std::string distribution;
};

nlohmann::json read_json(const fs::path& p)
{
    std::ifstream in(p);
    if (!in) throw IoError("cannot read " + p.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw tpcdb::SchemaError(p.string() + ": " + e.what());
    }
}

void write_text(const fs::path& p, const std::string& text)
{
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream o(p, std::ios::binary);
    o << text;
    if (!o) throw IoError("cannot write " + p.string());
}

void write_json(const fs::path& p, const nlohmann::json& j)
{
    write_text(p, j.dump(1) + "\n");
}

class Command {
public:
    Command(const Flags& flags, const Environment& env, std::ostream& out, std::ostream& err)
        : flags_(flags), env_(env), out_(out), err_(err)
    {
    }

    // defaults < config file < environment < flags
    Config config() const
    {
        Config c;
        if (!flags_.config_file.empty()) c = load_config_file(flags_.config_file, c);
        if (auto it = env_.find(kDbEnv); it != env_.end() && !it->second.empty()) c.db_dir = it->second;
        if (!flags_.db_dir.empty()) c.db_dir = flags_.db_dir;
        if (flags_.alpha) c.thresholds.alpha = *flags_.alpha;
        if (flags_.beta) c.thresholds.beta = *flags_.beta;
        if (flags_.gamma) c.thresholds.gamma = *flags_.gamma;
        if (flags_.min_string_len) {
            if (*flags_.min_string_len < 1) throw ConfigError("--min-string-len must be at least 1");
            c.min_string_len = static_cast<std::size_t>(*flags_.min_string_len);
        }
        if (flags_.embed_iterations) c.embed_iterations = *flags_.embed_iterations;
        if (flags_.recursion_depth) c.recursion_depth = *flags_.recursion_depth;
        if (flags_.jobs) {
            if (*flags_.jobs < 0) throw ConfigError("--jobs must not be negative");
            c.jobs = static_cast<unsigned>(*flags_.jobs);
        }
        if (!flags_.distribution.empty()) {
            const auto d = report::distribution_from_string(flags_.distribution);
            if (!d) throw ConfigError("--distribution must be closed or source_available");
            c.distribution = *d;
        }
        c.validate();
        return c;
    }

    static tpcdb::TpcDatabase load_db(const Config& c)
    {
        if (!fs::exists(c.db_dir / "index.json")) throw IoError("no TPC database at " + c.db_dir.string());
        return tpcdb::load_database(c.db_dir);
    }

    static tpcdb::TpcDatabase load_or_create_db(const Config& c)
    {
        if (!fs::exists(c.db_dir / "index.json")) return {};
        return tpcdb::load_database(c.db_dir);
    }

    std::ostream& out() { return out_; }
    std::ostream& err() { return err_; }

private:
    const Flags& flags_;
    const Environment& env_;
    std::ostream& out_;
    std::ostream& err_;
};

// ---- db -------------------------------------------------------------------

struct BuildTpcArgs {
    std::string name, version, path, license, release_date, cpe_product;
};

int db_build_tpc(Command& cmd, const BuildTpcArgs& a)
{
    const Config c = cmd.config();
    auto db = Command::load_or_create_db(c);
    tpcdb::TpcRecord record;
    if (const auto* existing = db.find(a.name)) {
        record = *existing;
    } else {
        record.name = a.name;
    }
    if (!a.license.empty()) record.license = a.license;
    if (!a.cpe_product.empty()) record.cpe_product = a.cpe_product;
    auto sig = tpcdb::version_from_path(a.path, a.version, {.min_string_len = c.min_string_len});
    if (!a.release_date.empty()) {
        sig.release_date = parse_date(a.release_date);
        if (!sig.release_date) throw ConfigError("--release-date is not an ISO-8601 date");
    }
    const auto strings = sig.strings.size();
    const auto functions = sig.functions.size();
    const auto acfgs = sig.acfgs.size();
    tpcdb::put_version(record, std::move(sig));
    const auto* v = record.find_version(a.version);
    cmd.out() << record.name << " " << a.version << ": " << strings << " strings, " << functions << " functions, "
              << acfgs << " ACFGs; " << v->sharing_strings.size() + v->sharing_functions.size() << " sharing, "
              << v->unique_strings.size() + v->unique_functions.size() << " unique features\n";
    db.upsert(std::move(record));
    tpcdb::save_database(db, c.db_dir);
    return kExitOk;
}

int db_build_tree(Command& cmd, const std::vector<std::string>& dirs)
{
    const Config c = cmd.config();
    auto db = Command::load_or_create_db(c);
    for (const auto& d : dirs) {
        if (!fs::is_directory(d)) throw IoError("not a directory: " + d);
        auto record = tpcdb::build_tpc_record(d, {.min_string_len = c.min_string_len});
        cmd.out() << record.name << ": " << record.versions.size() << " versions\n";
        db.upsert(std::move(record));
    }
    tpcdb::save_database(db, c.db_dir);
    return kExitOk;
}

int db_import_cve(Command& cmd, const std::string& feed)
{
    const Config c = cmd.config();
    auto db = Command::load_or_create_db(c);
    nlohmann::json doc = read_json(feed);
    if (doc.is_object() && (doc.contains("CVE_Items") || doc.contains("vulnerabilities"))) {
        doc = tpcdb::nvd_to_flat(doc);
    }
    auto imported = tpcdb::import_cve_feed(doc);
    for (const auto& r : imported.rejects) {
        cmd.err() << "rejected entry " << r.index << (r.cve_id.empty() ? "" : " (" + r.cve_id + ")") << ": "
                  << r.reason << "\n";
    }
    const auto count = imported.records.size();
    db.add_cves(std::move(imported.records));
    tpcdb::save_database(db, c.db_dir);
    cmd.out() << "imported " << count << " CVE records, rejected " << imported.rejects.size() << "; database holds "
              << db.cves.size() << "\n";
    return kExitOk;
}

int db_info(Command& cmd)
{
    const Config c = cmd.config();
    const auto db = Command::load_db(c);
    for (const auto& t : db.tpcs) {
        cmd.out() << t.name << " (" << t.license << "):";
        for (const auto& v : t.versions) {
            cmd.out() << " " << v.version;
            if (v.release_date) cmd.out() << " [" << format_date(*v.release_date) << "]";
        }
        cmd.out() << "\n";
    }
    cmd.out() << db.cves.size() << " CVE records\n";
    return kExitOk;
}

// ---- scan -----------------------------------------------------------------

// Image metadata from a manifest {"images": [{"file", "id", "vendor", ...}]},
// keyed by the canonical image path.
std::map<fs::path, report::ImageMeta> load_image_manifest(const fs::path& manifest)
{
    const auto j = read_json(manifest);
    if (!j.is_object() || !j.contains("images") || !j["images"].is_array()) {
        throw tpcdb::SchemaError(manifest.string() + ": expected {\"images\": [...]}");
    }
    std::map<fs::path, report::ImageMeta> out;
    for (const auto& e : j["images"]) {
        if (!e.is_object()) throw tpcdb::SchemaError(manifest.string() + ": image entries must be objects");
        const std::string file = e.value("file", e.value("image", ""));
        if (file.empty()) throw tpcdb::SchemaError(manifest.string() + ": image entry without a file");
        auto meta = report::image_meta_from_json(e);
        out[fs::weakly_canonical(manifest.parent_path() / file)] = std::move(meta);
    }
    return out;
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs)
{
    std::vector<fs::path> out;
    for (const auto& in : inputs) {
        const fs::path p(in);
        if (fs::is_directory(p)) {
            std::vector<fs::path> files;
            for (const auto& e : fs::recursive_directory_iterator(p)) {
                if (e.is_regular_file()) files.push_back(e.path());
            }
            std::sort(files.begin(), files.end());
            out.insert(out.end(), files.begin(), files.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

std::vector<ImageJob> make_jobs(const std::vector<fs::path>& files, const std::map<fs::path, report::ImageMeta>& known)
{
    std::vector<ImageJob> jobs;
    std::set<std::string> ids;
    for (const auto& f : files) {
        ImageJob job{f, {}};
        if (auto it = known.find(fs::weakly_canonical(f)); it != known.end()) job.meta = it->second;
        if (job.meta.name.empty()) job.meta.name = f.filename().string();
        if (job.meta.id.empty()) job.meta.id = f.stem().string();
        std::string id = job.meta.id;
        for (int k = 2; !ids.insert(id).second; ++k) id = job.meta.id + "-" + std::to_string(k);
        job.meta.id = id;
        jobs.push_back(std::move(job));
    }
    return jobs;
}

struct ScanArgs {
    std::vector<std::string> images;
    std::string report_dir;
    std::string manifest;
    bool fail_on_findings = false;
    bool text = false;
};

int scan(Command& cmd, const ScanArgs& a)
{
    Config c = cmd.config();
    if (a.fail_on_findings) c.fail_on_findings = true;
    const fs::path report_dir = a.report_dir.empty() ? c.output_dir : fs::path(a.report_dir);
    const auto db = Command::load_db(c);
    const auto known = a.manifest.empty() ? std::map<fs::path, report::ImageMeta>{} : load_image_manifest(a.manifest);
    const auto jobs = make_jobs(expand_inputs(a.images), known);
    if (jobs.empty()) throw ConfigError("no images to scan");

    const Scanner scanner(db, c);
    const auto outcomes = scanner.scan_batch(jobs, c.effective_jobs());

    fs::create_directories(report_dir);
    nlohmann::json index = nlohmann::json::array();
    int failed = 0;
    int findings = 0;
    for (const auto& o : outcomes) {
        nlohmann::json entry{{"id", o.meta.id}, {"image", o.path.string()}};
        if (!o.report) {
            ++failed;
            entry["error"] = o.error;
            cmd.out() << o.meta.id << ": error: " << o.error << "\n";
        } else {
            const std::string file = o.meta.id + ".json";
            write_json(report_dir / file, report::to_json(*o.report));
            if (a.text) write_text(report_dir / (o.meta.id + ".txt"), report::render_text(*o.report));
            entry["report"] = file;
            entry["tpcs"] = o.report->matches.size();
            entry["vulns"] = o.report->findings.size();
            entry["time_ms"] = o.report->wall_time_ms;
            findings += static_cast<int>(o.report->findings.size());
            cmd.out() << o.meta.id << ": " << report::summary_line(*o.report) << "\n";
        }
        index.push_back(std::move(entry));
    }
    write_json(report_dir / "index.json", {{"images", index}});
    if (failed > 0) {
        cmd.err() << failed << " of " << outcomes.size() << " images could not be scanned\n";
        return kExitPartial;
    }
    if (c.fail_on_findings && findings > 0) return kExitFindings;
    return kExitOk;
}

// ---- tune -----------------------------------------------------------------

matcher::TruthSet truth_of(const nlohmann::json& entry)
{
    matcher::TruthSet t;
    for (const auto& x : entry.value("truth", nlohmann::json::array())) {
        t.insert({x.at("tpc").get<std::string>(), x.at("version").get<std::string>()});
    }
    return t;
}

int tune(Command& cmd, const std::string& manifest, double step, const std::string& write_config)
{
    const Config c = cmd.config();
    const auto db = Command::load_db(c);
    const auto j = read_json(manifest);
    if (!j.is_object() || !j.contains("images") || !j["images"].is_array()) {
        throw tpcdb::SchemaError(manifest + ": expected {\"images\": [...]}");
    }
    const Scanner scanner(db, c);
    const fs::path base = fs::path(manifest).parent_path();
    std::vector<matcher::LabeledImage> labeled;
    try {
        for (const auto& e : j["images"]) {
            const fs::path file = base / e.at("file").get<std::string>();
            extraction::FirmwareImage image;
            image.id = e.value("id", file.stem().string());
            image.bytes = read_bytes(file);
            labeled.push_back({scanner.features(image), truth_of(e)});
        }
    } catch (const nlohmann::json::exception& e) {
        throw tpcdb::SchemaError(manifest + ": " + e.what());
    }
    const auto r = matcher::tune_thresholds(db, labeled, step, {.iterations = c.embed_iterations});
    std::ostringstream line;
    line << std::setprecision(6) << "[alpha, beta, gamma, TPR] = [" << r.thresholds.alpha << ", " << r.thresholds.beta
         << ", " << r.thresholds.gamma << ", " << r.tpr << "] (" << r.true_positives << "/" << r.truth_pairs << ")";
    cmd.out() << line.str() << "\n";
    if (!write_config.empty()) {
        auto out = to_json(c);
        out["thresholds"] = {{"alpha", r.thresholds.alpha}, {"beta", r.thresholds.beta}, {"gamma", r.thresholds.gamma}};
        out.erase("db_dir");
        out.erase("output_dir");
        write_json(write_config, out);
    }
    return kExitOk;
}

// ---- eval -----------------------------------------------------------------

// Reports from a scan index, a directory holding one, or a single report.
std::map<std::string, std::vector<matcher::MatchResult>> load_results(const fs::path& results)
{
    std::map<std::string, std::vector<matcher::MatchResult>> out;
    fs::path index = results;
    if (fs::is_directory(results)) index = results / "index.json";
    const auto j = read_json(index);
    if (j.is_object() && j.contains("images")) {
        for (const auto& e : j["images"]) {
            if (!e.contains("report")) continue;
            const auto r = report::report_from_json(read_json(index.parent_path() / e["report"].get<std::string>()));
            out[r.image.id] = r.matches;
        }
    } else {
        const auto r = report::report_from_json(j);
        out[r.image.id] = r.matches;
    }
    return out;
}

int eval(Command& cmd, const std::string& results, const std::string& truth_file)
{
    const auto predicted = load_results(results);
    const auto j = read_json(truth_file);
    if (!j.is_object() || !j.contains("images")) throw tpcdb::SchemaError(truth_file + ": expected {\"images\": [...]}");
    std::vector<std::vector<matcher::MatchResult>> all;
    std::vector<matcher::TruthSet> truth;
    try {
        for (const auto& e : j["images"]) {
            const std::string id = e.at("id").get<std::string>();
            auto it = predicted.find(id);
            if (it == predicted.end()) {
                cmd.err() << id << ": no scan result; counted as no detections\n";
                all.emplace_back();
            } else {
                all.push_back(it->second);
            }
            truth.push_back(truth_of(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw tpcdb::SchemaError(truth_file + ": " + e.what());
    }
    cmd.out() << matcher::to_json(matcher::evaluate(all, truth)).dump(1) << "\n";
    return kExitOk;
}

// ---- series ---------------------------------------------------------------

int series(Command& cmd, const std::string& manifest, const std::string& report_dir, const std::string& json_out)
{
    const auto j = read_json(manifest);
    if (!j.is_object() || !j.contains("images") || !j["images"].is_array()) {
        throw tpcdb::SchemaError(manifest + ": expected {\"images\": [...]}");
    }
    const fs::path base = fs::path(manifest).parent_path();
    const fs::path reports_at = report_dir.empty() ? base : fs::path(report_dir);
    const std::string lineage = j.value("lineage", "");

    std::optional<tpcdb::TpcDatabase> db;
    std::optional<Config> config;
    std::optional<Scanner> scanner;
    std::vector<report::ScanReport> reports;
    for (const auto& e : j["images"]) {
        auto meta = report::image_meta_from_json(e);
        if (meta.lineage.empty()) meta.lineage = lineage;
        const std::string report_file = e.value("report", "");
        report::ScanReport r;
        if (!report_file.empty() && fs::exists(reports_at / report_file)) {
            r = report::report_from_json(read_json(reports_at / report_file));
        } else if (e.contains("image")) {
            if (!scanner) {
                config = cmd.config();
                db = Command::load_db(*config);
                scanner.emplace(*db, *config);
            }
            const fs::path image_path = base / e["image"].get<std::string>();
            extraction::FirmwareImage image;
            image.bytes = read_bytes(image_path);
            if (meta.id.empty()) meta.id = image_path.stem().string();
            r = scanner->scan(image, meta);
        } else {
            throw IoError("series entry has neither a readable report nor an image: " + report_file);
        }
        // the manifest's dates and labels win over what the report recorded
        if (!meta.id.empty()) r.image.id = meta.id;
        if (!meta.lineage.empty()) r.image.lineage = meta.lineage;
        if (!meta.firmware_version.empty()) r.image.firmware_version = meta.firmware_version;
        if (meta.release_date && meta.release_date != r.image.release_date) {
            r.image.release_date = meta.release_date;
            for (auto& f : r.findings) f.disclosed_before_release = f.cve.published < *meta.release_date;
        }
        reports.push_back(std::move(r));
    }
    const auto s = report::series_analysis(reports);
    cmd.out() << report::render_text(s);
    if (!json_out.empty()) write_json(json_out, report::to_json(s));
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment* env)
{
    Environment process_env;
    if (!env) {
        if (const char* v = std::getenv(kDbEnv)) process_env[kDbEnv] = v;
        env = &process_env;
    }

    CLI::App app{"Firmware third-party component and vulnerability scanner", "tpcscan"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags flags;
    app.add_option("--config", flags.config_file, "JSON config file");
    app.add_option("--db", flags.db_dir, std::string("TPC database directory (env ") + kDbEnv + ")");
    app.add_option("--alpha", flags.alpha, "feature edit-similarity threshold");
    app.add_option("--beta", flags.beta, "matched-feature ratio threshold");
    app.add_option("--gamma", flags.gamma, "ACFG similarity threshold");
    app.add_option("--min-string-len", flags.min_string_len, "shortest extracted string");
    app.add_option("--embed-iterations", flags.embed_iterations, "ACFG embedding rounds");
    app.add_option("--recursion-depth", flags.recursion_depth, "container nesting limit");
    app.add_option("-j,--jobs", flags.jobs, "images scanned in parallel (0 = all cores)");
    app.add_option("--distribution", flags.distribution, "closed or source_available");

    auto* db_cmd = app.add_subcommand("db", "build and update the TPC database");
    db_cmd->require_subcommand(1);
    BuildTpcArgs build;
    auto* build_tpc = db_cmd->add_subcommand("build-tpc", "add one TPC version from sources, ACFGs or an ELF");
    build_tpc->add_option("name", build.name)->required();
    build_tpc->add_option("version", build.version)->required();
    build_tpc->add_option("src-or-acfg", build.path)->required();
    build_tpc->add_option("--license", build.license, "SPDX license expression");
    build_tpc->add_option("--release-date", build.release_date, "YYYY-MM-DD");
    build_tpc->add_option("--cpe-product", build.cpe_product);
    std::vector<std::string> tree_dirs;
    auto* build_tree = db_cmd->add_subcommand("build-tree", "add TPCs from <dir>/tpc.json + <dir>/<version>/ trees");
    build_tree->add_option("dirs", tree_dirs)->required();
    std::string feed;
    auto* import_cve = db_cmd->add_subcommand("import-cve", "import a CVE feed (flat or NVD JSON)");
    import_cve->add_option("feed", feed)->required();
    auto* info = db_cmd->add_subcommand("info", "list TPCs, versions and the CVE count");

    ScanArgs scan_args;
    auto* scan_cmd = app.add_subcommand("scan", "scan firmware images (files or directories)");
    scan_cmd->add_option("images", scan_args.images)->required();
    scan_cmd->add_option("--report-dir", scan_args.report_dir, "where reports go (default: output_dir)");
    scan_cmd->add_option("--manifest", scan_args.manifest, "image metadata {\"images\": [{\"file\", ...}]}");
    scan_cmd->add_flag("--fail-on-findings", scan_args.fail_on_findings, "exit 2 when any CVE is found");
    scan_cmd->add_flag("--text", scan_args.text, "also write a plain-text report per image");

    std::string tune_manifest, tune_out;
    double step = 0.01;
    auto* tune_cmd = app.add_subcommand("tune", "grid-search thresholds on a labeled manifest");
    tune_cmd->add_option("labeled-manifest", tune_manifest)->required();
    tune_cmd->add_option("--step", step, "grid step");
    tune_cmd->add_option("--write-config", tune_out, "write the chosen thresholds as a config file");

    auto* config_cmd = app.add_subcommand("config", "print the effective configuration");

    std::string results, truth;
    auto* eval_cmd = app.add_subcommand("eval", "precision and recall of scan results against ground truth");
    eval_cmd->add_option("results", results)->required();
    eval_cmd->add_option("truth", truth)->required();

    std::string lineage_manifest, series_reports, series_out;
    auto* series_cmd = app.add_subcommand("series", "analyse consecutive firmware of one device lineage");
    series_cmd->add_option("lineage-manifest", lineage_manifest)->required();
    series_cmd->add_option("--report-dir", series_reports, "where the listed reports live");
    series_cmd->add_option("--json", series_out, "write the analysis as JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    Command cmd(flags, *env, out, err);
    try {
        if (build_tpc->parsed()) return db_build_tpc(cmd, build);
        if (build_tree->parsed()) return db_build_tree(cmd, tree_dirs);
        if (import_cve->parsed()) return db_import_cve(cmd, feed);
        if (info->parsed()) return db_info(cmd);
        if (config_cmd->parsed()) {
            out << to_json(cmd.config()).dump(1) << "\n";
            return kExitOk;
        }
        if (scan_cmd->parsed()) return scan(cmd, scan_args);
        if (tune_cmd->parsed()) return tune(cmd, tune_manifest, step, tune_out);
        if (eval_cmd->parsed()) return eval(cmd, results, truth);
        if (series_cmd->parsed()) return series(cmd, lineage_manifest, series_reports, series_out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    err << app.help();
    return kExitUsage;
}

} // namespace tpcscan::cli
