#include "tpcscan/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <thread>

namespace tpcscan::cli {

namespace fs = std::filesystem;

void Config::validate() const
{
    try {
        thresholds.validate();
    } catch (const matcher::InvalidThresholds& e) {
        throw ConfigError(e.what());
    }
    if (min_string_len < 1) throw ConfigError("min_string_len must be at least 1");
    if (embed_iterations < 0) throw ConfigError("embed_iterations must not be negative");
    if (recursion_depth < 0) throw ConfigError("recursion_depth must not be negative");
}

unsigned Config::effective_jobs() const
{
    if (jobs > 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

template <typename T>
T get(const nlohmann::json& j, const char* key)
{
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string("config: bad value for ") + key);
    }
}

fs::path resolve(const fs::path& p, const fs::path& relative_to)
{
    if (p.is_absolute() || relative_to.empty()) return p;
    return relative_to / p;
}

} // namespace

Config apply_config_json(Config c, const nlohmann::json& j, const fs::path& relative_to)
{
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    static const std::set<std::string> known{"thresholds",      "min_string_len", "embed_iterations",
                                             "recursion_depth", "db_dir",         "output_dir",
                                             "fail_on_findings", "jobs",          "distribution"};
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) throw ConfigError("config: unknown key " + key);
    }
    if (j.contains("thresholds")) {
        const auto& t = j["thresholds"];
        if (!t.is_object()) throw ConfigError("config: thresholds must be an object");
        for (const auto& [key, _] : t.items()) {
            if (key != "alpha" && key != "beta" && key != "gamma") throw ConfigError("config: unknown threshold " + key);
        }
        if (t.contains("alpha")) c.thresholds.alpha = get<double>(t, "alpha");
        if (t.contains("beta")) c.thresholds.beta = get<double>(t, "beta");
        if (t.contains("gamma")) c.thresholds.gamma = get<double>(t, "gamma");
    }
    if (j.contains("min_string_len")) {
        const int n = get<int>(j, "min_string_len");
        if (n < 1) throw ConfigError("min_string_len must be at least 1");
        c.min_string_len = static_cast<std::size_t>(n);
    }
    if (j.contains("embed_iterations")) c.embed_iterations = get<int>(j, "embed_iterations");
    if (j.contains("recursion_depth")) c.recursion_depth = get<int>(j, "recursion_depth");
    if (j.contains("db_dir")) c.db_dir = resolve(get<std::string>(j, "db_dir"), relative_to);
    if (j.contains("output_dir")) c.output_dir = resolve(get<std::string>(j, "output_dir"), relative_to);
    if (j.contains("fail_on_findings")) c.fail_on_findings = get<bool>(j, "fail_on_findings");
    if (j.contains("jobs")) {
        const int n = get<int>(j, "jobs");
        if (n < 0) throw ConfigError("jobs must not be negative");
        c.jobs = static_cast<unsigned>(n);
    }
    if (j.contains("distribution")) {
        const auto d = report::distribution_from_string(get<std::string>(j, "distribution"));
        if (!d) throw ConfigError("config: distribution must be closed or source_available");
        c.distribution = *d;
    }
    c.validate();
    return c;
}

Config load_config_file(const fs::path& file, Config base)
{
    std::ifstream in(file);
    if (!in) throw IoError("cannot read config " + file.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + file.string() + ": " + e.what());
    }
    return apply_config_json(std::move(base), j, file.parent_path());
}

nlohmann::json to_json(const Config& c)
{
    return {{"thresholds", {{"alpha", c.thresholds.alpha}, {"beta", c.thresholds.beta}, {"gamma", c.thresholds.gamma}}},
            {"min_string_len", c.min_string_len},
            {"embed_iterations", c.embed_iterations},
            {"recursion_depth", c.recursion_depth},
            {"db_dir", c.db_dir.string()},
            {"output_dir", c.output_dir.string()},
            {"fail_on_findings", c.fail_on_findings},
            {"jobs", c.jobs},
            {"distribution", std::string(report::to_string(c.distribution))}};
}

} // namespace tpcscan::cli
