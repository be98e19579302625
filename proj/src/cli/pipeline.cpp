#include "tpcscan/cli/pipeline.hpp"

#include "tpcscan/matcher/merge.hpp"
#include "tpcscan/matcher/syntactic.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <iterator>
#include <thread>

namespace tpcscan::cli {

namespace fs = std::filesystem;

binfeat::BinaryFeatures image_features(const extraction::FirmwareImage& image, const extraction::UnpackResult& unpacked,
                                       const binfeat::FeatureConfig& config)
{
    binfeat::BinaryFeatures out;
    bool any_elf = false;
    for (const auto& obj : unpacked.objects) {
        if (obj.kind != extraction::ObjectKind::elf_binary) continue;
        try {
            out.merge(binfeat::elf_features(obj.bytes, config), obj.path + ":");
            any_elf = true;
        } catch (const Error& e) {
            out.warnings.push_back(obj.path + ": " + e.what());
        }
    }
    if (!any_elf && unpacked.info.os_class == extraction::OsClass::monolithic) {
        out.merge(binfeat::blob_features(image.bytes, 0, config), "blob:");
    }
    return out;
}

Bytes read_bytes(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read error on " + path.string());
    return bytes;
}

Scanner::Scanner(const tpcdb::TpcDatabase& db, const Config& config)
    : db_(db), config_(config), cfg_(db, matcher::CfgOptions{.iterations = config.embed_iterations})
{
}

binfeat::BinaryFeatures Scanner::features(const extraction::FirmwareImage& image, extraction::FirmwareInfo* info,
                                          std::vector<std::string>* warnings) const
{
    extraction::UnpackConfig uc;
    uc.max_depth = config_.recursion_depth;
    const auto unpacked = extraction::unpack(image, uc);
    if (info) *info = unpacked.info;
    auto f = image_features(image, unpacked, {.min_string_len = config_.min_string_len});
    if (warnings) {
        warnings->insert(warnings->end(), unpacked.warnings.begin(), unpacked.warnings.end());
        warnings->insert(warnings->end(), f.warnings.begin(), f.warnings.end());
    }
    return f;
}

std::vector<matcher::MatchResult> Scanner::match(const binfeat::BinaryFeatures& features,
                                                 std::vector<std::string>* warnings) const
{
    auto syn = matcher::syntactic_match(db_, features, config_.thresholds);
    auto cfg = matcher::cfg_match(cfg_, features.acfgs, config_.thresholds);
    if (warnings) {
        warnings->insert(warnings->end(), syn.warnings.begin(), syn.warnings.end());
        warnings->insert(warnings->end(), cfg.warnings.begin(), cfg.warnings.end());
    }
    return matcher::union_merge(syn.results, cfg.results);
}

report::ScanReport Scanner::scan(const extraction::FirmwareImage& image, const report::ImageMeta& meta) const
{
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;
    extraction::FirmwareInfo info;
    const auto f = features(image, &info, &warnings);
    auto matches = match(f, &warnings);
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    auto r = report::build_report(meta, info, std::move(matches), db_, ms, {.distribution = config_.distribution});
    r.warnings.insert(r.warnings.begin(), warnings.begin(), warnings.end());
    return r;
}

std::vector<ImageOutcome> Scanner::scan_batch(const std::vector<ImageJob>& jobs, unsigned parallelism) const
{
    std::vector<ImageOutcome> out(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            auto& o = out[i];
            o.meta = jobs[i].meta;
            o.path = jobs[i].path;
            try {
                extraction::FirmwareImage image;
                image.id = o.meta.id;
                image.name = o.meta.name;
                image.bytes = read_bytes(jobs[i].path);
                o.report = scan(image, o.meta);
            } catch (const std::exception& e) {
                o.error = e.what();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(parallelism, static_cast<unsigned>(jobs.size())));
    std::vector<std::jthread> threads;
    for (unsigned t = 1; t < n; ++t) threads.emplace_back(worker);
    worker();
    threads.clear();
    return out;
}

} // namespace tpcscan::cli
