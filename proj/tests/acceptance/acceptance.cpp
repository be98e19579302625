// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "acfg_gen.hpp"
#include "cve_lattice.hpp"
#include "report_gen.hpp"
#include "support.hpp"
#include "tune_fixture.hpp"

#include "tpcscan/binfeat/riscv.hpp"
#include "tpcscan/cli/pipeline.hpp"
#include "tpcscan/extraction/filesystem.hpp"
#include "tpcscan/matcher/acfg_match.hpp"
#include "tpcscan/matcher/evaluation.hpp"
#include "tpcscan/matcher/merge.hpp"
#include "tpcscan/matcher/similarity.hpp"
#include "tpcscan/report/scan_report.hpp"

#include <zlib.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

using namespace tpcscan;
using testsupport::fixture;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string random_string(std::mt19937& rng, std::size_t max_len, const std::string& alphabet)
{
    std::string s(rng() % (max_len + 1), ' ');
    for (auto& c : s) c = alphabet[rng() % alphabet.size()];
    return s;
}

// 1: CC-weighted aggregate on the worked fixture, weight sums on random sets.
Verdict aggregate_arithmetic()
{
    const auto w = matcher::cfg_weights({testsupport::tune_acfg({7, 3}), testsupport::tune_acfg({3, 1})});
    const double agg = matcher::aggregate_similarity(w, {0.9, 0.5});
    const double err = std::abs(agg - 0.80);
    std::mt19937 rng(1);
    double worst = 0.0;
    bool positive = true;
    for (int i = 0; i < 1000; ++i) {
        std::vector<binfeat::Acfg> set;
        const int n = 1 + static_cast<int>(rng() % 30);
        for (int k = 0; k < n; ++k) set.push_back(testsupport::random_acfg(rng));
        double sum = 0.0;
        for (double x : matcher::cfg_weights(set)) {
            sum += x;
            positive = positive && x > 0.0;
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return {err <= 1e-12 && worst <= 1e-9 && positive,
            fmt("aggregate %.15f (|err| %.1e), worst |sum w - 1| %.1e over 1000 sets", agg, err, worst)};
}

// 2: edit_similarity against a plain DP oracle.
Verdict levenshtein_oracle()
{
    std::mt19937 rng(2);
    int mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto a = random_string(rng, 12, "abcdef");
        const auto b = random_string(rng, 12, "abcdef");
        if (matcher::edit_similarity(a, b) != testsupport::tune_sim(a, b)) ++mismatches;
    }
    return {mismatches == 0, fmt("%d mismatches in 10000 pairs", mismatches)};
}

// 3: pruned and unpruned feature matching agree.
Verdict pruning_soundness()
{
    std::mt19937 rng(3);
    int disagreements = 0, total = 0;
    for (double alpha : {0.6, 0.74, 0.9}) {
        for (int i = 0; i < 1000; ++i) {
            std::set<std::string> tpc, fw;
            for (int k = 0; k < 8; ++k) tpc.insert(random_string(rng, 16, "abc"));
            for (int k = 0; k < 20; ++k) fw.insert(random_string(rng, 16, "abc"));
            const auto pruned = matcher::match_feature_set(tpc, fw, alpha, true);
            const auto full = matcher::match_feature_set(tpc, fw, alpha, false);
            disagreements += pruned != full;
            ++total;
        }
    }
    return {disagreements == 0, fmt("%d disagreements over %d sets at alpha 0.6/0.74/0.9", disagreements, total)};
}

// 4: the worked union example.
Verdict union_example()
{
    auto claim = [](std::string tpc, std::string v, matcher::Channel ch, double s) {
        matcher::MatchResult m;
        m.tpc = std::move(tpc);
        m.version = std::move(v);
        m.channel = ch;
        m.score = s;
        return m;
    };
    using matcher::Channel;
    const std::vector<matcher::MatchResult> syntax{claim("OpenSSL", "unknown", Channel::syntax, 0.8),
                                                   claim("uClibc", "0.9.32.1", Channel::syntax, 0.9)};
    const std::vector<matcher::MatchResult> cfg{claim("OpenSSL", "0.9.8", Channel::cfg, 0.7),
                                                claim("uClibc", "0.9.32.1", Channel::cfg, 0.8)};
    std::string got;
    for (const auto& m : matcher::union_merge(syntax, cfg)) got += (got.empty() ? "" : ", ") + m.tpc + " " + m.version;
    std::string swapped;
    for (const auto& m : matcher::union_merge(cfg, syntax)) {
        swapped += (swapped.empty() ? "" : ", ") + m.tpc + " " + m.version;
    }
    const std::string want = "OpenSSL 0.9.8, uClibc 0.9.32.1";
    return {got == want && swapped == want, "{" + got + "}"};
}

// 5: embeddings ignore block order; self-similarity is 1.
Verdict embedding_invariance()
{
    std::mt19937 rng(5);
    int differ = 0;
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const auto a = testsupport::random_acfg(rng, 1, 40);
        const auto e = matcher::embed_acfg(a);
        differ += !(matcher::embed_acfg(testsupport::permute_acfg(a, rng)) == e);
        worst = std::max(worst, std::abs(matcher::acfg_similarity(e, e) - 1.0));
    }
    return {differ == 0 && worst <= 1e-9,
            fmt("%d of 500 permuted embeddings differ, worst |self-sim - 1| %.1e", differ, worst)};
}

// 6: CVE versions check against brute force, plus Heartbleed.
Verdict cve_oracle()
{
    std::size_t queries = 0, wrong = 0;
    bool suffixed = false;
    for (std::uint32_t seed : {1u, 2u, 3u}) {
        const auto db = testsupport::lattice_database(seed);
        for (const auto& [tpc, version] : testsupport::lattice_queries(db)) {
            suffixed = suffixed || version == "0.9.8b" || version == "1.0.1f";
            std::vector<std::string> got;
            for (const auto& r : db.query_cves(tpc, version).records) got.push_back(r.cve_id);
            wrong += got != testsupport::brute_force_query(db, tpc, version);
            ++queries;
        }
    }
    tpcdb::TpcDatabase hb;
    tpcdb::TpcRecord ssl;
    ssl.name = "openssl";
    ssl.versions = {{.version = "1.0.1e"}};
    hb.upsert(ssl);
    hb.add_cves({testsupport::heartbleed_record()});
    const auto q = hb.query_cves("openssl", "1.0.1e");
    const bool heartbleed = q.records.size() == 1 && q.records[0].cve_id == "CVE-2014-0160";
    return {wrong == 0 && queries >= 600 && suffixed && heartbleed,
            fmt("%zu lattice queries (3 seeds), %zu wrong; (openssl, 1.0.1e) -> %s", queries, wrong,
                heartbleed ? "CVE-2014-0160" : "wrong")};
}

// 7: CPIO/TAR trees and the SquashFS manifest extract exactly.
Verdict extraction_round_trip()
{
    const auto trees = testsupport::read_json(fixture("trees.json"));
    int ok = 0, archives = 0;
    for (const auto& tree : trees) {
        std::map<std::string, Bytes> expected;
        for (const auto& f : tree["files"]) {
            expected[f["path"].get<std::string>()] = testsupport::base64_decode(f["content_b64"].get<std::string>());
        }
        for (const char* key : {"cpio", "tar"}) {
            const auto kind = std::string(key) == "cpio" ? extraction::RegionKind::cpio : extraction::RegionKind::tar;
            const auto got = extraction::extract_filesystem(testsupport::read_file(fixture(tree[key])), kind);
            std::map<std::string, Bytes> files;
            for (const auto& o : got.objects) files[o.path] = o.bytes;
            ok += files == expected && got.objects.size() == expected.size();
            ++archives;
        }
    }
    const auto manifest = testsupport::read_json(fixture("squashfs/manifest.json"))["rootfs.sqsh"]["files"];
    const auto sq = extraction::extract_filesystem(testsupport::read_file(fixture("squashfs/rootfs.sqsh")),
                                                   extraction::RegionKind::squashfs);
    std::size_t sq_ok = 0;
    for (const auto& o : sq.objects) {
        if (!manifest.contains(o.path)) continue;
        const auto& m = manifest[o.path];
        sq_ok += o.bytes.size() == m["size"].get<std::size_t>() &&
                 crc32(0L, o.bytes.data(), static_cast<uInt>(o.bytes.size())) == m["crc32"].get<std::uint32_t>();
    }
    const bool pass = trees.size() == 50 && ok == archives && sq_ok == manifest.size() && sq.objects.size() == sq_ok;
    return {pass, fmt("%d/%d archives identical over %zu trees; squashfs %zu/%zu files", ok, archives, trees.size(), sq_ok,
                      manifest.size())};
}

// 8: decoder golden table.
Verdict decoder_golden()
{
    const auto golden = testsupport::read_json(fixture("rv32/golden.json"));
    int total = 0, ok = 0;
    for (const auto& e : golden["valid"]) {
        const auto word = static_cast<std::uint32_t>(std::stoul(e["word"].get<std::string>(), nullptr, 16));
        const auto insn = binfeat::decode_instruction(word, 0x1000);
        ok += insn.mnemonic() == e["mnemonic"].get<std::string>() &&
              insn.operands() == e["operands"].get<std::vector<std::string>>() &&
              binfeat::to_string(insn.cls) == e["class"].get<std::string>() && insn.text() == e["text"];
        ++total;
    }
    int invalid_ok = 0;
    for (const auto& w : golden["invalid"]) {
        invalid_ok += binfeat::decode_instruction(static_cast<std::uint32_t>(std::stoul(w.get<std::string>(), nullptr, 16)), 0)
                          .is_data();
    }
    const int invalid = static_cast<int>(golden["invalid"].size());
    return {total >= 40 && ok == total && invalid_ok == invalid,
            fmt("%d/%d valid forms decode as expected, %d/%d invalid words rejected", ok, total, invalid_ok, invalid)};
}

struct CorpusRun {
    matcher::Evaluation eval;
    double total_seconds = 0.0;
    double worst_image_seconds = 0.0;
    std::string worst_image;
    int images = 0;
    int failed = 0;
};

CorpusRun run_corpus()
{
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path root = fixture("corpus");
    tpcdb::TpcDatabase db;
    for (const char* name : {"openssl", "busybox", "zlib"}) db.upsert(tpcdb::build_tpc_record(root / "tpcs" / name));
    db.add_cves(tpcdb::import_cve_feed(testsupport::read_json(root / "cves.json")).records);
    const cli::Config config;
    const cli::Scanner scanner(db, config);

    CorpusRun run;
    std::vector<std::vector<matcher::MatchResult>> results;
    std::vector<matcher::TruthSet> truth;
    const auto truth_doc = testsupport::read_json(root / "truth.json");
    for (const auto& img : truth_doc["images"]) {
        const auto start = std::chrono::steady_clock::now();
        extraction::FirmwareImage image;
        image.id = img["id"].get<std::string>();
        report::ImageMeta meta{.id = image.id};
        std::vector<matcher::MatchResult> matches;
        try {
            image.bytes = cli::read_bytes(root / img["file"].get<std::string>());
            matches = scanner.scan(image, meta).matches;
        } catch (const std::exception&) {
            ++run.failed;
        }
        const double s = seconds_since(start);
        if (s > run.worst_image_seconds) {
            run.worst_image_seconds = s;
            run.worst_image = image.id;
        }
        matcher::TruthSet t;
        for (const auto& x : img["truth"]) t.insert({x["tpc"].get<std::string>(), x["version"].get<std::string>()});
        results.push_back(std::move(matches));
        truth.push_back(std::move(t));
        ++run.images;
    }
    run.eval = matcher::evaluate(results, truth);
    run.total_seconds = seconds_since(t0);
    return run;
}

// 10: tuning on the engineered fixture against the exhaustive checker.
Verdict tuning_optimum()
{
    const auto fx = testsupport::make_tune_fixture();
    const auto check = testsupport::tune_exhaustive_check(fx);
    const auto r = matcher::tune_thresholds(testsupport::tune_database(fx), testsupport::tune_labeled(fx), fx.step,
                                            {.calibrate = false});
    const bool unique = check.best.size() == 1 && !check.undecided;
    const bool agree = unique && r.thresholds == check.best[0] && r.true_positives == check.best_tp;
    return {agree, fmt("tune -> [%.2f, %.2f, %.2f, TPR %.4f]; checker optimum %s (%d/%d), %zu triple(s) at max",
                       r.thresholds.alpha, r.thresholds.beta, r.thresholds.gamma, r.tpr,
                       unique ? fmt("[%.2f, %.2f, %.2f]", check.best[0].alpha, check.best[0].beta, check.best[0].gamma).c_str()
                              : "not unique",
                       check.best_tp, check.truth_pairs, check.best.size())};
}

// 12: report integrity on random match sets.
Verdict report_integrity()
{
    const auto db = testsupport::licensed_lattice(12);
    std::mt19937 rng(12);
    int broken = 0, nondeterministic = 0, round_trip = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto meta = testsupport::random_meta(rng, i);
        auto matches = testsupport::random_matches(db, rng);
        const auto r = report::build_report(meta, {}, matches, db, static_cast<std::int64_t>(rng() % 5000));
        broken += !report::check_report(r).empty() || r.severity_counts.total() != static_cast<int>(r.findings.size());
        std::shuffle(matches.begin(), matches.end(), rng);
        const auto again = report::build_report(meta, {}, matches, db, 0);
        nondeterministic += report::to_json(r, false).dump() != report::to_json(again, false).dump();
        round_trip += report::to_json(report::report_from_json(report::to_json(r))).dump() != report::to_json(r).dump();
    }
    return {broken == 0 && nondeterministic == 0 && round_trip == 0,
            fmt("1000 reports: %d inconsistent, %d non-deterministic, %d round-trip differences", broken,
                nondeterministic, round_trip)};
}

} // namespace

int main()
{
    int failures = 0;
    auto report_line = [&](int id, const char* name, const Verdict& v, double seconds, double limit) {
        const bool in_time = limit <= 0 || seconds < limit;
        const bool pass = v.pass && in_time;
        failures += !pass;
        std::printf("criterion %2d [%s] %s: %s; %.2f s%s\n", id, pass ? "PASS" : "FAIL", name, v.detail.c_str(), seconds,
                    limit > 0 ? fmt(" (limit %.0f s)", limit).c_str() : "");
        std::fflush(stdout);
    };
    auto timed = [&](int id, const char* name, std::function<Verdict()> f, double limit = 0) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = f();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        report_line(id, name, v, seconds_since(t0), limit);
    };

    timed(1, "CC-weighted aggregate", aggregate_arithmetic, 1);
    timed(2, "Levenshtein oracle", levenshtein_oracle, 10);
    timed(3, "length-band pruning", pruning_soundness);
    timed(4, "union rule", union_example);
    timed(5, "embedding invariance", embedding_invariance);
    timed(6, "CVE versions check", cve_oracle);
    timed(7, "extraction round trip", extraction_round_trip, 30);
    timed(8, "decoder golden table", decoder_golden);

    CorpusRun run;
    std::string corpus_error;
    try {
        run = run_corpus();
    } catch (const std::exception& e) {
        corpus_error = e.what();
    }
    if (!corpus_error.empty()) {
        report_line(9, "end-to-end detection", {false, "exception: " + corpus_error}, 0, 60);
        report_line(11, "per-image scan time", {false, "exception: " + corpus_error}, 0, 0);
    } else {
        const auto& t = run.eval.tpc_level;
        const auto& v = run.eval.version_level;
        report_line(9, "end-to-end detection",
                    {run.images == 20 && run.failed == 0 && t.precision == 1.0 && t.recall >= 0.95 && v.recall >= 0.90,
                     fmt("%d images; TPC P %.4f (%d/%d) R %.4f (%d/%d); version P %.4f R %.4f (%d/%d)", run.images,
                         t.precision, t.tp, t.tp + t.fp, t.recall, t.tp, t.tp + t.fn, v.precision, v.recall, v.tp,
                         v.tp + v.fn)},
                    run.total_seconds, 60);
        report_line(11, "per-image scan time",
                    {run.images == 20 && run.failed == 0 && run.worst_image_seconds <= 10.0,
                     fmt("slowest image %s %.3f s, mean %.3f s", run.worst_image.c_str(), run.worst_image_seconds,
                         run.total_seconds / std::max(1, run.images))},
                    run.worst_image_seconds, 0);
    }
    timed(10, "threshold grid search", tuning_optimum);
    timed(12, "report integrity", report_integrity);

    std::printf("%s: %d of 12 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
