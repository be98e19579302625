#include "cve_lattice.hpp"
#include "report_gen.hpp"

#include "tpcscan/report/delay.hpp"
#include "tpcscan/report/license.hpp"
#include "tpcscan/report/scan_report.hpp"
#include "tpcscan/report/series.hpp"
#include "tpcscan/report/severity.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace tpcscan;
using namespace tpcscan::report;

namespace {

Date day(const char* s)
{
    return *parse_date(s);
}

matcher::MatchResult match(const std::string& tpc, const std::string& version, double score = 0.9)
{
    matcher::MatchResult m;
    m.tpc = tpc;
    m.version = version;
    m.channel = matcher::Channel::merged;
    m.score = score;
    return m;
}

tpcdb::TpcDatabase heartbleed_db()
{
    tpcdb::TpcDatabase db;
    tpcdb::TpcRecord ssl;
    ssl.name = "openssl";
    ssl.license = "OpenSSL";
    for (const auto& [v, d] : std::vector<std::pair<std::string, std::string>>{
             {"0.9.8b", "2006-05-04"}, {"1.0.1e", "2013-02-11"}, {"1.0.1g", "2014-04-07"}}) {
        ssl.versions.push_back({.version = v, .release_date = day(d.c_str())});
    }
    db.upsert(ssl);
    tpcdb::TpcRecord bb;
    bb.name = "busybox";
    bb.license = "GPL-2.0-only";
    bb.versions = {{.version = "1.20.2", .release_date = day("2012-07-02")}};
    db.upsert(bb);
    tpcdb::TpcRecord z;
    z.name = "zlib";
    z.license = "Zlib";
    z.versions = {{.version = "1.2.8"}};
    db.upsert(z);
    tpcdb::TpcRecord mystery;
    mystery.name = "mystery";
    mystery.versions = {{.version = "1.0"}};
    db.upsert(mystery);
    db.add_cves({testsupport::heartbleed_record()});
    return db;
}

// days since 1970-01-01 by counting whole years and months
long naive_days(int y, int m, int d)
{
    auto leap = [](int yr) { return (yr % 4 == 0 && yr % 100 != 0) || yr % 400 == 0; };
    const int month_len[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    long n = 0;
    for (int yr = 1970; yr < y; ++yr) n += leap(yr) ? 366 : 365;
    for (int mo = 1; mo < m; ++mo) n += month_len[mo - 1] + (mo == 2 && leap(y) ? 1 : 0);
    return n + d - 1;
}

} // namespace

TEST_CASE("severity buckets")
{
    CHECK(severity_bucket(9.8) == Severity::critical);
    CHECK(severity_bucket(7.5) == Severity::high);
    CHECK(severity_bucket(0.0) == Severity::low);
    CHECK(severity_bucket(10.0) == Severity::critical);
    CHECK(severity_bucket(9.0) == Severity::critical);
    CHECK(severity_bucket(8.99) == Severity::high);
    CHECK(severity_bucket(7.0) == Severity::high);
    CHECK(severity_bucket(6.9) == Severity::medium);
    CHECK(severity_bucket(4.0) == Severity::medium);
    CHECK(severity_bucket(3.9) == Severity::low);
    CHECK_THROWS_AS(severity_bucket(-0.1), OutOfRange);
    CHECK_THROWS_AS(severity_bucket(10.1), OutOfRange);
    CHECK_THROWS_AS(severity_bucket(std::numeric_limits<double>::quiet_NaN()), OutOfRange);
    for (auto s : {Severity::critical, Severity::high, Severity::medium, Severity::low}) {
        CHECK(severity_from_string(to_string(s)) == s);
    }
    CHECK_FALSE(severity_from_string("severe"));
}

TEST_CASE("build_report examples")
{
    const auto db = heartbleed_db();
    ImageMeta meta{.id = "fw", .release_date = day("2015-03-01")};

    const auto r = build_report(meta, {}, {match("openssl", "1.0.1e")}, db, 12);
    REQUIRE(r.findings.size() == 1);
    CHECK(r.findings[0].cve.cve_id == "CVE-2014-0160");
    CHECK(r.findings[0].severity == Severity::high);
    CHECK(r.findings[0].disclosed_before_release == true);
    CHECK(r.severity_counts == SeverityCounts{0, 1, 0, 0});
    REQUIRE(r.suggestions.size() == 1);
    CHECK(r.suggestions[0] == "upgrade openssl 1.0.1e → 1.0.1g");
    CHECK(summary_line(r) == "TPCs: 1, Vulns: 1, time: 12 ms");
    CHECK(check_report(r).empty());

    const auto unknown = build_report(meta, {}, {match("openssl", "unknown")}, db);
    CHECK(unknown.findings.empty());
    REQUIRE(unknown.matches.size() == 1);
    CHECK(unknown.matches[0].version == "unknown");
    CHECK(unknown.suggestions.empty());

    const auto empty = build_report(meta, {}, {}, db);
    CHECK(empty.findings.empty());
    CHECK(empty.matches.empty());
    CHECK(empty.severity_counts == SeverityCounts{});
    CHECK(summary_line(empty) == "TPCs: 0, Vulns: 0, time: 0 ms");

    // patched version, no release date on the image
    const auto fixed = build_report({.id = "x"}, {}, {match("openssl", "1.0.1g")}, db);
    CHECK(fixed.findings.empty());
    const auto undated = build_report({.id = "x"}, {}, {match("openssl", "1.0.1a")}, db);
    REQUIRE(undated.findings.size() == 1);
    CHECK_FALSE(undated.findings[0].disclosed_before_release.has_value());
}

TEST_CASE("suggestion when the vulnerable version is the newest")
{
    auto db = heartbleed_db();
    tpcdb::CveRecord c = testsupport::heartbleed_record();
    c.cve_id = "CVE-2099-0001";
    c.ranges = {tpcdb::VersionRange{.exact = {"1.0.1g"}}};
    c.cvss = 9.1;
    db.add_cves({c});
    const auto r = build_report({.id = "x"}, {}, {match("openssl", "1.0.1g")}, db);
    REQUIRE(r.findings.size() == 1);
    CHECK(r.findings[0].severity == Severity::critical);
    REQUIRE(r.suggestions.size() == 1);
    CHECK(r.suggestions[0] == "openssl 1.0.1g is the newest version in the database; patch 1 known CVE");
}

TEST_CASE("license check")
{
    const auto db = heartbleed_db();
    const std::vector<matcher::MatchResult> ms{match("busybox", "1.20.2"), match("zlib", "1.2.8"),
                                               match("mystery", "1.0"), match("notindb", "2")};
    const auto closed = license_check(ms, db, Distribution::closed);
    REQUIRE(closed.flags.size() == 1);
    CHECK(closed.flags[0] == LicenseFlag{"busybox", "GPL-2.0-only"});
    REQUIRE(closed.warnings.size() == 2);
    CHECK(closed.warnings[0] == "mystery: license unknown");
    CHECK(closed.warnings[1] == "notindb: not in the database; license not checked");

    const auto open = license_check(ms, db, Distribution::source_available);
    CHECK(open.flags.empty());
    CHECK(open.warnings.empty());

    const auto r = build_report({.id = "x"}, {}, ms, db);
    REQUIRE(r.license_flags.size() == 1);
    CHECK(r.license_flags[0].tpc == "busybox");
}

TEST_CASE("license families")
{
    CHECK(license_family("GPL-2.0-only") == LicenseFamily::gpl);
    CHECK(license_family("GPL-2.0-or-later") == LicenseFamily::gpl);
    CHECK(license_family("gpl-3.0+") == LicenseFamily::gpl);
    CHECK(license_family("AGPL-3.0-only") == LicenseFamily::agpl);
    CHECK(license_family("LGPL-2.1-or-later") == LicenseFamily::lgpl);
    CHECK(license_family("GNU General Public License v2") == LicenseFamily::gpl);
    CHECK(license_family("GNU Lesser General Public License") == LicenseFamily::lgpl);
    CHECK(license_family("GNU Affero General Public License v3") == LicenseFamily::agpl);
    CHECK(license_family("GPL-2.0-only WITH Linux-syscall-note") == LicenseFamily::gpl);
    CHECK(license_family("MIT OR GPL-2.0-only") == LicenseFamily::permissive);
    CHECK(license_family("(GPL-2.0-only OR AGPL-3.0-only)") == LicenseFamily::gpl);
    CHECK(license_family("MIT AND GPL-3.0-only") == LicenseFamily::gpl);
    CHECK(license_family("Zlib") == LicenseFamily::permissive);
    CHECK(license_family("OpenSSL") == LicenseFamily::permissive);
    CHECK(license_family("BSD-3-Clause") == LicenseFamily::permissive);
    CHECK(license_family("Proprietary") == LicenseFamily::other);
    CHECK(license_family("unknown") == LicenseFamily::unknown);
    CHECK(license_family("") == LicenseFamily::unknown);
    CHECK(license_family("NOASSERTION OR MIT") == LicenseFamily::permissive);
    CHECK(is_copyleft_flagged(LicenseFamily::gpl));
    CHECK(is_copyleft_flagged(LicenseFamily::agpl));
    CHECK_FALSE(is_copyleft_flagged(LicenseFamily::lgpl));
    CHECK_FALSE(is_copyleft_flagged(LicenseFamily::unknown));
}

TEST_CASE("delay time examples")
{
    tpcdb::TpcDatabase db;
    tpcdb::TpcRecord t;
    t.name = "libx";
    t.versions = {{.version = "1.0", .release_date = day("2010-01-01")},
                  {.version = "1.1"},
                  {.version = "2.0", .release_date = day("2015-01-01")},
                  {.version = "3.0", .release_date = day("2019-06-01")}};
    db.upsert(t);

    CHECK(delay_time("libx", "1.0", day("2016-05-05"), db) == 1826);
    const auto d = delay_details("libx", "1.0", day("2016-05-05"), db);
    CHECK(d.latest_version == "2.0");
    CHECK(d.used_version == "1.0");
    CHECK(delay_time("libx", "2.0", day("2016-05-05"), db) == 0);
    CHECK(delay_time("libx", "1.0", day("2020-01-01"), db) == naive_days(2019, 6, 1) - naive_days(2010, 1, 1));
    // the release day itself counts as "on or before"
    CHECK(delay_time("libx", "1.0", day("2015-01-01"), db) == 1826);
    CHECK(delay_time("LIBX", "1.0", day("2010-01-01"), db) == 0);

    CHECK_THROWS_AS(delay_time("libx", "9.9", day("2016-01-01"), db), UnknownVersion);
    CHECK_THROWS_AS(delay_time("libx", "1.1", day("2016-01-01"), db), UnknownVersion);
    CHECK_THROWS_AS(delay_time("nolib", "1.0", day("2016-01-01"), db), UnknownVersion);
    CHECK_THROWS_AS(delay_time("libx", "1.0", day("2009-12-31"), db), NoDatedVersions);
}

TEST_CASE("release gap against a naive day count")
{
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> year(1990, 2040), month(1, 12), dom(1, 28);
    for (int i = 0; i < 2000; ++i) {
        const int y1 = year(rng), m1 = month(rng), d1 = dom(rng);
        const int y2 = year(rng), m2 = month(rng), d2 = dom(rng);
        char a[16], b[16];
        std::snprintf(a, sizeof a, "%04d-%02d-%02d", y1, m1, d1);
        std::snprintf(b, sizeof b, "%04d-%02d-%02d", y2, m2, d2);
        const long gap = release_gap_days(day(a), day(b));
        CHECK(gap == naive_days(y2, m2, d2) - naive_days(y1, m1, d1));
        CHECK(release_gap_days(day(b), day(a)) == -gap);
    }
}

TEST_CASE("series analysis")
{
    auto db = heartbleed_db();
    tpcdb::CveRecord old_cve = testsupport::heartbleed_record();
    old_cve.cve_id = "CVE-2013-9999";
    old_cve.product = "busybox";
    old_cve.ranges = {tpcdb::VersionRange{.end = "1.21.0", .end_inclusive = false}};
    old_cve.published = day("2013-05-01");
    tpcdb::CveRecord late_cve = old_cve;
    late_cve.cve_id = "CVE-2016-9999";
    late_cve.published = day("2016-02-01");
    db.add_cves({old_cve, late_cve});

    std::vector<ScanReport> reports;
    const char* dates[] = {"2012-10-01", "2014-03-01", "2015-08-15"};
    const char* fwv[] = {"1.0.2", "1.0.4", "1.1.0"};
    const char* ssl[] = {"0.9.8b", "1.0.1e", "1.0.1e"};
    for (int i = 0; i < 3; ++i) {
        ImageMeta meta{.id = "fw" + std::to_string(i), .lineage = "r7000", .firmware_version = fwv[i],
                       .release_date = day(dates[i])};
        reports.push_back(build_report(meta, {}, {match("busybox", "1.20.2"), match("openssl", ssl[i])}, db));
    }
    const auto s = series_analysis(reports);
    CHECK(s.lineage == "r7000");
    CHECK(s.images == std::vector<std::string>{"1.0.2", "1.0.4", "1.1.0"});
    CHECK(s.updates == 2);
    CHECK(s.updates_changing_tpcs == 1);
    REQUIRE(s.unchanged.size() == 2);
    CHECK(s.unchanged[0].describe() == "busybox 1.20.2 unchanged across 2 updates");
    CHECK(s.unchanged[1].describe() == "openssl 1.0.1e unchanged across 1 update");
    REQUIRE(s.transitions.size() == 4);
    CHECK(s.transitions[1].tpc == "openssl");
    CHECK(s.transitions[1].changed);
    CHECK_FALSE(s.transitions[0].changed);

    // cells run image by image; busybox carries both CVEs everywhere, the 2013 one
    // predates the 2014 and 2015 releases, Heartbleed only the 2015 one
    REQUIRE(s.cells.size() == 6);
    CHECK(s.cells[0].tpc == "busybox");
    CHECK(s.cells[0].count_text() == "2 (0)");
    CHECK(s.cells[1].tpc == "openssl");
    CHECK(s.cells[1].count_text() == "0 (0)");
    CHECK(s.cells[2].count_text() == "2 (1)");
    CHECK(s.cells[3].tpc == "openssl");
    CHECK(s.cells[3].count_text() == "1 (0)");
    CHECK(s.cells[4].count_text() == "2 (1)");
    CHECK(s.cells[5].image == "fw2");
    CHECK(s.cells[5].count_text() == "1 (1)");
    CHECK(s.total_findings == 8);
    CHECK(s.disclosed_before_release == 3);

    const auto cve_2013 = std::find_if(reports[2].findings.begin(), reports[2].findings.end(),
                                       [](const Finding& f) { return f.cve.cve_id == "CVE-2013-9999"; });
    REQUIRE(cve_2013 != reports[2].findings.end());
    CHECK(cve_2013->disclosed_before_release == true);

    CHECK_THROWS_AS(series_analysis({reports[0]}), InsufficientSeries);
    CHECK_THROWS_AS(series_analysis({}), InsufficientSeries);
    auto other = reports[1];
    other.image.lineage = "other";
    CHECK_THROWS_AS(series_analysis({reports[0], other}), MixedLineage);
}

TEST_CASE("series with a TPC that comes and goes")
{
    const auto db = heartbleed_db();
    std::vector<ScanReport> reports;
    const std::vector<std::vector<matcher::MatchResult>> sets{
        {match("zlib", "1.2.8")}, {}, {match("zlib", "1.2.8")}, {match("zlib", "1.2.8")}};
    int i = 0;
    for (const auto& ms : sets) reports.push_back(build_report({.id = "i" + std::to_string(i++)}, {}, ms, db));
    const auto s = series_analysis(reports);
    REQUIRE(s.transitions.size() == 3);
    CHECK(s.transitions[0].to_version == kAbsent);
    CHECK(s.transitions[0].changed);
    CHECK(s.transitions[1].from_version == kAbsent);
    REQUIRE(s.unchanged.size() == 1);
    CHECK(s.unchanged[0].first_image == "i2");
    CHECK(s.unchanged[0].updates == 1);
    CHECK(s.updates_changing_tpcs == 2);
}

TEST_CASE("report JSON round trip")
{
    const auto db = heartbleed_db();
    ImageMeta meta{.id = "fw", .name = "fw.bin", .vendor = "acme", .lineage = "r1", .firmware_version = "1.0",
                   .release_date = day("2015-03-01")};
    extraction::FirmwareInfo info;
    info.os_class = extraction::OsClass::linux_based;
    info.arch = Arch::riscv32;
    info.filesystem = extraction::FilesystemKind::squashfs;
    info.entropy_mean = 5.25;
    const auto r = build_report(meta, info, {match("openssl", "1.0.1e"), match("busybox", "1.20.2")}, db, 40);
    const auto j = to_json(r);
    const auto back = report_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(back.image == meta);
    CHECK(back.wall_time_ms == 40);
    CHECK_FALSE(to_json(r, false).contains("wall_time_ms"));
    CHECK_THROWS_AS(report_from_json(nlohmann::json::array()), tpcdb::SchemaError);
    auto bad = j;
    bad["schema_version"] = 7;
    CHECK_THROWS_AS(report_from_json(bad), tpcdb::SchemaError);
    bad = j;
    bad["findings"][0]["severity"] = "severe";
    CHECK_THROWS_AS(report_from_json(bad), tpcdb::SchemaError);
    CHECK(render_text(r).find("upgrade openssl 1.0.1e → 1.0.1g") != std::string::npos);
}

TEST_CASE("check_report catches broken reports")
{
    const auto db = heartbleed_db();
    auto r = build_report({.id = "x"}, {}, {match("openssl", "1.0.1e"), match("busybox", "1.20.2")}, db);
    CHECK(check_report(r).empty());
    auto counts = r;
    counts.severity_counts.low += 1;
    CHECK_FALSE(check_report(counts).empty());
    auto orphan = r;
    orphan.matches.erase(orphan.matches.begin() + 1); // openssl
    CHECK_FALSE(check_report(orphan).empty());
    auto sev = r;
    sev.findings[0].severity = Severity::low;
    sev.severity_counts = {0, 0, 0, 1};
    CHECK_FALSE(check_report(sev).empty());
    auto flag = r;
    flag.matches.erase(flag.matches.begin()); // busybox
    CHECK_FALSE(check_report(flag).empty());
}

TEST_CASE("randomized report integrity")
{
    const auto db = testsupport::licensed_lattice(5);
    std::mt19937 rng(99);
    for (int i = 0; i < 300; ++i) {
        const auto meta = testsupport::random_meta(rng, i);
        auto ms = testsupport::random_matches(db, rng);
        const auto r = build_report(meta, {}, ms, db, static_cast<std::int64_t>(rng() % 1000));
        CHECK(check_report(r).empty());
        CHECK(r.severity_counts.total() == static_cast<int>(r.findings.size()));
        std::shuffle(ms.begin(), ms.end(), rng);
        const auto again = build_report(meta, {}, ms, db, 0);
        CHECK(to_json(r, false).dump() == to_json(again, false).dump());
        CHECK(to_json(report_from_json(to_json(r))).dump() == to_json(r).dump());
    }
}
