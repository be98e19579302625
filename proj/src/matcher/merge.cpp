#include "tpcscan/matcher/merge.hpp"

#include "tpcscan/tpcdb/version.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace tpcscan::matcher {

Side reconcile(const MatchResult& a, const MatchResult& b)
{
    const bool ka = a.version_known();
    const bool kb = b.version_known();
    if (ka != kb) return ka ? Side::first : Side::second;
    if (!ka || a.version == b.version) return a.score >= b.score ? Side::first : Side::second;
    if (a.score != b.score) return a.score > b.score ? Side::first : Side::second;
    if (a.channel != b.channel) {
        if (a.channel == Channel::syntax) return Side::first;
        if (b.channel == Channel::syntax) return Side::second;
    }
    return tpcdb::compare_versions(a.version, b.version) >= 0 ? Side::first : Side::second;
}

namespace {

std::string describe(const MatchResult& m)
{
    char score[32];
    std::snprintf(score, sizeof score, "%.4f", m.score);
    return m.version + " (" + std::string(to_string(m.channel)) + ", " + score + ")";
}

MatchResult combine(const MatchResult& a, const MatchResult& b)
{
    const bool first = reconcile(a, b) == Side::first;
    const MatchResult& win = first ? a : b;
    const MatchResult& lose = first ? b : a;
    MatchResult m = win;
    // syntax counts from whichever side has them, the CFG figure likewise
    if (m.evidence.sharing_total == 0) {
        m.evidence.sharing_total = lose.evidence.sharing_total;
        m.evidence.sharing_matched = lose.evidence.sharing_matched;
        m.evidence.unique_total = lose.evidence.unique_total;
        m.evidence.unique_matched = lose.evidence.unique_matched;
    }
    if (m.evidence.acfg_count == 0) {
        m.evidence.cfg_similarity = lose.evidence.cfg_similarity;
        m.evidence.acfg_count = lose.evidence.acfg_count;
    }
    for (const auto& n : lose.notes) {
        if (std::find(m.notes.begin(), m.notes.end(), n) == m.notes.end()) m.notes.push_back(n);
    }
    if (a.version_known() && b.version_known() && a.version != b.version) {
        std::string x = describe(a), y = describe(b);
        if (y < x) std::swap(x, y);
        const std::string note = "version conflict: " + x + " vs " + y + "; kept " + win.version;
        if (std::find(m.notes.begin(), m.notes.end(), note) == m.notes.end()) m.notes.push_back(note);
    }
    return m;
}

} // namespace

std::vector<MatchResult> union_merge(const std::vector<MatchResult>& r_syntax, const std::vector<MatchResult>& r_cfg)
{
    std::map<std::string, std::vector<const MatchResult*>> by_name;
    for (const auto* list : {&r_syntax, &r_cfg}) {
        for (const auto& r : *list) by_name[r.tpc].push_back(&r);
    }
    std::vector<MatchResult> out;
    out.reserve(by_name.size());
    for (const auto& [_, claims] : by_name) {
        MatchResult m = *claims.front();
        for (std::size_t i = 1; i < claims.size(); ++i) m = combine(m, *claims[i]);
        m.channel = Channel::merged;
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace tpcscan::matcher
