#include "tpcscan/matcher/syntactic.hpp"

#include "tpcscan/tpcdb/signatures.hpp"

#include <algorithm>

namespace tpcscan::matcher {

FirmwareIndex::FirmwareIndex(const binfeat::BinaryFeatures& fw)
    : strings(fw.strings), function_names(fw.function_names)
{
}

std::optional<MatchResult> decide_syntax(const std::string& tpc, int sharing_matched, int sharing_total,
                                         const std::vector<VersionCount>& versions, double beta)
{
    if (sharing_total <= 0) return std::nullopt;
    const double ratio = static_cast<double>(sharing_matched) / static_cast<double>(sharing_total);
    if (ratio < beta) return std::nullopt;
    MatchResult m;
    m.tpc = tpc;
    m.channel = Channel::syntax;
    m.score = ratio;
    m.evidence.sharing_total = sharing_total;
    m.evidence.sharing_matched = sharing_matched;

    const VersionCount* best = nullptr;
    double best_ratio = -1.0;
    bool tie = false;
    for (const auto& v : versions) {
        if (v.total <= 0) continue;
        const double r = static_cast<double>(v.matched) / static_cast<double>(v.total);
        if (r < beta) continue;
        if (r > best_ratio) {
            best = &v;
            best_ratio = r;
            tie = false;
        } else if (r == best_ratio) {
            tie = true;
        }
    }
    if (best) {
        m.evidence.unique_total = best->total;
        m.evidence.unique_matched = best->matched;
        if (tie) {
            m.notes.push_back("unique-feature ratio ties across versions");
        } else {
            m.version = best->version;
        }
    }
    return m;
}

namespace {

// Usable features of one TPC against one firmware image.
struct FeatureView {
    std::vector<std::string> strings;
    std::vector<std::string> names;

    int size() const { return static_cast<int>(strings.size() + names.size()); }
};

FeatureView view_of(const std::set<std::string>& strings, const std::set<std::string>& functions, bool use_names)
{
    FeatureView v;
    v.strings.assign(strings.begin(), strings.end());
    if (use_names) {
        for (const auto& f : functions) v.names.push_back(tpcdb::function_name_of(f));
    }
    return v;
}

int count_matched(const FeatureView& v, const FirmwareIndex& fw, double alpha, bool prune)
{
    int n = 0;
    for (const auto& s : v.strings) n += fw.strings.has_similar(s, alpha, prune) ? 1 : 0;
    for (const auto& s : v.names) n += fw.function_names.has_similar(s, alpha, prune) ? 1 : 0;
    return n;
}

std::vector<double> best_of(const FeatureView& v, const FirmwareIndex& fw)
{
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& s : v.strings) out.push_back(fw.strings.best_similarity(s));
    for (const auto& s : v.names) out.push_back(fw.function_names.best_similarity(s));
    return out;
}

template <typename Fn>
void for_each_tpc(const tpcdb::TpcDatabase& db, const FirmwareIndex& fw, std::vector<std::string>* warnings, Fn fn)
{
    const bool names = fw.has_function_names();
    for (const auto& t : db.tpcs) {
        if (t.versions.empty()) continue;
        const auto& first = t.versions.front();
        const FeatureView sharing = view_of(first.sharing_strings, first.sharing_functions, names);
        if (sharing.size() == 0) {
            if (warnings) warnings->push_back("no sharing features for " + t.name + "; skipped by the syntax channel");
            continue;
        }
        std::vector<std::pair<std::string, FeatureView>> unique;
        for (const auto& v : t.versions) {
            unique.emplace_back(v.version, view_of(v.unique_strings, v.unique_functions, names));
        }
        fn(t, sharing, unique);
    }
}

} // namespace

std::vector<TpcSyntaxProfile> syntax_profiles(const tpcdb::TpcDatabase& db, const binfeat::BinaryFeatures& fw,
                                              std::vector<std::string>* warnings)
{
    const FirmwareIndex index(fw);
    std::vector<TpcSyntaxProfile> out;
    for_each_tpc(db, index, warnings, [&](const tpcdb::TpcRecord& t, const FeatureView& sharing, const auto& unique) {
        TpcSyntaxProfile p{t.name, best_of(sharing, index), {}};
        for (const auto& [version, view] : unique) p.versions.push_back({version, best_of(view, index)});
        out.push_back(std::move(p));
    });
    return out;
}

SyntaxMatchOutput syntactic_match(const tpcdb::TpcDatabase& db, const FirmwareIndex& fw, const Thresholds& th,
                                  const SyntaxOptions& options)
{
    th.validate();
    SyntaxMatchOutput out;
    for_each_tpc(db, fw, &out.warnings, [&](const tpcdb::TpcRecord& t, const FeatureView& sharing, const auto& unique) {
        const int matched = count_matched(sharing, fw, th.alpha, options.prune);
        if (static_cast<double>(matched) / sharing.size() < th.beta) return;
        std::vector<VersionCount> counts;
        for (const auto& [version, view] : unique) {
            counts.push_back({version, view.size() ? count_matched(view, fw, th.alpha, options.prune) : 0, view.size()});
        }
        if (auto m = decide_syntax(t.name, matched, sharing.size(), counts, th.beta)) out.results.push_back(std::move(*m));
    });
    std::sort(out.results.begin(), out.results.end(),
              [](const MatchResult& a, const MatchResult& b) { return a.tpc < b.tpc; });
    return out;
}

SyntaxMatchOutput syntactic_match(const tpcdb::TpcDatabase& db, const binfeat::BinaryFeatures& fw,
                                  const Thresholds& th, const SyntaxOptions& options)
{
    return syntactic_match(db, FirmwareIndex(fw), th, options);
}

} // namespace tpcscan::matcher
