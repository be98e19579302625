#include "tpcscan/matcher/acfg_match.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace tpcscan::matcher {

int cyclomatic_complexity(const binfeat::Acfg& acfg)
{
    return static_cast<int>(acfg.edges.size()) - static_cast<int>(acfg.blocks.size()) + 2;
}

std::vector<double> weights_from_complexity(const std::vector<int>& cc)
{
    if (cc.empty()) throw DegenerateWeights("no CFGs to weight");
    double total = 0.0;
    for (int c : cc) total += std::max(c, 1);
    if (total <= 0.0) throw DegenerateWeights("total cyclomatic complexity is not positive");
    std::vector<double> w;
    w.reserve(cc.size());
    for (int c : cc) w.push_back(std::max(c, 1) / total);
    return w;
}

std::vector<double> cfg_weights(const std::vector<binfeat::Acfg>& acfgs)
{
    std::vector<int> cc;
    cc.reserve(acfgs.size());
    for (const auto& a : acfgs) cc.push_back(cyclomatic_complexity(a));
    return weights_from_complexity(cc);
}

double aggregate_similarity(const std::vector<double>& weights, const std::vector<double>& sims)
{
    if (weights.size() != sims.size()) throw LengthMismatch("weights and similarities differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) total += weights[i] * sims[i];
    return std::clamp(total, 0.0, 1.0);
}

namespace {

double sorted_sum(std::vector<double>& values)
{
    std::sort(values.begin(), values.end());
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

} // namespace

Embedding embed_acfg(const binfeat::Acfg& acfg, int iterations)
{
    constexpr std::size_t K = binfeat::BlockAttr::kCount;
    const std::size_t n = acfg.blocks.size();
    std::vector<std::array<double, K>> x(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto attrs = acfg.blocks[v].as_array();
        for (std::size_t k = 0; k < K; ++k) x[v][k] = std::log1p(static_cast<double>(attrs[k]));
    }
    std::vector<std::set<std::uint32_t>> nbrs(n);
    for (const auto& [u, v] : acfg.edges) {
        if (u == v || u >= n || v >= n) continue;
        nbrs[u].insert(v);
        nbrs[v].insert(u);
    }
    auto mu = x;
    std::vector<double> scratch;
    for (int t = 0; t < iterations; ++t) {
        auto next = mu;
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t k = 0; k < K; ++k) {
                scratch.clear();
                for (auto u : nbrs[v]) scratch.push_back(mu[u][k]);
                next[v][k] = (x[v][k] + sorted_sum(scratch)) / (1.0 + static_cast<double>(nbrs[v].size()));
            }
        }
        mu = std::move(next);
    }
    Embedding e;
    e.vector.reserve(kEmbeddingSize);
    for (std::size_t k = 0; k < K; ++k) {
        scratch.clear();
        for (std::size_t v = 0; v < n; ++v) scratch.push_back(mu[v][k]);
        e.vector.push_back(sorted_sum(scratch));
    }
    e.vector.push_back(std::log1p(static_cast<double>(acfg.func_attrs.n_blocks)));
    e.vector.push_back(std::log1p(static_cast<double>(acfg.func_attrs.n_edges)));
    e.vector.push_back(std::log1p(static_cast<double>(acfg.func_attrs.n_variables)));
    return e;
}

double acfg_similarity(const Embedding& a, const Embedding& b)
{
    if (a.vector.size() != b.vector.size()) throw LengthMismatch("embedding lengths differ");
    if (a == b) return 1.0;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.vector.size(); ++i) {
        dot += a.vector[i] * b.vector[i];
        na += a.vector[i] * a.vector[i];
        nb += b.vector[i] * b.vector[i];
    }
    if (na == 0.0 && nb == 0.0) return 1.0;
    if (na == 0.0 || nb == 0.0) return 0.5;
    const double cosine = std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
    return std::clamp((1.0 + cosine) / 2.0, 0.0, 1.0);
}

namespace {

void sort_by_blocks(std::vector<std::pair<std::size_t, const Embedding*>>& c)
{
    std::stable_sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
}

} // namespace

CfgMatcher::CfgMatcher(const tpcdb::TpcDatabase& db, CfgOptions options) : options_(options)
{
    for (const auto& t : db.tpcs) {
        Tpc tpc{t.name, {}};
        for (const auto& v : t.versions) {
            if (v.acfgs.empty()) {
                warnings_.push_back("no ACFGs for " + t.name + " " + v.version + "; skipped by the CFG channel");
                continue;
            }
            Version ver{v.version, {}, cfg_weights(v.acfgs)};
            for (const auto& a : v.acfgs) ver.functions.push_back({embed_acfg(a, options_.iterations), a.blocks.size()});
            tpc.versions.push_back(std::move(ver));
        }
        if (!tpc.versions.empty()) tpcs_.push_back(std::move(tpc));
    }
    if (!options_.calibrate) return;

    for (std::size_t i = 0; i < tpcs_.size(); ++i) {
        Candidates pool;
        for (std::size_t j = 0; j < tpcs_.size(); ++j) {
            if (j == i) continue;
            for (const auto& v : tpcs_[j].versions) {
                for (const auto& f : v.functions) pool.emplace_back(f.blocks, &f.embedding);
            }
        }
        if (pool.empty()) {
            warnings_.push_back("no other TPC to calibrate " + tpcs_[i].name + " against; CFG scores are raw");
            continue;
        }
        sort_by_blocks(pool);
        for (auto& v : tpcs_[i].versions) {
            v.background = aggregate(v, pool);
            if (1.0 - v.background < 1e-12) {
                v.scorable = false;
                warnings_.push_back("CFG background saturates for " + tpcs_[i].name + " " + v.version +
                                    "; the CFG channel cannot score it");
            }
        }
    }
}

Embedding CfgMatcher::embed(const binfeat::Acfg& acfg) const
{
    return embed_acfg(acfg, options_.iterations);
}

double CfgMatcher::background(const std::string& tpc, const std::string& version) const
{
    for (const auto& t : tpcs_) {
        if (t.name != tpc) continue;
        for (const auto& v : t.versions) {
            if (v.version == version) return v.background;
        }
    }
    return 0.0;
}

double CfgMatcher::aggregate(const Version& v, const Candidates& candidates) const
{
    std::vector<double> sims;
    sims.reserve(v.functions.size());
    for (const auto& f : v.functions) {
        auto lo = candidates.begin();
        auto hi = candidates.end();
        if (options_.prune) {
            lo = std::lower_bound(candidates.begin(), candidates.end(), (f.blocks + 1) / 2,
                                  [](const auto& e, std::size_t n) { return e.first < n; });
            hi = std::upper_bound(candidates.begin(), candidates.end(), 2 * f.blocks,
                                  [](std::size_t n, const auto& e) { return n < e.first; });
        }
        double best = 0.0;
        for (auto it = lo; it < hi && best < 1.0; ++it) {
            best = std::max(best, acfg_similarity(f.embedding, *it->second));
        }
        sims.push_back(best);
    }
    return aggregate_similarity(v.weights, sims);
}

std::vector<TpcCfgScores> CfgMatcher::score(const std::vector<binfeat::Acfg>& firmware) const
{
    std::vector<TpcCfgScores> out;
    if (firmware.empty()) return out;
    std::vector<Embedding> embedded;
    embedded.reserve(firmware.size());
    for (const auto& a : firmware) embedded.push_back(embed(a));
    Candidates fw;
    fw.reserve(firmware.size());
    for (std::size_t i = 0; i < firmware.size(); ++i) fw.emplace_back(firmware[i].blocks.size(), &embedded[i]);
    sort_by_blocks(fw);

    for (const auto& t : tpcs_) {
        TpcCfgScores scores{t.name, {}};
        for (const auto& v : t.versions) {
            const double raw = aggregate(v, fw);
            double sim = raw;
            if (!v.scorable) {
                sim = 0.0;
            } else if (v.background > 0.0) {
                sim = std::clamp((raw - v.background) / (1.0 - v.background), 0.0, 1.0);
            }
            scores.versions.push_back({v.version, sim, static_cast<int>(v.functions.size()), raw});
        }
        out.push_back(std::move(scores));
    }
    return out;
}

std::optional<MatchResult> select_cfg_version(const TpcCfgScores& scores, double gamma)
{
    const VersionScore* best = nullptr;
    for (const auto& v : scores.versions) {
        if (v.similarity >= gamma && (!best || v.similarity > best->similarity)) best = &v;
    }
    if (!best) return std::nullopt;
    bool tie = false;
    for (const auto& v : scores.versions) {
        if (&v != best && v.similarity >= gamma && best->similarity - v.similarity <= 1e-6) tie = true;
    }
    MatchResult m;
    m.tpc = scores.tpc;
    m.channel = Channel::cfg;
    m.score = best->similarity;
    m.evidence.cfg_similarity = best->similarity;
    m.evidence.acfg_count = best->acfg_count;
    if (tie) {
        m.notes.push_back("CFG similarity ties across versions");
    } else {
        m.version = best->version;
    }
    return m;
}

CfgMatchOutput cfg_match(const CfgMatcher& matcher, const std::vector<binfeat::Acfg>& firmware, const Thresholds& th)
{
    th.validate();
    CfgMatchOutput out;
    out.warnings = matcher.warnings();
    for (const auto& s : matcher.score(firmware)) {
        if (auto m = select_cfg_version(s, th.gamma)) out.results.push_back(std::move(*m));
    }
    std::sort(out.results.begin(), out.results.end(),
              [](const MatchResult& a, const MatchResult& b) { return a.tpc < b.tpc; });
    return out;
}

CfgMatchOutput cfg_match(const tpcdb::TpcDatabase& db, const std::vector<binfeat::Acfg>& firmware,
                         const Thresholds& th, const CfgOptions& options)
{
    return cfg_match(CfgMatcher(db, options), firmware, th);
}

} // namespace tpcscan::matcher
