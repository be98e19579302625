#include "tpcscan/matcher/tuning.hpp"

#include "tpcscan/matcher/merge.hpp"
#include "tpcscan/matcher/syntactic.hpp"
#include "tpcscan/tpcdb/version.hpp"

#include <cmath>
#include <map>
#include <optional>

namespace tpcscan::matcher {

std::vector<double> threshold_grid(double step)
{
    if (!(step > 0.0 && step < 1.0)) throw Error("grid step must lie in (0, 1)");
    std::vector<double> grid;
    const double inverse = 1.0 / step;
    const double n = std::round(inverse);
    if (std::abs(inverse - n) < 1e-9) {
        for (int k = 1; k <= static_cast<int>(n); ++k) grid.push_back(k / n);
    } else {
        for (int k = 1; k * step < 1.0; ++k) grid.push_back(k * step);
        grid.push_back(1.0);
    }
    return grid;
}

namespace {

// One TPC of one image, with its candidate claims per threshold.
struct Slot {
    std::string tpc;
    std::optional<std::string> truth_version;
    std::optional<TpcSyntaxProfile> syntax;
    std::optional<TpcCfgScores> cfg;
};

int count_at_least(const std::vector<double>& best, double alpha)
{
    int n = 0;
    for (double b : best) n += b >= alpha ? 1 : 0;
    return n;
}

bool is_hit(const std::optional<MatchResult>& s, const std::optional<MatchResult>& c,
            const std::optional<std::string>& truth)
{
    if (!truth) return false;
    const MatchResult* pick = nullptr;
    if (s && c) {
        pick = reconcile(*s, *c) == Side::first ? &*s : &*c;
    } else if (s) {
        pick = &*s;
    } else if (c) {
        pick = &*c;
    }
    return pick && pick->version_known() && tpcdb::versions_equivalent(pick->version, *truth);
}

} // namespace

TuneResult tune_thresholds(const tpcdb::TpcDatabase& db, const std::vector<LabeledImage>& labeled, double grid_step,
                           const CfgOptions& cfg_options)
{
    if (labeled.empty()) throw EmptyDataset("no labeled images to tune on");
    const auto grid = threshold_grid(grid_step);
    const CfgMatcher cfg(db, cfg_options);

    std::vector<Slot> slots;
    int truth_pairs = 0;
    for (const auto& image : labeled) {
        truth_pairs += static_cast<int>(image.truth.size());
        std::map<std::string, Slot> by_tpc;
        for (const auto& t : db.tpcs) by_tpc[t.name].tpc = t.name;
        for (const auto& [name, version] : image.truth) {
            if (const auto* rec = db.find(name)) by_tpc[rec->name].truth_version = version;
        }
        for (auto& p : syntax_profiles(db, image.features)) by_tpc[p.tpc].syntax = std::move(p);
        for (auto& s : cfg.score(image.features.acfgs)) by_tpc[s.tpc].cfg = std::move(s);
        for (auto& [_, slot] : by_tpc) slots.push_back(std::move(slot));
    }

    // Claims per threshold value, so the triple loop only combines them.
    const std::size_t G = grid.size();
    const std::size_t S = slots.size();
    std::vector<std::optional<MatchResult>> cfg_claims(G * S);
    for (std::size_t g = 0; g < G; ++g) {
        for (std::size_t s = 0; s < S; ++s) {
            if (slots[s].cfg) cfg_claims[g * S + s] = select_cfg_version(*slots[s].cfg, grid[g]);
        }
    }

    TuneResult best;
    best.truth_pairs = truth_pairs;
    best.true_positives = -1;
    std::vector<std::optional<MatchResult>> syntax_claims(S);
    for (std::size_t a = 0; a < G; ++a) {
        // matched counts depend on alpha only
        std::vector<int> sharing(S, 0);
        std::vector<std::vector<VersionCount>> versions(S);
        for (std::size_t s = 0; s < S; ++s) {
            if (!slots[s].syntax) continue;
            const auto& p = *slots[s].syntax;
            sharing[s] = count_at_least(p.sharing_best, grid[a]);
            for (const auto& v : p.versions) {
                versions[s].push_back(
                    {v.version, count_at_least(v.unique_best, grid[a]), static_cast<int>(v.unique_best.size())});
            }
        }
        for (std::size_t b = 0; b < G; ++b) {
            for (std::size_t s = 0; s < S; ++s) {
                syntax_claims[s].reset();
                if (slots[s].syntax) {
                    syntax_claims[s] = decide_syntax(slots[s].tpc, sharing[s],
                                                     static_cast<int>(slots[s].syntax->sharing_best.size()),
                                                     versions[s], grid[b]);
                }
            }
            for (std::size_t g = 0; g < G; ++g) {
                int tp = 0;
                for (std::size_t s = 0; s < S; ++s) {
                    tp += is_hit(syntax_claims[s], cfg_claims[g * S + s], slots[s].truth_version) ? 1 : 0;
                }
                if (tp > best.true_positives) {
                    best.true_positives = tp;
                    best.thresholds = {grid[a], grid[b], grid[g]};
                }
            }
        }
    }
    best.tpr = truth_pairs > 0 ? static_cast<double>(best.true_positives) / truth_pairs : 0.0;
    return best;
}

} // namespace tpcscan::matcher
