#include "tpcscan/matcher/evaluation.hpp"

#include "tpcscan/tpcdb/types.hpp"
#include "tpcscan/tpcdb/version.hpp"

#include <algorithm>

namespace tpcscan::matcher {

namespace {

void finish(LevelMetrics& m)
{
    m.precision_defined = m.tp + m.fp > 0;
    m.precision = m.precision_defined ? static_cast<double>(m.tp) / (m.tp + m.fp) : 1.0;
    m.recall = m.tp + m.fn > 0 ? static_cast<double>(m.tp) / (m.tp + m.fn) : 1.0;
}

} // namespace

Evaluation evaluate(const std::vector<std::vector<MatchResult>>& results, const std::vector<TruthSet>& truth)
{
    if (results.size() != truth.size()) throw Error("results and truth cover different numbers of images");
    Evaluation e;
    for (std::size_t i = 0; i < results.size(); ++i) {
        std::set<std::string> truth_names;
        for (const auto& [name, _] : truth[i]) truth_names.insert(tpcdb::normalize_product(name));
        std::set<std::string> predicted;
        for (const auto& m : results[i]) predicted.insert(tpcdb::normalize_product(m.tpc));
        for (const auto& p : predicted) (truth_names.count(p) ? e.tpc_level.tp : e.tpc_level.fp)++;
        for (const auto& t : truth_names) e.tpc_level.fn += predicted.count(t) ? 0 : 1;

        std::vector<bool> found(truth[i].size(), false);
        std::vector<std::pair<std::string, std::string>> pairs(truth[i].begin(), truth[i].end());
        for (const auto& m : results[i]) {
            if (!m.version_known()) continue;
            const std::string name = tpcdb::normalize_product(m.tpc);
            bool hit = false;
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                if (tpcdb::normalize_product(pairs[k].first) == name &&
                    tpcdb::versions_equivalent(pairs[k].second, m.version)) {
                    hit = true;
                    found[k] = true;
                }
            }
            (hit ? e.version_level.tp : e.version_level.fp)++;
        }
        e.version_level.fn += static_cast<int>(std::count(found.begin(), found.end(), false));
    }
    finish(e.tpc_level);
    finish(e.version_level);
    return e;
}

namespace {

nlohmann::json level_json(const LevelMetrics& m)
{
    return {{"tp", m.tp},
            {"fp", m.fp},
            {"fn", m.fn},
            {"precision", m.precision},
            {"precision_defined", m.precision_defined},
            {"recall", m.recall}};
}

} // namespace

nlohmann::json to_json(const Evaluation& e)
{
    return {{"tpc_level", level_json(e.tpc_level)}, {"version_level", level_json(e.version_level)}};
}

} // namespace tpcscan::matcher
