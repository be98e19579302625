#pragma once

#include "tpcscan/matcher/types.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tpcscan::matcher {

/// Ground truth of one image: (tpc, version) pairs.
using TruthSet = std::set<std::pair<std::string, std::string>>;

struct LevelMetrics {
    int tp = 0;
    int fp = 0;
    int fn = 0;
    double precision = 1.0;
    double recall = 1.0;
    /// False when nothing was predicted; precision is then reported as 1.
    bool precision_defined = true;
};

struct Evaluation {
    LevelMetrics tpc_level;
    LevelMetrics version_level;
};

/// TPC level compares names; version level compares (name, version) and
/// ignores predictions whose version is unknown (their truth pair still
/// counts as a miss). Names compare case-insensitively, versions by
/// components. Throws Error when the two lists differ in length.
Evaluation evaluate(const std::vector<std::vector<MatchResult>>& results, const std::vector<TruthSet>& truth);

nlohmann::json to_json(const Evaluation& e);

} // namespace tpcscan::matcher
