#pragma once

#include "tpcscan/binfeat/acfg.hpp"
#include "tpcscan/matcher/types.hpp"
#include "tpcscan/tpcdb/database.hpp"

#include <string>
#include <vector>

namespace tpcscan::matcher {

/// 7 propagated block attributes followed by 3 function attributes.
inline constexpr std::size_t kEmbeddingSize = binfeat::BlockAttr::kCount + 3;

struct Embedding {
    std::vector<double> vector;
    bool operator==(const Embedding&) const = default;
};

/// e - b + 2.
int cyclomatic_complexity(const binfeat::Acfg& acfg);

/// CC_i / sum(CC). A CC below 1 (disconnected graphs) counts as 1.
/// Throws DegenerateWeights for an empty list.
std::vector<double> cfg_weights(const std::vector<binfeat::Acfg>& acfgs);
std::vector<double> weights_from_complexity(const std::vector<int>& cc);

/// sum(sim_i * weight_i).
double aggregate_similarity(const std::vector<double>& weights, const std::vector<double>& sims);

/// Block vectors x_v = log1p(attributes), then `iterations` rounds of
/// mu_v = (x_v + sum of neighbour mu) / (1 + deg v) over the undirected
/// edge set. Sums are taken in sorted order so that any relabelling of the
/// blocks gives a bit-identical vector.
Embedding embed_acfg(const binfeat::Acfg& acfg, int iterations = 3);

/// (1 + cosine) / 2. Two zero vectors give 1, one zero vector gives 0.5.
/// Throws LengthMismatch.
double acfg_similarity(const Embedding& a, const Embedding& b);

struct CfgOptions {
    int iterations = 3;
    /// Only compare functions whose block count lies in [n/2, 2n].
    bool prune = true;
    /// Rescale each version's aggregate so that the resemblance it reaches
    /// against the other TPCs in the database maps to 0 and identity to 1:
    /// (raw - background) / (1 - background), clamped to [0,1].
    bool calibrate = true;
};

struct VersionScore {
    std::string version;
    /// Score compared against gamma (calibrated when enabled).
    double similarity = 0.0;
    int acfg_count = 0;
    /// Uncalibrated aggregate sum(Sim(ACFG_i) * Weight_i).
    double raw = 0.0;
};

struct TpcCfgScores {
    std::string tpc;
    std::vector<VersionScore> versions;
};

/// Database-side embeddings, weights and calibration backgrounds, computed
/// once and shared by every scan. Immutable after construction.
class CfgMatcher {
public:
    explicit CfgMatcher(const tpcdb::TpcDatabase& db, CfgOptions options = {});

    /// Aggregate similarity for every TPC version that has ACFGs.
    std::vector<TpcCfgScores> score(const std::vector<binfeat::Acfg>& firmware) const;
    /// Versions skipped or left uncalibrated, one warning each.
    const std::vector<std::string>& warnings() const { return warnings_; }
    const CfgOptions& options() const { return options_; }
    /// Background aggregate of a version; 0 when not calibrated.
    double background(const std::string& tpc, const std::string& version) const;

    Embedding embed(const binfeat::Acfg& acfg) const;

private:
    struct Function {
        Embedding embedding;
        std::size_t blocks = 0;
    };
    struct Version {
        std::string version;
        std::vector<Function> functions;
        std::vector<double> weights;
        double background = 0.0;
        bool scorable = true;
    };
    struct Tpc {
        std::string name;
        std::vector<Version> versions;
    };
    using Candidates = std::vector<std::pair<std::size_t, const Embedding*>>;

    double aggregate(const Version& v, const Candidates& candidates) const;

    CfgOptions options_;
    std::vector<Tpc> tpcs_;
    std::vector<std::string> warnings_;
};

/// For one TPC: the best-scoring version at or above gamma. A tie within
/// 1e-6 between versions gives "unknown". Nothing above gamma gives no
/// result.
std::optional<MatchResult> select_cfg_version(const TpcCfgScores& scores, double gamma);

struct CfgMatchOutput {
    std::vector<MatchResult> results;
    std::vector<std::string> warnings;
};

CfgMatchOutput cfg_match(const CfgMatcher& matcher, const std::vector<binfeat::Acfg>& firmware, const Thresholds& th);
CfgMatchOutput cfg_match(const tpcdb::TpcDatabase& db, const std::vector<binfeat::Acfg>& firmware,
                         const Thresholds& th, const CfgOptions& options = {});

} // namespace tpcscan::matcher
