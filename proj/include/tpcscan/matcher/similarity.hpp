#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace tpcscan::matcher {

std::size_t levenshtein(std::string_view a, std::string_view b);

/// The distance when it is at most `bound`, otherwise bound + 1.
std::size_t bounded_levenshtein(std::string_view a, std::string_view b, std::size_t bound);

/// 1 - lev(a, b) / max(|a|, |b|); 1 when both are empty.
double edit_similarity(std::string_view a, std::string_view b);

/// Largest distance d with 1 - d/m >= alpha for strings whose longer side
/// has length m, evaluated with the same arithmetic as edit_similarity.
std::size_t max_distance_for(std::size_t m, double alpha);

/// Candidate length band: ||a| - |b|| <= ceil((1 - alpha) * max(|a|, |b|)).
bool in_length_band(std::size_t la, std::size_t lb, double alpha);

/// Firmware-side feature set indexed by length for banded lookups.
class FeatureIndex {
public:
    FeatureIndex() = default;
    explicit FeatureIndex(const std::set<std::string>& features);

    bool empty() const { return exact_.empty(); }
    std::size_t size() const { return exact_.size(); }

    /// True when some feature has edit_similarity >= alpha to `f`.
    bool has_similar(std::string_view f, double alpha, bool prune = true) const;
    /// Highest edit_similarity of `f` to any feature, 0 for an empty index.
    double best_similarity(std::string_view f) const;

private:
    std::unordered_set<std::string> exact_;
    std::map<std::size_t, std::vector<std::string>> by_length_;
};

/// Number of TPC features with a firmware feature at similarity >= alpha.
/// Exact hits short-circuit; with `prune` only the length band is searched.
std::size_t match_feature_set(const std::set<std::string>& tpc, const std::set<std::string>& fw, double alpha,
                              bool prune = true);
std::size_t match_feature_set(const std::set<std::string>& tpc, const FeatureIndex& fw, double alpha,
                              bool prune = true);

} // namespace tpcscan::matcher
