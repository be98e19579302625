#pragma once

#include "tpcscan/binfeat/features.hpp"
#include "tpcscan/matcher/similarity.hpp"
#include "tpcscan/matcher/types.hpp"
#include "tpcscan/tpcdb/database.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tpcscan::matcher {

struct SyntaxOptions {
    bool prune = true;
};

/// Firmware strings and function names, indexed once per image.
struct FirmwareIndex {
    FeatureIndex strings;
    FeatureIndex function_names;

    explicit FirmwareIndex(const binfeat::BinaryFeatures& fw);
    /// Stripped firmware carries no names; function features are then
    /// left out of both sides of every ratio.
    bool has_function_names() const { return !function_names.empty(); }
};

struct VersionCount {
    std::string version;
    int matched = 0;
    int total = 0;
};

/// TPC-level: sharing ratio >= beta. Version-level: the version with the
/// highest unique ratio at or above beta; several at that ratio, or none,
/// leave the version unknown. Versions without unique features never match.
std::optional<MatchResult> decide_syntax(const std::string& tpc, int sharing_matched, int sharing_total,
                                         const std::vector<VersionCount>& versions, double beta);

/// Best similarity of every TPC feature against the firmware, for
/// sweeping alpha without re-matching.
struct TpcSyntaxProfile {
    std::string tpc;
    std::vector<double> sharing_best;
    struct Version {
        std::string version;
        std::vector<double> unique_best;
    };
    std::vector<Version> versions;
};

/// TPCs without usable sharing features are left out and reported in
/// `warnings` when given.
std::vector<TpcSyntaxProfile> syntax_profiles(const tpcdb::TpcDatabase& db, const binfeat::BinaryFeatures& fw,
                                              std::vector<std::string>* warnings = nullptr);

struct SyntaxMatchOutput {
    std::vector<MatchResult> results;
    std::vector<std::string> warnings;
};

SyntaxMatchOutput syntactic_match(const tpcdb::TpcDatabase& db, const binfeat::BinaryFeatures& fw,
                                  const Thresholds& th, const SyntaxOptions& options = {});
SyntaxMatchOutput syntactic_match(const tpcdb::TpcDatabase& db, const FirmwareIndex& fw, const Thresholds& th,
                                  const SyntaxOptions& options = {});

} // namespace tpcscan::matcher
