#pragma once

#include "tpcscan/common/bytes.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace tpcscan::matcher {

class InvalidThresholds : public Error {
public:
    using Error::Error;
};

class EmptySignature : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class DegenerateWeights : public Error {
public:
    using Error::Error;
};

class EmptyDataset : public Error {
public:
    using Error::Error;
};

struct Thresholds {
    double alpha = 0.74; // per-feature edit similarity
    double beta = 0.52;  // matched-feature ratio
    double gamma = 0.64; // aggregate ACFG similarity

    /// Throws InvalidThresholds unless each value is in (0, 1].
    void validate() const;
    bool operator==(const Thresholds&) const = default;
};

enum class Channel { syntax, cfg, merged };

std::string_view to_string(Channel c);
Channel channel_from_string(std::string_view s);

struct Evidence {
    int sharing_total = 0;
    int sharing_matched = 0;
    int unique_total = 0;
    int unique_matched = 0;
    /// Aggregate ACFG similarity of the chosen version.
    double cfg_similarity = 0.0;
    int acfg_count = 0;

    bool operator==(const Evidence&) const = default;
};

struct MatchResult {
    std::string tpc;
    std::string version = "unknown";
    Channel channel = Channel::syntax;
    double score = 0.0;
    Evidence evidence;
    std::vector<std::string> notes;

    bool version_known() const;
    bool operator==(const MatchResult&) const = default;
};

nlohmann::json to_json(const MatchResult& m);
MatchResult match_from_json(const nlohmann::json& j);

} // namespace tpcscan::matcher
