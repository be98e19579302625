#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace tpcscan::tpcdb {

/// One run of a version string: digits or letters.
struct VersionPart {
    bool numeric = false;
    std::string text; // digits without leading zeros, or lower-cased letters
};

/// Splits on '.', '-', '_' and at digit/letter boundaries. Other characters
/// also separate runs.
std::vector<VersionPart> split_version(std::string_view version);

/// Component-wise order: numbers numerically, letters lexicographically, a
/// letter run before a number run, a missing component before any present
/// one. Strings whose components all tie are ordered by their raw text so
/// the order stays total over distinct strings.
std::strong_ordering compare_versions(std::string_view a, std::string_view b);

/// Same components, ignoring the raw-text tie break ("1.0" and "1_0").
bool versions_equivalent(std::string_view a, std::string_view b);

struct VersionLess {
    bool operator()(std::string_view a, std::string_view b) const { return compare_versions(a, b) < 0; }
};

/// Sentinel used throughout for an undetermined version.
inline constexpr std::string_view unknown_version = "unknown";

inline bool is_unknown_version(std::string_view v) { return v.empty() || v == unknown_version; }

} // namespace tpcscan::tpcdb
