#pragma once

#include "tpcscan/matcher/types.hpp"
#include "tpcscan/tpcdb/database.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tpcscan::report {

enum class Distribution { source_available, closed };

std::string_view to_string(Distribution d);
std::optional<Distribution> distribution_from_string(std::string_view s);

enum class LicenseFamily { gpl, agpl, lgpl, permissive, other, unknown };

std::string_view to_string(LicenseFamily f);

/// Family of an SPDX-style expression or a spelled-out license name. For
/// "A OR B" the least restrictive alternative counts; for "A AND B" the
/// most restrictive. "WITH <exception>" keeps the base license's family.
LicenseFamily license_family(std::string_view license);

/// GPL and AGPL are the families whose terms closed distribution can break.
bool is_copyleft_flagged(LicenseFamily f);

struct LicenseFlag {
    std::string tpc;
    std::string license;
    bool operator==(const LicenseFlag&) const = default;
};

struct LicenseCheck {
    std::vector<LicenseFlag> flags;
    std::vector<std::string> warnings;
};

/// Flags every matched TPC with a GPL/AGPL license when the firmware is
/// distributed closed. Unknown licenses and TPCs missing from the database
/// only produce warnings. Flags are ordered by TPC name.
LicenseCheck license_check(const std::vector<matcher::MatchResult>& matches, const tpcdb::TpcDatabase& db,
                           Distribution distribution);

} // namespace tpcscan::report
