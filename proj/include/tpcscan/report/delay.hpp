#pragma once

#include "tpcscan/common/date.hpp"
#include "tpcscan/tpcdb/database.hpp"

#include <string>
#include <string_view>

namespace tpcscan::report {

/// The TPC or version is not in the database, or the version has no
/// release date.
class UnknownVersion : public Error {
public:
    using Error::Error;
};

/// No version of the TPC was released on or before the firmware date.
class NoDatedVersions : public Error {
public:
    using Error::Error;
};

struct DelayResult {
    std::string used_version;
    Date used_release{};
    /// Newest release on or before the firmware date.
    std::string latest_version;
    Date latest_release{};
    long days = 0;
};

/// Whole days from the used version's release to the newest release dated
/// on or before `firmware_release`.
DelayResult delay_details(std::string_view tpc, std::string_view used_version, Date firmware_release,
                          const tpcdb::TpcDatabase& db);

long delay_time(std::string_view tpc, std::string_view used_version, Date firmware_release,
                const tpcdb::TpcDatabase& db);

/// latest - used, in days. Negative when `used` is the newer of the two.
long release_gap_days(Date used, Date latest);

} // namespace tpcscan::report
