#include "tpcscan/report/delay.hpp"

#include "tpcscan/tpcdb/version.hpp"

namespace tpcscan::report {

long release_gap_days(Date used, Date latest)
{
    return days_between(used, latest);
}

DelayResult delay_details(std::string_view tpc, std::string_view used_version, Date firmware_release,
                          const tpcdb::TpcDatabase& db)
{
    const auto* rec = db.find(tpc);
    if (!rec) throw UnknownVersion("unknown TPC: " + std::string(tpc));
    const tpcdb::VersionSignature* used = nullptr;
    for (const auto& v : rec->versions) {
        if (tpcdb::versions_equivalent(v.version, used_version)) {
            used = &v;
            break;
        }
    }
    if (!used) throw UnknownVersion(rec->name + " has no version " + std::string(used_version));
    if (!used->release_date) throw UnknownVersion(rec->name + " " + used->version + " has no release date");

    const tpcdb::VersionSignature* latest = nullptr;
    for (const auto& v : rec->versions) {
        if (!v.release_date || *v.release_date > firmware_release) continue;
        // equal dates: the higher version
        if (!latest || *v.release_date > *latest->release_date ||
            (*v.release_date == *latest->release_date && tpcdb::compare_versions(v.version, latest->version) > 0)) {
            latest = &v;
        }
    }
    if (!latest) {
        throw NoDatedVersions("no " + rec->name + " release on or before " + format_date(firmware_release));
    }
    return {used->version, *used->release_date, latest->version, *latest->release_date,
            release_gap_days(*used->release_date, *latest->release_date)};
}

long delay_time(std::string_view tpc, std::string_view used_version, Date firmware_release,
                const tpcdb::TpcDatabase& db)
{
    return delay_details(tpc, used_version, firmware_release, db).days;
}

} // namespace tpcscan::report
