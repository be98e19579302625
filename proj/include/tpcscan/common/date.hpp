#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace tpcscan {

using Date = std::chrono::sys_days;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). A trailing time part
/// starting with 'T' is accepted and ignored, as NVD timestamps carry one.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(Date date);

/// Signed whole days from `from` to `to`.
inline long days_between(Date from, Date to)
{
    return static_cast<long>((to - from).count());
}

} // namespace tpcscan
