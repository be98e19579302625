#pragma once

#include "tpcscan/common/bytes.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string_view>

namespace tpcscan::report {

class OutOfRange : public Error {
public:
    using Error::Error;
};

enum class Severity { critical, high, medium, low };

/// critical >= 9.0, high >= 7.0, medium >= 4.0, low below. Throws
/// OutOfRange outside [0, 10] (NaN included).
Severity severity_bucket(double cvss);

std::string_view to_string(Severity s);
std::optional<Severity> severity_from_string(std::string_view s);

struct SeverityCounts {
    int critical = 0;
    int high = 0;
    int medium = 0;
    int low = 0;

    void add(Severity s);
    int total() const { return critical + high + medium + low; }
    bool operator==(const SeverityCounts&) const = default;
};

nlohmann::json to_json(const SeverityCounts& c);
SeverityCounts severity_counts_from_json(const nlohmann::json& j);

} // namespace tpcscan::report
