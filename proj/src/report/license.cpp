#include "tpcscan/report/license.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace tpcscan::report {

std::string_view to_string(Distribution d)
{
    return d == Distribution::closed ? "closed" : "source_available";
}

std::optional<Distribution> distribution_from_string(std::string_view s)
{
    if (s == "closed") return Distribution::closed;
    if (s == "source_available") return Distribution::source_available;
    return std::nullopt;
}

std::string_view to_string(LicenseFamily f)
{
    switch (f) {
    case LicenseFamily::gpl: return "GPL";
    case LicenseFamily::agpl: return "AGPL";
    case LicenseFamily::lgpl: return "LGPL";
    case LicenseFamily::permissive: return "permissive";
    case LicenseFamily::other: return "other";
    case LicenseFamily::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

std::string upper(std::string_view s)
{
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t()");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t()");
    return s.substr(b, e - b + 1);
}

// higher = more restrictive
int restrictiveness(LicenseFamily f)
{
    switch (f) {
    case LicenseFamily::agpl: return 5;
    case LicenseFamily::gpl: return 4;
    case LicenseFamily::lgpl: return 3;
    case LicenseFamily::other: return 2;
    case LicenseFamily::permissive: return 1;
    case LicenseFamily::unknown: return 0;
    }
    return 0;
}

std::vector<std::string> split_on(const std::string& s, const std::string& op)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(op, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + op.size();
    }
}

LicenseFamily single_family(const std::string& raw)
{
    std::string id = trim(raw);
    if (const auto with = id.find(" WITH "); with != std::string::npos) id = trim(id.substr(0, with));
    if (id.empty() || id == "UNKNOWN" || id == "NOASSERTION" || id == "NONE") return LicenseFamily::unknown;
    if (id.rfind("AGPL", 0) == 0 || id.find("AFFERO") != std::string::npos) return LicenseFamily::agpl;
    if (id.rfind("LGPL", 0) == 0 || id.find("LESSER GENERAL PUBLIC") != std::string::npos ||
        id.find("LIBRARY GENERAL PUBLIC") != std::string::npos) {
        return LicenseFamily::lgpl;
    }
    if (id.rfind("GPL", 0) == 0 || id.find("GENERAL PUBLIC LICENSE") != std::string::npos) return LicenseFamily::gpl;
    static const std::set<std::string> permissive_prefixes{
        "MIT", "BSD", "APACHE", "ZLIB", "ISC", "OPENSSL", "SSLEAY", "CURL", "PUBLIC-DOMAIN", "UNLICENSE",
        "0BSD", "BSL", "PSF", "X11", "LIBPNG", "BZIP2", "PUBLIC DOMAIN"};
    for (const auto& p : permissive_prefixes) {
        if (id.rfind(p, 0) == 0) return LicenseFamily::permissive;
    }
    return LicenseFamily::other;
}

} // namespace

LicenseFamily license_family(std::string_view license)
{
    const std::string text = upper(license);
    const auto alternatives = split_on(text, " OR ");
    LicenseFamily chosen = LicenseFamily::unknown;
    bool first = true;
    for (const auto& alt : alternatives) {
        LicenseFamily worst = LicenseFamily::unknown;
        for (const auto& term : split_on(alt, " AND ")) {
            const auto f = single_family(term);
            if (restrictiveness(f) > restrictiveness(worst)) worst = f;
        }
        // least restrictive alternative, but a known one beats unknown
        if (first || (worst != LicenseFamily::unknown &&
                      (chosen == LicenseFamily::unknown || restrictiveness(worst) < restrictiveness(chosen)))) {
            chosen = worst;
        }
        first = false;
    }
    return chosen;
}

bool is_copyleft_flagged(LicenseFamily f)
{
    return f == LicenseFamily::gpl || f == LicenseFamily::agpl;
}

LicenseCheck license_check(const std::vector<matcher::MatchResult>& matches, const tpcdb::TpcDatabase& db,
                           Distribution distribution)
{
    LicenseCheck out;
    if (distribution != Distribution::closed) return out;
    std::set<std::string> seen;
    for (const auto& m : matches) {
        if (!seen.insert(tpcdb::normalize_product(m.tpc)).second) continue;
        const auto* rec = db.find(m.tpc);
        if (!rec) {
            out.warnings.push_back(m.tpc + ": not in the database; license not checked");
            continue;
        }
        const auto family = license_family(rec->license);
        if (family == LicenseFamily::unknown) {
            out.warnings.push_back(m.tpc + ": license unknown");
        } else if (is_copyleft_flagged(family)) {
            out.flags.push_back({m.tpc, rec->license});
        }
    }
    std::sort(out.flags.begin(), out.flags.end(),
              [](const LicenseFlag& a, const LicenseFlag& b) { return a.tpc < b.tpc; });
    return out;
}

} // namespace tpcscan::report
