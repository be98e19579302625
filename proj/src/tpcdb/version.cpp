#include "tpcscan/tpcdb/version.hpp"

#include <cctype>

namespace tpcscan::tpcdb {

std::vector<VersionPart> split_version(std::string_view version)
{
    std::vector<VersionPart> parts;
    std::size_t i = 0;
    while (i < version.size()) {
        const unsigned char c = static_cast<unsigned char>(version[i]);
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < version.size() && std::isdigit(static_cast<unsigned char>(version[j]))) ++j;
            std::string digits(version.substr(i, j - i));
            const auto nz = digits.find_first_not_of('0');
            parts.push_back({true, nz == std::string::npos ? "0" : digits.substr(nz)});
            i = j;
        } else if (std::isalpha(c)) {
            std::size_t j = i;
            std::string letters;
            while (j < version.size() && std::isalpha(static_cast<unsigned char>(version[j]))) {
                letters.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(version[j]))));
                ++j;
            }
            parts.push_back({false, std::move(letters)});
            i = j;
        } else {
            ++i;
        }
    }
    return parts;
}

namespace {

std::strong_ordering compare_parts(const std::vector<VersionPart>& a, const std::vector<VersionPart>& b)
{
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (k >= a.size()) return std::strong_ordering::less;
        if (k >= b.size()) return std::strong_ordering::greater;
        const auto& x = a[k];
        const auto& y = b[k];
        if (x.numeric != y.numeric) {
            return x.numeric ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        if (x.numeric) {
            if (x.text.size() != y.text.size()) return x.text.size() <=> y.text.size();
        }
        if (auto c = x.text.compare(y.text); c != 0) {
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
    }
    return std::strong_ordering::equal;
}

} // namespace

std::strong_ordering compare_versions(std::string_view a, std::string_view b)
{
    if (auto c = compare_parts(split_version(a), split_version(b)); c != 0) {
        return c;
    }
    const int raw = a.compare(b);
    return raw < 0 ? std::strong_ordering::less : raw > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

bool versions_equivalent(std::string_view a, std::string_view b)
{
    return compare_parts(split_version(a), split_version(b)) == 0;
}

} // namespace tpcscan::tpcdb
