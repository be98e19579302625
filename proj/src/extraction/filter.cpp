#include "tpcscan/extraction/filter.hpp"

#include "tpcscan/extraction/signatures.hpp"
#include "tpcscan/extraction/types.hpp"

#include <algorithm>
#include <cctype>

namespace tpcscan::extraction {

namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

bool starts_with(ByteView bytes, std::string_view magic)
{
    return bytes.size() >= magic.size() && as_chars(bytes.first(magic.size())) == magic;
}

std::string_view content_type(ByteView bytes)
{
    if (starts_with(bytes, "%PDF-")) {
        return "pdf";
    }
    if (starts_with(bytes, "dex\n")) {
        return "dex";
    }
    if (starts_with(bytes, "\x89PNG\r\n\x1a\n")) {
        return "png";
    }
    if (starts_with(bytes, "\xFF\xD8\xFF")) {
        return "jpeg";
    }
    std::size_t i = 0;
    while (i < bytes.size() && i < 512 && std::isspace(bytes[i])) {
        ++i;
    }
    const std::string head = lower(as_chars(bytes.subspan(i, std::min<std::size_t>(bytes.size() - i, 16))));
    if (head.starts_with("<!doctype html") || head.starts_with("<html")) {
        return "html";
    }
    return {};
}

} // namespace

FilterDecision filter_candidate(std::string_view name, ByteView bytes, const FilterRules& rules)
{
    const std::string lname = lower(name);
    for (const auto& suffix : rules.reject_suffixes) {
        if (lname.ends_with(suffix)) {
            return {false, "suffix"};
        }
    }
    if (bytes.empty()) {
        return {false, "empty"};
    }
    const auto regions = scan_signatures(bytes);
    if (!regions.empty() && regions.front().offset == 0) {
        return {true, "signature:" + std::string(to_string(regions.front().kind))};
    }
    if (auto type = content_type(bytes); !type.empty()) {
        return {false, "content:" + std::string(type)};
    }
    if (rules.reject_plain_text && regions.empty() && looks_like_text(bytes)) {
        return {false, "content:text"};
    }
    return {true, "default"};
}

} // namespace tpcscan::extraction
