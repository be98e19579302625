#include "tpcscan/extraction/filesystem.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <map>
#include <optional>

namespace tpcscan::extraction {

namespace {

constexpr std::size_t block = 512;

std::string field(ByteView h, std::size_t off, std::size_t len)
{
    const char* p = reinterpret_cast<const char*>(&h[off]);
    return std::string(p, strnlen(p, len));
}

std::uint64_t numeric_field(ByteView h, std::size_t off, std::size_t len)
{
    if (h[off] & 0x80) {
        // GNU base-256
        std::uint64_t v = 0;
        for (std::size_t k = 1; k < len; ++k) v = (v << 8) | h[off + k];
        return v;
    }
    std::uint64_t v = 0;
    bool digits = false;
    for (std::size_t k = 0; k < len; ++k) {
        const char c = static_cast<char>(h[off + k]);
        if (c >= '0' && c <= '7') {
            v = v * 8 + static_cast<std::uint64_t>(c - '0');
            digits = true;
        } else if (c == ' ' || c == '\0') {
            if (digits) break;
        } else {
            throw MalformedArchive("tar: bad octal field");
        }
    }
    return v;
}

bool zero_block(ByteView h)
{
    return std::all_of(h.begin(), h.end(), [](std::uint8_t c) { return c == 0; });
}

void verify_checksum(ByteView h)
{
    const std::uint64_t stored = numeric_field(h, 148, 8);
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < block; ++k) {
        sum += (k >= 148 && k < 156) ? ' ' : h[k];
    }
    if (sum != stored) {
        throw MalformedArchive("tar: header checksum mismatch");
    }
}

std::map<std::string, std::string> parse_pax(ByteView data)
{
    std::map<std::string, std::string> records;
    const std::string_view text = as_chars(data);
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t space = text.find(' ', pos);
        if (space == std::string_view::npos) break;
        std::size_t len = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + space, len);
        if (ec != std::errc() || ptr != text.data() + space || len == 0 || pos + len > text.size()) {
            throw MalformedArchive("tar: bad pax record");
        }
        std::string_view record = text.substr(space + 1, pos + len - space - 1);
        if (!record.empty() && record.back() == '\n') record.remove_suffix(1);
        if (const std::size_t eq = record.find('='); eq != std::string_view::npos) {
            records[std::string(record.substr(0, eq))] = std::string(record.substr(eq + 1));
        }
        pos += len;
    }
    return records;
}

} // namespace

FilesystemContents extract_tar(ByteView b)
{
    FilesystemContents out;
    std::map<std::string, std::string> pax;
    std::optional<std::string> long_name;
    std::size_t pos = 0;
    bool terminated = false;
    while (pos + block <= b.size()) {
        ByteView h = b.subspan(pos, block);
        if (zero_block(h)) {
            terminated = true;
            break;
        }
        verify_checksum(h);
        const char type = static_cast<char>(h[156]);
        std::uint64_t size = numeric_field(h, 124, 12);
        if (auto it = pax.find("size"); it != pax.end()) {
            size = std::stoull(it->second);
        }
        const bool has_data = !(type == '1' || type == '2' || type == '3' || type == '4' || type == '5' || type == '6');
        const std::size_t data_at = pos + block;
        const std::uint64_t data_len = has_data ? size : 0;
        if (!in_bounds(data_at, data_len, b.size())) {
            throw TruncatedImage("tar: member data runs past end");
        }
        ByteView data = b.subspan(data_at, data_len);
        pos = data_at + (data_len + block - 1) / block * block;

        if (type == 'x') {
            pax = parse_pax(data);
            continue;
        }
        if (type == 'g') {
            continue;
        }
        if (type == 'L') {
            long_name = field(data, 0, data.size());
            continue;
        }
        if (type == 'K') {
            continue;
        }

        std::string name;
        if (auto it = pax.find("path"); it != pax.end()) {
            name = it->second;
        } else if (long_name) {
            name = *long_name;
        } else {
            name = field(h, 0, 100);
            const std::string prefix = field(h, 345, 155);
            if (std::memcmp(&h[257], "ustar", 5) == 0 && !prefix.empty()) {
                name = prefix + "/" + name;
            }
        }
        pax.clear();
        long_name.reset();

        switch (type) {
        case '0':
        case '\0':
        case '7':
            detail::add_object(out, name, Bytes(data.begin(), data.end()));
            break;
        case '1': {
            const std::string target = normalize_member_path(field(h, 157, 100));
            auto it = std::find_if(out.objects.begin(), out.objects.end(),
                                   [&](const ExtractedObject& o) { return o.path == target; });
            if (it == out.objects.end()) {
                out.warnings.push_back("hard link to unknown member skipped: " + name);
            } else {
                Bytes copy = it->bytes;
                detail::add_object(out, name, std::move(copy));
            }
            break;
        }
        case '5':
            break;
        case '2':
            out.warnings.push_back("symlink skipped: " + name);
            break;
        default:
            out.warnings.push_back("special entry skipped: " + name);
            break;
        }
    }
    if (!terminated) {
        if (pos < b.size()) {
            throw TruncatedImage("tar: partial header at end");
        }
        out.warnings.push_back("tar: missing end-of-archive marker");
    }
    return out;
}

} // namespace tpcscan::extraction
