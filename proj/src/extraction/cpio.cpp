#include "tpcscan/extraction/filesystem.hpp"

#include <cstring>
#include <map>

namespace tpcscan::extraction {

namespace {

constexpr std::size_t newc_header = 110;

std::uint32_t hex_field(ByteView b, std::size_t at, const char* name)
{
    std::uint32_t v = 0;
    for (std::size_t k = 0; k < 8; ++k) {
        const char c = static_cast<char>(b[at + k]);
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw MalformedArchive(std::string("cpio: bad hex digit in ") + name);
        v = (v << 4) | static_cast<std::uint32_t>(d);
    }
    return v;
}

std::size_t align4(std::size_t v) { return (v + 3) & ~std::size_t{3}; }

} // namespace

FilesystemContents extract_cpio(ByteView b)
{
    FilesystemContents out;
    // hard links: newc stores the data with the last link only
    std::map<std::pair<std::uint64_t, std::uint32_t>, std::vector<std::string>> pending_links;
    std::size_t pos = 0;
    for (;;) {
        if (pos + newc_header > b.size()) {
            throw TruncatedImage("cpio: archive ends before trailer");
        }
        const bool crc = std::memcmp(&b[pos], "070702", 6) == 0;
        if (!crc && std::memcmp(&b[pos], "070701", 6) != 0) {
            if (std::memcmp(&b[pos], "070707", 6) == 0) {
                throw UnsupportedVariant("cpio: odc format");
            }
            throw MalformedArchive("cpio: bad header magic at " + std::to_string(pos));
        }
        const std::uint32_t ino = hex_field(b, pos + 6, "ino");
        const std::uint32_t mode = hex_field(b, pos + 14, "mode");
        const std::uint32_t nlink = hex_field(b, pos + 38, "nlink");
        const std::uint32_t filesize = hex_field(b, pos + 54, "filesize");
        const std::uint32_t devmajor = hex_field(b, pos + 62, "devmajor");
        const std::uint32_t devminor = hex_field(b, pos + 70, "devminor");
        const std::uint32_t namesize = hex_field(b, pos + 94, "namesize");
        const std::uint32_t check = hex_field(b, pos + 102, "check");
        if (namesize == 0) {
            throw MalformedArchive("cpio: empty name");
        }
        if (!in_bounds(pos + newc_header, namesize, b.size())) {
            throw TruncatedImage("cpio: name runs past end");
        }
        std::string name(reinterpret_cast<const char*>(&b[pos + newc_header]), namesize - 1);
        if (auto nul = name.find('\0'); nul != std::string::npos) {
            name.resize(nul);
        }
        const std::size_t data_at = align4(pos + newc_header + namesize);
        if (!in_bounds(data_at, filesize, b.size())) {
            throw TruncatedImage("cpio: member data runs past end: " + name);
        }
        pos = align4(data_at + filesize);
        if (name == "TRAILER!!!") {
            break;
        }
        ByteView data = b.subspan(data_at, filesize);
        if (crc) {
            std::uint32_t sum = 0;
            for (std::uint8_t byte : data) sum += byte;
            if (sum != check) {
                throw MalformedArchive("cpio: checksum mismatch for " + name);
            }
        }
        switch (mode & 0170000) {
        case 0100000: {
            const auto key = std::make_pair((std::uint64_t{devmajor} << 32) | devminor, ino);
            if (nlink > 1 && filesize == 0) {
                pending_links[key].push_back(name);
                break;
            }
            if (nlink > 1) {
                for (const auto& link : pending_links[key]) {
                    detail::add_object(out, link, Bytes(data.begin(), data.end()));
                }
                pending_links.erase(key);
            }
            detail::add_object(out, name, Bytes(data.begin(), data.end()));
            break;
        }
        case 0040000:
            break;
        case 0120000:
            out.warnings.push_back("symlink skipped: " + name);
            break;
        default:
            out.warnings.push_back("special file skipped: " + name);
            break;
        }
    }
    for (const auto& [key, links] : pending_links) {
        // every link was empty: the file really is empty
        for (const auto& link : links) {
            detail::add_object(out, link, {});
        }
    }
    return out;
}

} // namespace tpcscan::extraction
