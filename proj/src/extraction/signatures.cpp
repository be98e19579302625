#include "tpcscan/extraction/signatures.hpp"

#include "tpcscan/binfeat/elf.hpp"
#include "tpcscan/extraction/decompress.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <optional>

namespace tpcscan::extraction {

namespace {

struct Hit {
    RegionKind kind;
    std::optional<std::uint64_t> length; // nullopt: extend to next region
    bool opaque = false;                 // do not rescan the interior
};

bool has(ByteView b, std::size_t at, std::string_view magic)
{
    return at + magic.size() <= b.size() && std::memcmp(&b[at], magic.data(), magic.size()) == 0;
}

std::optional<std::uint64_t> parse_hex8(ByteView b, std::size_t at)
{
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < 8; ++k) {
        const char c = static_cast<char>(b[at + k]);
        v <<= 4;
        if (c >= '0' && c <= '9') v |= static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint64_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint64_t>(c - 'A' + 10);
        else return std::nullopt;
    }
    return v;
}

// Compressed streams end where the decoder stops, so a trial decode gives
// the exact length. Undecodable candidates keep the extend rule, except for
// lzma whose weak magic needs the decode as confirmation.
std::optional<Hit> stream_hit(ByteView b, std::size_t i, RegionKind kind)
{
    if (auto len = compressed_stream_length(b.subspan(i), kind)) {
        return Hit{kind, *len, true};
    }
    if (kind == RegionKind::lzma) {
        return std::nullopt;
    }
    return Hit{kind, std::nullopt};
}

std::optional<Hit> match_gzip(ByteView b, std::size_t i)
{
    if (i + 10 <= b.size() && b[i] == 0x1F && b[i + 1] == 0x8B && b[i + 2] == 0x08 && (b[i + 3] & 0xE0) == 0) {
        return stream_hit(b, i, RegionKind::gzip);
    }
    return std::nullopt;
}

std::optional<Hit> match_xz(ByteView b, std::size_t i)
{
    if (has(b, i, std::string_view("\xFD" "7zXZ\0", 6)) && i + 8 <= b.size() && b[i + 6] == 0 && b[i + 7] < 0x10) {
        return stream_hit(b, i, RegionKind::xz);
    }
    return std::nullopt;
}

std::optional<Hit> match_lzma(ByteView b, std::size_t i)
{
    if (i + 13 > b.size() || b[i] != 0x5D) {
        return std::nullopt;
    }
    const std::uint32_t dict = load_le32(&b[i + 1]);
    if (dict < (1u << 12) || dict > (1u << 28) || (dict & (dict - 1)) != 0) {
        return std::nullopt;
    }
    const std::uint64_t size = load_le64(&b[i + 5]);
    if (size != ~std::uint64_t{0} && size >= (std::uint64_t{1} << 32)) {
        return std::nullopt;
    }
    return stream_hit(b, i, RegionKind::lzma);
}

std::optional<Hit> match_squashfs(ByteView b, std::size_t i)
{
    const bool le = has(b, i, "hsqs");
    const bool be = has(b, i, "sqsh");
    if (!le && !be) {
        return std::nullopt;
    }
    if (i + 96 > b.size()) {
        // too short to validate; still worth reporting
        return Hit{RegionKind::squashfs, std::nullopt};
    }
    const std::uint16_t major = le ? load_le16(&b[i + 28]) : load_be16(&b[i + 28]);
    if (major == 4 && le) {
        const std::uint32_t block_size = load_le32(&b[i + 12]);
        const std::uint16_t block_log = load_le16(&b[i + 22]);
        const std::uint64_t used = load_le64(&b[i + 40]);
        if (block_log <= 31 && block_size == (1u << block_log) && used >= 96 && in_bounds(i, used, b.size())) {
            return Hit{RegionKind::squashfs, used, true};
        }
        return Hit{RegionKind::squashfs, std::nullopt};
    }
    return Hit{RegionKind::squashfs, std::nullopt};
}

std::optional<Hit> match_cramfs(ByteView b, std::size_t i)
{
    const bool le = has(b, i, "\x45\x3D\xCD\x28");
    const bool be = has(b, i, "\x28\xCD\x3D\x45");
    if ((!le && !be) || !has(b, i + 16, "Compressed ROMFS")) {
        return std::nullopt;
    }
    const std::uint32_t size = le ? load_le32(&b[i + 4]) : load_be32(&b[i + 4]);
    if (size >= 64 && in_bounds(i, size, b.size())) {
        return Hit{RegionKind::cramfs, size, true};
    }
    return Hit{RegionKind::cramfs, std::nullopt};
}

std::optional<Hit> match_jffs2(ByteView b, std::size_t i)
{
    if (i + 12 > b.size()) {
        return std::nullopt;
    }
    const bool le = b[i] == 0x85 && b[i + 1] == 0x19;
    const bool be = b[i] == 0x19 && b[i + 1] == 0x85;
    if (!le && !be) {
        return std::nullopt;
    }
    const std::uint16_t node = le ? load_le16(&b[i + 2]) : load_be16(&b[i + 2]);
    const std::uint32_t total = le ? load_le32(&b[i + 4]) : load_be32(&b[i + 4]);
    switch (node) {
    case 0xE001: case 0xE002: case 0x2003: case 0x2004: case 0x2006: case 0xE008: case 0xE009:
        break;
    default:
        return std::nullopt;
    }
    if (total < 12) {
        return std::nullopt;
    }
    return Hit{RegionKind::jffs2, std::nullopt};
}

std::optional<std::uint64_t> newc_length(ByteView b, std::size_t start)
{
    std::size_t pos = start;
    for (;;) {
        if (pos + 110 > b.size() || !(has(b, pos, "070701") || has(b, pos, "070702"))) {
            return std::nullopt;
        }
        auto filesize = parse_hex8(b, pos + 54);
        auto namesize = parse_hex8(b, pos + 94);
        if (!filesize || !namesize) {
            return std::nullopt;
        }
        const std::uint64_t name_end = pos + 110 + *namesize;
        const std::uint64_t data_start = start + ((name_end - start + 3) & ~std::uint64_t{3});
        const std::uint64_t data_end = start + ((data_start + *filesize - start + 3) & ~std::uint64_t{3});
        if (name_end > b.size()) {
            return std::nullopt;
        }
        if (*namesize >= 11 && std::memcmp(&b[pos + 110], "TRAILER!!!", 10) == 0) {
            return std::min<std::uint64_t>(data_end, b.size()) - start;
        }
        if (data_end > b.size()) {
            return std::nullopt;
        }
        pos = static_cast<std::size_t>(data_end);
    }
}

std::optional<Hit> match_cpio(ByteView b, std::size_t i)
{
    if (has(b, i, "070701") || has(b, i, "070702")) {
        if (i + 110 > b.size() || !parse_hex8(b, i + 6)) {
            return std::nullopt;
        }
        if (auto len = newc_length(b, i)) {
            return Hit{RegionKind::cpio, *len, true};
        }
        return Hit{RegionKind::cpio, std::nullopt};
    }
    if (has(b, i, "070707") && i + 76 <= b.size()) {
        return Hit{RegionKind::cpio, std::nullopt};
    }
    return std::nullopt;
}

bool tar_checksum_ok(ByteView b, std::size_t h)
{
    std::uint64_t stored = 0;
    bool any = false;
    for (std::size_t k = 148; k < 156; ++k) {
        const char c = static_cast<char>(b[h + k]);
        if (c >= '0' && c <= '7') {
            stored = stored * 8 + static_cast<std::uint64_t>(c - '0');
            any = true;
        } else if (c == ' ' || c == 0) {
            if (any) break;
        } else {
            return false;
        }
    }
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < 512; ++k) {
        sum += (k >= 148 && k < 156) ? ' ' : b[h + k];
    }
    return any && sum == stored;
}

std::optional<Hit> match_tar(ByteView b, std::size_t i)
{
    if (i + 512 > b.size() || !has(b, i + 257, "ustar") || !tar_checksum_ok(b, i)) {
        return std::nullopt;
    }
    std::size_t pos = i;
    while (pos + 512 <= b.size()) {
        if (std::all_of(b.begin() + static_cast<std::ptrdiff_t>(pos), b.begin() + static_cast<std::ptrdiff_t>(pos + 512),
                        [](std::uint8_t c) { return c == 0; })) {
            std::size_t end = pos + 512;
            if (end + 512 <= b.size() &&
                std::all_of(b.begin() + static_cast<std::ptrdiff_t>(end),
                            b.begin() + static_cast<std::ptrdiff_t>(end + 512), [](std::uint8_t c) { return c == 0; })) {
                end += 512;
            }
            return Hit{RegionKind::tar, end - i, true};
        }
        if (!tar_checksum_ok(b, pos)) {
            return Hit{RegionKind::tar, pos - i, true};
        }
        std::uint64_t size = 0;
        if (b[pos + 124] & 0x80) {
            for (std::size_t k = 125; k < 136; ++k) size = (size << 8) | b[pos + k];
        } else {
            for (std::size_t k = 124; k < 136; ++k) {
                const char c = static_cast<char>(b[pos + k]);
                if (c >= '0' && c <= '7') size = size * 8 + static_cast<std::uint64_t>(c - '0');
            }
        }
        const char type = static_cast<char>(b[pos + 156]);
        const bool has_data = !(type == '1' || type == '2' || type == '3' || type == '4' || type == '5' || type == '6');
        const std::uint64_t next = pos + 512 + (has_data ? (size + 511) / 512 * 512 : 0);
        if (next > b.size()) {
            return Hit{RegionKind::tar, b.size() - i, true};
        }
        pos = static_cast<std::size_t>(next);
    }
    return Hit{RegionKind::tar, b.size() - i, true};
}

std::optional<Hit> match_elf(ByteView b, std::size_t i)
{
    if (!binfeat::looks_like_elf(b.subspan(i)) || b[i + 6] != 1 || i + 52 > b.size()) {
        return std::nullopt;
    }
    const bool is64 = b[i + 4] == 2;
    const bool le = b[i + 5] == 1;
    auto u16 = [&](std::size_t off) { return le ? load_le16(&b[i + off]) : load_be16(&b[i + off]); };
    auto u32 = [&](std::size_t off) { return le ? load_le32(&b[i + off]) : load_be32(&b[i + off]); };
    auto u64 = [&](std::size_t off) { return le ? load_le64(&b[i + off]) : load_be64(&b[i + off]); };
    if (is64 && i + 64 > b.size()) {
        return std::nullopt;
    }
    const std::uint16_t type = u16(16);
    if (type < 1 || type > 4 || u16(18) == 0) {
        return std::nullopt;
    }
    const std::uint64_t remaining = b.size() - i;
    std::uint64_t end = is64 ? 64 : 52;
    const std::uint64_t phoff = is64 ? u64(32) : u32(28);
    const std::uint64_t shoff = is64 ? u64(40) : u32(32);
    const std::uint16_t phentsize = u16(is64 ? 54 : 42);
    const std::uint16_t phnum = u16(is64 ? 56 : 44);
    const std::uint16_t shentsize = u16(is64 ? 58 : 46);
    const std::uint16_t shnum = u16(is64 ? 60 : 48);
    if (phnum && in_bounds(phoff, std::uint64_t{phentsize} * phnum, remaining)) {
        end = std::max(end, phoff + std::uint64_t{phentsize} * phnum);
        for (std::uint16_t k = 0; k < phnum; ++k) {
            const std::uint64_t p = phoff + std::uint64_t{k} * phentsize;
            const std::uint64_t off = is64 ? u64(p + 8) : u32(p + 4);
            const std::uint64_t filesz = is64 ? u64(p + 32) : u32(p + 16);
            if (in_bounds(off, filesz, remaining)) end = std::max(end, off + filesz);
        }
    }
    if (shnum && in_bounds(shoff, std::uint64_t{shentsize} * shnum, remaining)) {
        end = std::max(end, shoff + std::uint64_t{shentsize} * shnum);
        for (std::uint16_t k = 0; k < shnum; ++k) {
            const std::uint64_t s = shoff + std::uint64_t{k} * shentsize;
            const std::uint32_t stype = u32(s + 4);
            const std::uint64_t off = is64 ? u64(s + 24) : u32(s + 16);
            const std::uint64_t size = is64 ? u64(s + 32) : u32(s + 20);
            if (stype != 8 && in_bounds(off, size, remaining)) end = std::max(end, off + size);
        }
    }
    return Hit{RegionKind::elf, std::min(end, remaining), true};
}

std::optional<Hit> match_uimage(ByteView b, std::size_t i)
{
    if (i + 64 > b.size() || !has(b, i, "\x27\x05\x19\x56")) {
        return std::nullopt;
    }
    unsigned char header[64];
    std::memcpy(header, &b[i], 64);
    const std::uint32_t stored = load_be32(header + 4);
    std::memset(header + 4, 0, 4);
    if (crc32(0L, header, 64) != stored) {
        return std::nullopt;
    }
    const std::uint64_t size = load_be32(&b[i + 12]);
    return Hit{RegionKind::uimage, std::min<std::uint64_t>(64 + size, b.size() - i)};
}

} // namespace

std::vector<CarvedRegion> scan_signatures(ByteView bytes)
{
    std::vector<CarvedRegion> regions;
    std::vector<bool> extend;
    std::uint64_t opaque_until = 0;
    std::uint64_t jffs2_run = 0; // jffs2 nodes after the first do not open new regions
    bool in_jffs2 = false;

    using Matcher = std::optional<Hit> (*)(ByteView, std::size_t);
    static constexpr Matcher matchers[] = {match_squashfs, match_cramfs, match_cpio, match_tar,   match_elf,
                                           match_uimage,   match_gzip,   match_xz,   match_lzma, match_jffs2};
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        if (i < opaque_until) {
            continue;
        }
        for (auto matcher : matchers) {
            auto hit = matcher(bytes, i);
            if (!hit) {
                continue;
            }
            if (hit->kind == RegionKind::jffs2) {
                if (in_jffs2 && i >= jffs2_run) {
                    break;
                }
                in_jffs2 = true;
                jffs2_run = i;
            } else {
                in_jffs2 = false;
            }
            regions.push_back(CarvedRegion{i, hit->length.value_or(0), hit->kind});
            extend.push_back(!hit->length.has_value());
            if (hit->opaque && hit->length) {
                opaque_until = i + *hit->length;
            }
            break;
        }
    }
    for (std::size_t k = 0; k < regions.size(); ++k) {
        if (extend[k]) {
            const std::uint64_t next = k + 1 < regions.size() ? regions[k + 1].offset : bytes.size();
            regions[k].length = next - regions[k].offset;
        }
    }
    return regions;
}

} // namespace tpcscan::extraction
