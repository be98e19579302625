#include "tpcscan/extraction/types.hpp"

#include "tpcscan/binfeat/elf.hpp"

#include <algorithm>

namespace tpcscan::extraction {

std::string_view to_string(RegionKind kind)
{
    switch (kind) {
    case RegionKind::gzip: return "gzip";
    case RegionKind::xz: return "xz";
    case RegionKind::lzma: return "lzma";
    case RegionKind::squashfs: return "squashfs";
    case RegionKind::cramfs: return "cramfs";
    case RegionKind::jffs2: return "jffs2";
    case RegionKind::cpio: return "cpio";
    case RegionKind::tar: return "tar";
    case RegionKind::elf: return "elf";
    case RegionKind::uimage: return "uimage";
    case RegionKind::unknown: break;
    }
    return "unknown";
}

std::string_view to_string(ObjectKind kind)
{
    switch (kind) {
    case ObjectKind::elf_binary: return "elf_binary";
    case ObjectKind::text: return "text";
    case ObjectKind::data: break;
    }
    return "data";
}

std::string_view to_string(OsClass os)
{
    switch (os) {
    case OsClass::linux_based: return "linux_based";
    case OsClass::monolithic: return "monolithic";
    case OsClass::encrypted: return "encrypted";
    case OsClass::unknown: break;
    }
    return "unknown";
}

std::string_view to_string(FilesystemKind fs)
{
    switch (fs) {
    case FilesystemKind::squashfs: return "squashfs";
    case FilesystemKind::cramfs: return "cramfs";
    case FilesystemKind::jffs2: return "jffs2";
    case FilesystemKind::cpio: return "cpio";
    case FilesystemKind::tar: return "tar";
    case FilesystemKind::none: return "none";
    case FilesystemKind::unknown: break;
    }
    return "unknown";
}

std::optional<OsClass> os_class_from_string(std::string_view s)
{
    for (auto v : {OsClass::linux_based, OsClass::monolithic, OsClass::encrypted, OsClass::unknown}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    return std::nullopt;
}

std::optional<FilesystemKind> filesystem_from_string(std::string_view s)
{
    for (auto v : {FilesystemKind::squashfs, FilesystemKind::cramfs, FilesystemKind::jffs2, FilesystemKind::cpio,
                   FilesystemKind::tar, FilesystemKind::none, FilesystemKind::unknown}) {
        if (to_string(v) == s) {
            return v;
        }
    }
    return std::nullopt;
}

bool is_filesystem(RegionKind kind)
{
    return filesystem_of(kind).has_value();
}

bool is_compressed(RegionKind kind)
{
    return kind == RegionKind::gzip || kind == RegionKind::xz || kind == RegionKind::lzma;
}

std::optional<FilesystemKind> filesystem_of(RegionKind kind)
{
    switch (kind) {
    case RegionKind::squashfs: return FilesystemKind::squashfs;
    case RegionKind::cramfs: return FilesystemKind::cramfs;
    case RegionKind::jffs2: return FilesystemKind::jffs2;
    case RegionKind::cpio: return FilesystemKind::cpio;
    case RegionKind::tar: return FilesystemKind::tar;
    default: return std::nullopt;
    }
}

bool looks_like_text(ByteView bytes)
{
    const auto probe = bytes.first(std::min<std::size_t>(bytes.size(), 64 * 1024));
    if (probe.empty()) {
        return false;
    }
    std::size_t printable = 0;
    for (auto b : probe) {
        if (b == 0) {
            return false;
        }
        if ((b >= 0x20 && b < 0x7F) || b == '\n' || b == '\r' || b == '\t' || b == '\f' || b >= 0x80) {
            ++printable;
        }
    }
    return printable * 100 >= probe.size() * 95;
}

ObjectKind classify_object(ByteView bytes)
{
    if (bytes.size() >= 4 && bytes[0] == 0x7F && bytes[1] == 'E' && bytes[2] == 'L' && bytes[3] == 'F') {
        return ObjectKind::elf_binary;
    }
    return looks_like_text(bytes) ? ObjectKind::text : ObjectKind::data;
}

} // namespace tpcscan::extraction
