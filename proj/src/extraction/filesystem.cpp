#include "tpcscan/extraction/filesystem.hpp"

#include <algorithm>

namespace tpcscan::extraction {

std::string normalize_member_path(std::string_view path)
{
    std::vector<std::string_view> parts;
    std::size_t pos = 0;
    while (pos <= path.size()) {
        const std::size_t slash = std::min(path.find('/', pos), path.size());
        const std::string_view part = path.substr(pos, slash - pos);
        pos = slash + 1;
        if (part.empty() || part == ".") {
            continue;
        }
        if (part == "..") {
            return {};
        }
        parts.push_back(part);
    }
    std::string out;
    for (const auto& part : parts) {
        if (!out.empty()) out += '/';
        out += part;
    }
    return out;
}

namespace detail {

void add_object(FilesystemContents& out, std::string_view raw_path, Bytes bytes)
{
    std::string path = normalize_member_path(raw_path);
    if (path.empty()) {
        out.warnings.push_back("skipped unsafe or empty path: " + std::string(raw_path));
        return;
    }
    const ObjectKind kind = classify_object(bytes);
    auto existing = std::find_if(out.objects.begin(), out.objects.end(),
                                 [&](const ExtractedObject& o) { return o.path == path; });
    if (existing != out.objects.end()) {
        out.warnings.push_back("duplicate member replaced: " + path);
        existing->bytes = std::move(bytes);
        existing->kind = kind;
        return;
    }
    out.objects.push_back(ExtractedObject{std::move(path), std::move(bytes), kind});
}

} // namespace detail

FilesystemContents extract_filesystem(ByteView bytes, RegionKind kind)
{
    switch (kind) {
    case RegionKind::cpio: return extract_cpio(bytes);
    case RegionKind::tar: return extract_tar(bytes);
    case RegionKind::squashfs: return extract_squashfs(bytes);
    case RegionKind::cramfs:
    case RegionKind::jffs2:
        throw UnsupportedVariant(std::string(to_string(kind)) + " is identified but not extracted");
    default:
        throw UnsupportedVariant("not a filesystem region: " + std::string(to_string(kind)));
    }
}

} // namespace tpcscan::extraction
