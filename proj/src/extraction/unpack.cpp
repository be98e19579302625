#include "tpcscan/extraction/unpack.hpp"

#include "tpcscan/common/digest.hpp"
#include "tpcscan/extraction/decompress.hpp"
#include "tpcscan/extraction/filesystem.hpp"
#include "tpcscan/extraction/signatures.hpp"

#include <fstream>
#include <sstream>

namespace tpcscan::extraction {

namespace {

std::string offset_hex(std::uint64_t v)
{
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

class Unpacker {
public:
    Unpacker(const UnpackConfig& config, UnpackResult& out) : config_(config), out_(out) {}

    void scan(ByteView bytes, const std::string& prefix, int depth, int parent)
    {
        for (CarvedRegion region : scan_signatures(bytes)) {
            region.depth = depth;
            region.parent = parent;
            const int index = static_cast<int>(out_.regions.size());
            out_.regions.push_back(region);
            const ByteView body = bytes.subspan(region.offset, region.length);
            const std::string here = prefix + offset_hex(region.offset) + "-" + std::string(to_string(region.kind));
            try {
                open(region.kind, body, here, depth, index);
            } catch (const ExtractionError& e) {
                out_.warnings.push_back(here + ": " + e.what());
            }
        }
    }

private:
    void open(RegionKind kind, ByteView body, const std::string& here, int depth, int index)
    {
        if (is_compressed(kind)) {
            if (depth + 1 > config_.max_depth) {
                out_.warnings.push_back(here + ": nesting depth limit reached");
                return;
            }
            Decompressed payload = decompress(body, kind, config_.output_limit);
            const std::size_t before = out_.regions.size();
            scan(payload.data, here + "/", depth + 1, index);
            if (out_.regions.size() == before) {
                add(here + "/payload", std::move(payload.data));
            }
            return;
        }
        if (kind == RegionKind::elf) {
            add(here, Bytes(body.begin(), body.end()));
            return;
        }
        if (kind == RegionKind::cramfs || kind == RegionKind::jffs2) {
            out_.warnings.push_back(here + ": identified only, not extracted");
            return;
        }
        if (kind != RegionKind::cpio && kind != RegionKind::tar && kind != RegionKind::squashfs) {
            return;
        }
        FilesystemContents fs = extract_filesystem(body, kind);
        for (auto& w : fs.warnings) {
            out_.warnings.push_back(here + ": " + w);
        }
        for (auto& obj : fs.objects) {
            const std::string path = here + "/" + obj.path;
            if (depth + 1 <= config_.max_depth && starts_with_container(obj.bytes)) {
                const std::size_t before = out_.regions.size();
                scan(obj.bytes, path + "/", depth + 1, index);
                if (out_.regions.size() != before) {
                    continue;
                }
            }
            add(path, std::move(obj.bytes), obj.kind);
        }
    }

    static bool starts_with_container(ByteView bytes)
    {
        const auto regions = scan_signatures(bytes.first(std::min<std::size_t>(bytes.size(), 4096)));
        return !regions.empty() && regions.front().offset == 0 && regions.front().kind != RegionKind::elf &&
               (is_compressed(regions.front().kind) || is_filesystem(regions.front().kind));
    }

    void add(std::string path, Bytes bytes)
    {
        const ObjectKind kind = classify_object(bytes);
        add(std::move(path), std::move(bytes), kind);
    }

    void add(std::string path, Bytes bytes, ObjectKind kind)
    {
        out_.objects.push_back(ExtractedObject{std::move(path), std::move(bytes), kind});
    }

    const UnpackConfig& config_;
    UnpackResult& out_;
};

} // namespace

UnpackResult unpack(const FirmwareImage& image, const UnpackConfig& config)
{
    UnpackResult result;
    Unpacker(config, result).scan(image.bytes, "", 0, -1);
    result.info = identify_firmware(image, result.regions, result.objects, config.identify);
    return result;
}

nlohmann::json to_json(const FirmwareInfo& info)
{
    return {{"os_class", to_string(info.os_class)},
            {"arch", to_string(info.arch)},
            {"filesystem", to_string(info.filesystem)},
            {"entropy_mean", info.entropy_mean}};
}

FirmwareInfo firmware_info_from_json(const nlohmann::json& j)
{
    FirmwareInfo info;
    info.os_class = os_class_from_string(j.at("os_class").get<std::string>()).value_or(OsClass::unknown);
    info.arch = arch_from_string(j.at("arch").get<std::string>()).value_or(Arch::unknown);
    info.filesystem = filesystem_from_string(j.at("filesystem").get<std::string>()).value_or(FilesystemKind::unknown);
    info.entropy_mean = j.value("entropy_mean", 0.0);
    return info;
}

nlohmann::json manifest_json(const FirmwareImage& image, const UnpackResult& result)
{
    nlohmann::json regions = nlohmann::json::array();
    for (const auto& r : result.regions) {
        regions.push_back({{"offset", r.offset},
                           {"length", r.length},
                           {"kind", to_string(r.kind)},
                           {"depth", r.depth},
                           {"parent", r.parent}});
    }
    nlohmann::json objects = nlohmann::json::array();
    for (const auto& o : result.objects) {
        objects.push_back(
            {{"path", o.path}, {"size", o.bytes.size()}, {"kind", to_string(o.kind)}, {"sha256", sha256_hex(o.bytes)}});
    }
    return {{"image_id", image.id},
            {"name", image.name},
            {"sha256", sha256_hex(image.bytes)},
            {"info", to_json(result.info)},
            {"regions", regions},
            {"objects", objects},
            {"warnings", result.warnings}};
}

void write_objects(const UnpackResult& result, const std::filesystem::path& root)
{
    for (const auto& o : result.objects) {
        const std::filesystem::path target = root / o.path;
        std::filesystem::create_directories(target.parent_path());
        std::ofstream f(target, std::ios::binary);
        f.write(reinterpret_cast<const char*>(o.bytes.data()), static_cast<std::streamsize>(o.bytes.size()));
        if (!f) {
            throw Error("cannot write " + target.string());
        }
    }
}

} // namespace tpcscan::extraction
