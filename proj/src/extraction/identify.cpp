#include "tpcscan/extraction/identify.hpp"

#include "tpcscan/binfeat/elf.hpp"
#include "tpcscan/binfeat/riscv.hpp"

#include <map>

namespace tpcscan::extraction {

namespace {

Arch majority_elf_arch(const std::vector<ExtractedObject>& objects)
{
    std::map<Arch, int> votes;
    for (const auto& obj : objects) {
        if (obj.kind != ObjectKind::elf_binary) {
            continue;
        }
        try {
            const Arch a = binfeat::parse_elf(obj.bytes).arch;
            if (a != Arch::unknown) {
                ++votes[a];
            }
        } catch (const Error&) {
            // not every \x7fELF-prefixed member parses
        }
    }
    Arch best = Arch::unknown;
    int best_votes = 0;
    for (const auto& [arch, n] : votes) {
        if (n > best_votes) {
            best = arch;
            best_votes = n;
        }
    }
    return best;
}

} // namespace

Bytes probe_bytes(ByteView image)
{
    if (binfeat::looks_like_elf(image)) {
        try {
            const auto elf = binfeat::parse_elf(image);
            Bytes code;
            for (const auto& sec : elf.sections) {
                if (sec.is_exec() && sec.has_file_data() && in_bounds(sec.offset, sec.size, image.size())) {
                    auto bytes = image.subspan(sec.offset, sec.size);
                    code.insert(code.end(), bytes.begin(), bytes.end());
                }
            }
            return code;
        } catch (const Error&) {
        }
    }
    return Bytes(image.begin(), image.end());
}

FirmwareInfo identify_firmware(const FirmwareImage& image, const std::vector<CarvedRegion>& regions,
                               const std::vector<ExtractedObject>& objects, const IdentifyConfig& config)
{
    FirmwareInfo info;
    info.entropy_mean = mean_block_entropy(image.bytes);
    info.arch = majority_elf_arch(objects);

    // the outermost filesystem names the image; nested ones are payloads
    const CarvedRegion* outer = nullptr;
    for (const auto& r : regions) {
        if (filesystem_of(r.kind) && (!outer || r.depth < outer->depth)) {
            outer = &r;
        }
    }
    if (outer) {
        info.os_class = OsClass::linux_based;
        info.filesystem = *filesystem_of(outer->kind);
        return info;
    }

    if (info.entropy_mean >= config.entropy_ceiling) {
        info.os_class = regions.empty() ? OsClass::encrypted : OsClass::unknown;
        info.filesystem = regions.empty() ? FilesystemKind::unknown : FilesystemKind::none;
        return info;
    }

    info.filesystem = FilesystemKind::none;
    const Bytes probe = probe_bytes(image.bytes);
    if (!probe.empty() && binfeat::valid_instruction_fraction(probe) >= config.min_decode_fraction) {
        info.os_class = OsClass::monolithic;
        if (info.arch == Arch::unknown) {
            info.arch = Arch::riscv32;
        }
    }
    return info;
}

} // namespace tpcscan::extraction
