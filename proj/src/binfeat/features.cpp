#include "tpcscan/binfeat/features.hpp"

#include "tpcscan/binfeat/strings.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace tpcscan::binfeat {

namespace {

std::string synthetic_id(std::uint64_t addr)
{
    return "sub_" + hex_u64(addr).substr(2);
}

std::vector<Acfg> functions_in_region(const std::vector<Instruction>& insns,
                                      const std::map<std::uint64_t, std::pair<std::string, std::uint64_t>>& entries,
                                      const ElfInfo* elf, std::vector<std::string>* warnings)
{
    std::vector<Acfg> out;
    if (insns.empty()) {
        return out;
    }
    const std::uint64_t base = insns.front().addr;
    const std::uint64_t end = insns.back().addr + kInstructionWidth;
    for (const auto& [addr, named] : entries) {
        const auto& [name, size] = named;
        if (addr < base || addr >= end) {
            continue;
        }
        std::uint64_t stop = end;
        if (size > 0) {
            stop = std::min(end, addr + size);
        }
        const std::size_t first = static_cast<std::size_t>((addr - base) / kInstructionWidth);
        const std::size_t last = static_cast<std::size_t>((stop - base + kInstructionWidth - 1) / kInstructionWidth);
        std::span<const Instruction> region(insns.data() + first, last - first);
        try {
            Acfg acfg = compute_acfg(recover_cfg(region, addr), elf);
            acfg.function_id = name;
            out.push_back(std::move(acfg));
        } catch (const EmptyFunction& e) {
            if (warnings) {
                warnings->push_back(name + ": " + e.what());
            }
        }
    }
    return out;
}

void add_call_targets(const std::vector<Instruction>& insns,
                      std::map<std::uint64_t, std::pair<std::string, std::uint64_t>>& entries)
{
    if (insns.empty()) {
        return;
    }
    const std::uint64_t base = insns.front().addr;
    const std::uint64_t end = insns.back().addr + kInstructionWidth;
    auto add = [&](std::uint64_t t) {
        if (t >= base && t < end && (t - base) % kInstructionWidth == 0) {
            entries.emplace(t, std::make_pair(synthetic_id(t), std::uint64_t{0}));
        }
    };
    for (std::size_t i = 0; i < insns.size(); ++i) {
        const auto& insn = insns[i];
        if (insn.op == Op::jal && insn.rd != 0) {
            add(*insn.direct_target());
        }
        // unrelaxed "call": auipc rX, hi; jalr ra, lo(rX)
        if (insn.op == Op::auipc && i + 1 < insns.size()) {
            const auto& next = insns[i + 1];
            if (next.op == Op::jalr && next.rd != 0 && next.rs1 == insn.rd) {
                add((insn.addr + static_cast<std::uint64_t>(insn.imm + next.imm)) & 0xFFFFFFFFu);
            }
        }
    }
}

// A flat image has no sections; NUL-terminated printable runs stand in for
// read-only string data.
ElfInfo blob_string_context(ByteView bytes, std::uint64_t load_base, std::size_t min_len)
{
    ElfInfo ctx;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= bytes.size(); ++i) {
        if (i < bytes.size() && is_printable_string_byte(bytes[i])) {
            continue;
        }
        if (i < bytes.size() && bytes[i] == 0 && i - start >= min_len) {
            ctx.string_spans.push_back({load_base + start, load_base + i + 1});
        }
        start = i + 1;
    }
    return ctx;
}

} // namespace

void BinaryFeatures::merge(BinaryFeatures other, std::string_view id_prefix)
{
    strings.merge(other.strings);
    function_names.merge(other.function_names);
    std::unordered_set<std::string> ids;
    for (const auto& a : acfgs) {
        ids.insert(a.function_id);
    }
    for (auto& a : other.acfgs) {
        std::string id = std::string(id_prefix) + a.function_id;
        std::string unique = id;
        for (int n = 2; ids.count(unique) != 0; ++n) {
            unique = id + "#" + std::to_string(n);
        }
        ids.insert(unique);
        a.function_id = std::move(unique);
        acfgs.push_back(std::move(a));
    }
    for (auto& w : other.warnings) {
        warnings.push_back(std::string(id_prefix) + w);
    }
}

std::set<std::string> extract_function_names(const ElfInfo& elf)
{
    std::set<std::string> names;
    for (const auto& sym : elf.symbols) {
        if (sym.type == SymbolType::func && sym.defined && !sym.name.empty()) {
            names.insert(sym.name);
        }
    }
    return names;
}

std::vector<Acfg> elf_acfgs(ByteView bytes, const ElfInfo& elf, std::vector<std::string>* warnings)
{
    std::vector<Acfg> out;
    if (elf.arch != Arch::riscv32 || !elf.little_endian) {
        return out;
    }
    for (std::size_t si = 0; si < elf.sections.size(); ++si) {
        const auto& sec = elf.sections[si];
        if (!sec.is_exec() || !sec.has_file_data() || sec.size == 0) {
            continue;
        }
        const auto insns = decode_range(elf.section_bytes(bytes, sec), sec.addr);

        std::map<std::uint64_t, std::pair<std::string, std::uint64_t>> entries;
        for (const auto& sym : elf.symbols) {
            if (sym.type != SymbolType::func || !sym.defined || sym.section_index != si || sym.name.empty()) {
                continue;
            }
            auto [it, inserted] = entries.emplace(sym.value, std::make_pair(sym.name, sym.size));
            if (!inserted && sym.name < it->second.first) {
                it->second.first = sym.name; // aliases share code; keep one name
            }
        }
        if (entries.empty()) {
            if (elf.entry >= sec.addr && elf.entry < sec.addr + sec.size) {
                entries.emplace(elf.entry, std::make_pair(synthetic_id(elf.entry), std::uint64_t{0}));
            }
            entries.emplace(sec.addr, std::make_pair(synthetic_id(sec.addr), std::uint64_t{0}));
            add_call_targets(insns, entries);
        }
        auto found = functions_in_region(insns, entries, &elf, warnings);
        std::move(found.begin(), found.end(), std::back_inserter(out));
    }
    std::unordered_set<std::string> seen;
    for (auto& a : out) {
        std::string id = a.function_id;
        for (int n = 2; !seen.insert(a.function_id).second; ++n) {
            a.function_id = id + "#" + std::to_string(n);
        }
    }
    return out;
}

BinaryFeatures elf_features(ByteView bytes, const FeatureConfig& config)
{
    BinaryFeatures f;
    f.strings = extract_strings(bytes, config.min_string_len);
    const ElfInfo elf = parse_elf(bytes);
    f.function_names = extract_function_names(elf);
    f.acfgs = elf_acfgs(bytes, elf, &f.warnings);
    return f;
}

std::vector<Acfg> blob_acfgs(ByteView bytes, std::uint64_t load_base, std::vector<std::string>* warnings)
{
    const auto insns = decode_range(bytes, load_base);
    std::map<std::uint64_t, std::pair<std::string, std::uint64_t>> entries;
    if (!insns.empty() && !insns.front().is_data()) {
        entries.emplace(load_base, std::make_pair(synthetic_id(load_base), std::uint64_t{0}));
    }
    add_call_targets(insns, entries);
    const ElfInfo ctx = blob_string_context(bytes, load_base, 4);
    return functions_in_region(insns, entries, &ctx, warnings);
}

BinaryFeatures blob_features(ByteView bytes, std::uint64_t load_base, const FeatureConfig& config)
{
    BinaryFeatures f;
    f.strings = extract_strings(bytes, config.min_string_len);
    f.acfgs = blob_acfgs(bytes, load_base, &f.warnings);
    return f;
}

} // namespace tpcscan::binfeat
