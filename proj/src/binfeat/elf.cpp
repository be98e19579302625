#include "tpcscan/binfeat/elf.hpp"

#include <algorithm>

namespace tpcscan::binfeat {

namespace {

constexpr std::uint32_t kShtSymtab = 2;
constexpr std::uint32_t kShtDynsym = 11;

class Reader {
public:
    Reader(ByteView data, bool little) : data_(data), little_(little) {}

    std::uint16_t u16(std::uint64_t off) const
    {
        check(off, 2);
        return little_ ? load_le16(&data_[off]) : load_be16(&data_[off]);
    }
    std::uint32_t u32(std::uint64_t off) const
    {
        check(off, 4);
        return little_ ? load_le32(&data_[off]) : load_be32(&data_[off]);
    }
    std::uint64_t u64(std::uint64_t off) const
    {
        check(off, 8);
        return little_ ? load_le64(&data_[off]) : load_be64(&data_[off]);
    }
    std::uint8_t u8(std::uint64_t off) const
    {
        check(off, 1);
        return data_[off];
    }
    void check(std::uint64_t off, std::uint64_t len) const
    {
        if (!in_bounds(off, len, data_.size())) {
            throw MalformedElf("ELF read out of bounds at offset " + hex_u64(off));
        }
    }

private:
    ByteView data_;
    bool little_;
};

std::string read_cstring(ByteView data, std::uint64_t table_off, std::uint64_t table_size, std::uint64_t index)
{
    if (index >= table_size) {
        return {};
    }
    const std::uint64_t start = table_off + index;
    const std::uint64_t limit = table_off + table_size;
    std::uint64_t end = start;
    while (end < limit && data[end] != 0) {
        ++end;
    }
    return std::string(reinterpret_cast<const char*>(&data[start]), end - start);
}

SymbolType symbol_type(std::uint8_t info)
{
    switch (info & 0xF) {
    case 0: return SymbolType::notype;
    case 1: return SymbolType::object;
    case 2: return SymbolType::func;
    case 3: return SymbolType::section;
    case 4: return SymbolType::file;
    default: return SymbolType::other;
    }
}

} // namespace

Arch arch_from_machine(std::uint16_t machine, bool is_64)
{
    switch (machine) {
    case 0xF3: return is_64 ? Arch::unknown : Arch::riscv32;
    case 0x28:
    case 0xB7: return Arch::arm;
    case 0x08:
    case 0x0A: return Arch::mips;
    case 0x03:
    case 0x3E: return Arch::x86;
    default: return Arch::unknown;
    }
}

bool looks_like_elf(ByteView bytes)
{
    return bytes.size() >= 16 && bytes[0] == 0x7F && bytes[1] == 'E' && bytes[2] == 'L' && bytes[3] == 'F' &&
           (bytes[4] == 1 || bytes[4] == 2) && (bytes[5] == 1 || bytes[5] == 2);
}

bool ElfInfo::in_string_span(std::uint64_t addr) const
{
    auto it = std::upper_bound(string_spans.begin(), string_spans.end(), addr,
                               [](std::uint64_t v, const AddressSpan& s) { return v < s.begin; });
    return it != string_spans.begin() && std::prev(it)->contains(addr);
}

ByteView ElfInfo::section_bytes(ByteView image, const ElfSection& section) const
{
    if (!section.has_file_data() || !in_bounds(section.offset, section.size, image.size())) {
        return {};
    }
    return image.subspan(section.offset, section.size);
}

ElfInfo parse_elf(ByteView bytes)
{
    if (!looks_like_elf(bytes)) {
        throw NotElf("missing ELF magic");
    }
    ElfInfo info;
    info.is_64 = bytes[4] == 2;
    info.little_endian = bytes[5] == 1;
    Reader r(bytes, info.little_endian);

    std::uint64_t shoff = 0;
    std::uint16_t shentsize = 0, shnum = 0, shstrndx = 0;
    info.file_type = r.u16(16);
    info.machine = r.u16(18);
    if (info.is_64) {
        info.entry = r.u64(24);
        shoff = r.u64(40);
        shentsize = r.u16(58);
        shnum = r.u16(60);
        shstrndx = r.u16(62);
    } else {
        info.entry = r.u32(24);
        shoff = r.u32(32);
        shentsize = r.u16(46);
        shnum = r.u16(48);
        shstrndx = r.u16(50);
    }
    info.arch = arch_from_machine(info.machine, info.is_64);

    if (shoff == 0 || shnum == 0) {
        return info;
    }
    const std::uint16_t min_entsize = info.is_64 ? 64 : 40;
    if (shentsize < min_entsize) {
        throw MalformedElf("section header entry size too small");
    }
    r.check(shoff, static_cast<std::uint64_t>(shentsize) * shnum);

    struct RawSection {
        std::uint32_t name, type, link;
        std::uint64_t flags, addr, offset, size, entsize;
    };
    std::vector<RawSection> raw(shnum);
    for (std::uint16_t i = 0; i < shnum; ++i) {
        const std::uint64_t base = shoff + static_cast<std::uint64_t>(i) * shentsize;
        auto& s = raw[i];
        s.name = r.u32(base);
        s.type = r.u32(base + 4);
        if (info.is_64) {
            s.flags = r.u64(base + 8);
            s.addr = r.u64(base + 16);
            s.offset = r.u64(base + 24);
            s.size = r.u64(base + 32);
            s.link = r.u32(base + 40);
            s.entsize = r.u64(base + 56);
        } else {
            s.flags = r.u32(base + 8);
            s.addr = r.u32(base + 12);
            s.offset = r.u32(base + 16);
            s.size = r.u32(base + 20);
            s.link = r.u32(base + 24);
            s.entsize = r.u32(base + 36);
        }
        if (s.type != 8 && s.type != 0 && !in_bounds(s.offset, s.size, bytes.size())) {
            throw MalformedElf("section " + std::to_string(i) + " extends past end of file");
        }
    }

    const bool have_names = shstrndx < shnum && raw[shstrndx].type == 3;
    for (const auto& s : raw) {
        ElfSection sec;
        if (have_names) {
            sec.name = read_cstring(bytes, raw[shstrndx].offset, raw[shstrndx].size, s.name);
        }
        sec.type = s.type;
        sec.flags = s.flags;
        sec.addr = s.addr;
        sec.offset = s.offset;
        sec.size = s.size;
        if (sec.is_alloc() && !sec.is_write() && !sec.is_exec() && sec.size > 0 && sec.type == 1) {
            info.string_spans.push_back({sec.addr, sec.addr + sec.size});
        }
        info.sections.push_back(std::move(sec));
    }
    std::sort(info.string_spans.begin(), info.string_spans.end(),
              [](const AddressSpan& a, const AddressSpan& b) { return a.begin < b.begin; });

    for (const auto& s : raw) {
        if (s.type != kShtSymtab && s.type != kShtDynsym) {
            continue;
        }
        if (s.link >= shnum) {
            throw MalformedElf("symbol table links to a missing string table");
        }
        const auto& strtab = raw[s.link];
        const std::uint64_t entsize = info.is_64 ? 24 : 16;
        if (s.entsize != 0 && s.entsize < entsize) {
            throw MalformedElf("symbol entry size too small");
        }
        const std::uint64_t stride = s.entsize ? s.entsize : entsize;
        const std::uint64_t count = s.size / stride;
        for (std::uint64_t i = 1; i < count; ++i) {
            const std::uint64_t base = s.offset + i * stride;
            ElfSymbol sym;
            std::uint32_t name_index = r.u32(base);
            std::uint8_t st_info = 0;
            if (info.is_64) {
                st_info = r.u8(base + 4);
                sym.section_index = r.u16(base + 6);
                sym.value = r.u64(base + 8);
                sym.size = r.u64(base + 16);
            } else {
                sym.value = r.u32(base + 4);
                sym.size = r.u32(base + 8);
                st_info = r.u8(base + 12);
                sym.section_index = r.u16(base + 14);
            }
            sym.name = read_cstring(bytes, strtab.offset, strtab.size, name_index);
            sym.type = symbol_type(st_info);
            sym.global = (st_info >> 4) != 0;
            sym.defined = sym.section_index != 0;
            sym.dynamic = s.type == kShtDynsym;
            info.symbols.push_back(std::move(sym));
        }
    }
    return info;
}

} // namespace tpcscan::binfeat
