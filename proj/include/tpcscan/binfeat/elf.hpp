#pragma once

#include "tpcscan/common/arch.hpp"
#include "tpcscan/common/bytes.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tpcscan::binfeat {

class NotElf : public Error {
public:
    using Error::Error;
};

class MalformedElf : public Error {
public:
    using Error::Error;
};

enum class SymbolType { notype, object, func, section, file, other };

struct ElfSection {
    std::string name;
    std::uint32_t type = 0;
    std::uint64_t flags = 0;
    std::uint64_t addr = 0;
    std::uint64_t offset = 0;
    std::uint64_t size = 0;

    bool is_alloc() const { return (flags & 0x2) != 0; }
    bool is_write() const { return (flags & 0x1) != 0; }
    bool is_exec() const { return (flags & 0x4) != 0; }
    bool has_file_data() const { return type != 8; } // SHT_NOBITS
};

struct ElfSymbol {
    std::string name;
    std::uint64_t value = 0;
    std::uint64_t size = 0;
    SymbolType type = SymbolType::notype;
    bool global = false;
    bool defined = false;
    bool dynamic = false;
    std::uint16_t section_index = 0;
};

struct AddressSpan {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;

    bool contains(std::uint64_t addr) const { return addr >= begin && addr < end; }
};

struct ElfInfo {
    bool is_64 = false;
    bool little_endian = true;
    std::uint16_t file_type = 0;
    std::uint16_t machine = 0;
    Arch arch = Arch::unknown;
    std::uint64_t entry = 0;
    std::vector<ElfSection> sections;
    std::vector<ElfSymbol> symbols;
    /// Address ranges of allocated, read-only, non-executable sections.
    /// Sorted by begin, non-overlapping.
    std::vector<AddressSpan> string_spans;

    bool in_string_span(std::uint64_t addr) const;
    /// File bytes of a section, or an empty view for NOBITS / out-of-range.
    ByteView section_bytes(ByteView image, const ElfSection& section) const;
};

/// Maps an ELF e_machine value (and class) to the coarse architecture enum.
Arch arch_from_machine(std::uint16_t machine, bool is_64);

/// Parses headers, section table and both symbol tables. Throws NotElf on a
/// bad magic and MalformedElf when a table points outside the buffer.
ElfInfo parse_elf(ByteView bytes);

bool looks_like_elf(ByteView bytes);

} // namespace tpcscan::binfeat
