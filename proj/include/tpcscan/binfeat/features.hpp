#pragma once

#include "tpcscan/binfeat/acfg.hpp"
#include "tpcscan/binfeat/elf.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tpcscan::binfeat {

struct FeatureConfig {
    std::size_t min_string_len = 4;
};

struct BinaryFeatures {
    std::set<std::string> strings;
    std::set<std::string> function_names;
    std::vector<Acfg> acfgs;
    std::vector<std::string> warnings;

    /// Appends `other`, prefixing its function ids with `id_prefix` and
    /// de-duplicating any id that still collides.
    void merge(BinaryFeatures other, std::string_view id_prefix);
};

/// Defined function symbols from the static and dynamic tables.
std::set<std::string> extract_function_names(const ElfInfo& elf);

/// ACFGs for every function of a riscv32 ELF. Functions come from FUNC
/// symbols; a section without any falls back to the entry point and the
/// targets of direct calls. Non-riscv32 binaries yield no ACFGs.
std::vector<Acfg> elf_acfgs(ByteView bytes, const ElfInfo& elf, std::vector<std::string>* warnings = nullptr);

/// Strings, function names and ACFGs of one ELF file.
BinaryFeatures elf_features(ByteView bytes, const FeatureConfig& config = {});

/// ACFGs of a flat riscv32 image loaded at `load_base`. Entries are the
/// first word and every in-image direct call target.
std::vector<Acfg> blob_acfgs(ByteView bytes, std::uint64_t load_base, std::vector<std::string>* warnings = nullptr);

BinaryFeatures blob_features(ByteView bytes, std::uint64_t load_base, const FeatureConfig& config = {});

} // namespace tpcscan::binfeat
