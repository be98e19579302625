#pragma once

#include "tpcscan/binfeat/cfg.hpp"
#include "tpcscan/binfeat/elf.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tpcscan::binfeat {

class InvalidAcfg : public Error {
public:
    using Error::Error;
};

struct BlockAttr {
    int n_string_consts = 0;
    int n_numeric_consts = 0;
    int n_transfer = 0;
    int n_calls = 0;
    int n_instructions = 0;
    int n_arith = 0;
    int n_offspring = 0;

    static constexpr std::size_t kCount = 7;
    std::array<int, kCount> as_array() const
    {
        return {n_string_consts, n_numeric_consts, n_transfer, n_calls, n_instructions, n_arith, n_offspring};
    }
    static BlockAttr from_array(const std::array<int, kCount>& a)
    {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
    }
    bool operator==(const BlockAttr&) const = default;
};

struct FuncAttrs {
    int n_blocks = 0;
    int n_edges = 0;
    int n_variables = 0;

    bool operator==(const FuncAttrs&) const = default;
};

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// One function's attributed control-flow graph.
struct Acfg {
    std::string function_id;
    std::vector<BlockAttr> blocks;
    std::vector<Edge> edges;
    FuncAttrs func_attrs;

    /// Throws InvalidAcfg if a type invariant is broken (counts, edge
    /// endpoints, offspring numbers, per-class counts vs instruction count).
    void validate() const;

    bool operator==(const Acfg&) const = default;
};

/// Number of blocks reachable from each block, excluding the block itself.
std::vector<int> offspring_counts(std::size_t n_blocks, const std::vector<Edge>& edges);

/// Counts the seven block attributes and three function attributes of
/// `cfg`. With an ELF context, constant addresses that fall into read-only
/// data spans count as string constants; without one every constant is
/// numeric. `function_id` is left for the caller to fill in.
Acfg compute_acfg(const Cfg& cfg, const ElfInfo* elf_context = nullptr);

} // namespace tpcscan::binfeat
