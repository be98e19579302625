#pragma once

#include "tpcscan/binfeat/riscv.hpp"
#include "tpcscan/common/bytes.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tpcscan::binfeat {

class EmptyFunction : public Error {
public:
    using Error::Error;
};

struct BasicBlock {
    std::uint64_t start = 0;
    std::vector<Instruction> insns;
    std::vector<std::size_t> succs;
};

/// Blocks of one function. The entry block is always index 0; the remaining
/// blocks follow in address order.
struct Cfg {
    std::vector<BasicBlock> blocks;

    std::size_t edge_count() const;
};

/// Recovers the function starting at `entry` from a contiguous, decoded
/// region. Calls fall through; branch and jump targets outside the region
/// are treated as exits; indirect jumps and returns end a path; data words
/// are a frontier. Throws EmptyFunction when `entry` is outside the region
/// or decodes as data.
Cfg recover_cfg(std::span<const Instruction> region, std::uint64_t entry);

} // namespace tpcscan::binfeat
