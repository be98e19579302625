#include "tpcscan/binfeat/cfg.hpp"

#include <algorithm>
#include <map>

namespace tpcscan::binfeat {

namespace {

struct Region {
    std::span<const Instruction> insns;
    std::uint64_t base = 0;

    std::optional<std::size_t> index_of(std::uint64_t addr) const
    {
        if (insns.empty() || addr < base || (addr - base) % kInstructionWidth != 0) {
            return std::nullopt;
        }
        const std::uint64_t i = (addr - base) / kInstructionWidth;
        if (i >= insns.size()) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(i);
    }
};

bool ends_block(const Instruction& insn)
{
    return insn.cls == InsnClass::transfer;
}

// Successor instruction indices of instruction `i` inside the region.
std::vector<std::size_t> successors(const Region& region, std::size_t i)
{
    const auto& insn = region.insns[i];
    std::vector<std::size_t> out;
    if (insn.is_data()) {
        return out;
    }
    auto fallthrough = [&] {
        if (i + 1 < region.insns.size()) {
            out.push_back(i + 1);
        }
    };
    if (insn.is_branch()) {
        if (auto t = region.index_of(*insn.direct_target())) {
            out.push_back(*t);
        }
        fallthrough();
    } else if (insn.op == Op::jal && insn.rd == 0) {
        if (auto t = region.index_of(*insn.direct_target())) {
            out.push_back(*t);
        }
    } else if (insn.op == Op::jalr && insn.rd == 0) {
        // return or indirect jump
    } else {
        fallthrough();
    }
    return out;
}

} // namespace

std::size_t Cfg::edge_count() const
{
    std::size_t n = 0;
    for (const auto& b : blocks) {
        n += b.succs.size();
    }
    return n;
}

Cfg recover_cfg(std::span<const Instruction> insns, std::uint64_t entry)
{
    Region region{insns, insns.empty() ? 0 : insns.front().addr};
    const auto entry_index = region.index_of(entry);
    if (!entry_index || insns[*entry_index].is_data()) {
        throw EmptyFunction("no code at function entry " + hex_u64(entry));
    }

    std::vector<bool> reachable(insns.size(), false);
    std::vector<bool> leader(insns.size(), false);
    std::vector<std::size_t> work{*entry_index};
    reachable[*entry_index] = true;
    leader[*entry_index] = true;
    while (!work.empty()) {
        const std::size_t i = work.back();
        work.pop_back();
        const auto& insn = insns[i];
        for (std::size_t s : successors(region, i)) {
            if (insns[s].is_data()) {
                continue;
            }
            if (insn.direct_target() && region.index_of(*insn.direct_target()) == s) {
                leader[s] = true;
            }
            if (ends_block(insn)) {
                leader[s] = true;
            }
            if (!reachable[s]) {
                reachable[s] = true;
                work.push_back(s);
            }
        }
    }

    // Partition reachable instructions into blocks in address order.
    std::vector<BasicBlock> blocks;
    std::map<std::size_t, std::size_t> block_of_first;
    for (std::size_t i = 0; i < insns.size(); ++i) {
        if (!reachable[i]) {
            continue;
        }
        const bool starts = leader[i] || i == 0 || !reachable[i - 1] || ends_block(insns[i - 1]) ||
                            blocks.empty();
        if (starts) {
            block_of_first[i] = blocks.size();
            blocks.push_back(BasicBlock{insns[i].addr, {}, {}});
        }
        blocks.back().insns.push_back(insns[i]);
    }

    for (auto& block : blocks) {
        const std::size_t last = *region.index_of(block.insns.back().addr);
        std::vector<std::size_t> succ_blocks;
        for (std::size_t s : successors(region, last)) {
            auto it = block_of_first.find(s);
            if (it != block_of_first.end() &&
                std::find(succ_blocks.begin(), succ_blocks.end(), it->second) == succ_blocks.end()) {
                succ_blocks.push_back(it->second);
            }
        }
        block.succs = std::move(succ_blocks);
    }

    // Move the entry block to index 0, keep address order for the rest.
    const std::size_t entry_block = block_of_first.at(*entry_index);
    std::vector<std::size_t> order;
    order.push_back(entry_block);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b != entry_block) {
            order.push_back(b);
        }
    }
    std::vector<std::size_t> new_index(blocks.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        new_index[order[k]] = k;
    }
    Cfg cfg;
    cfg.blocks.reserve(blocks.size());
    for (std::size_t b : order) {
        BasicBlock blk = std::move(blocks[b]);
        for (auto& s : blk.succs) {
            s = new_index[s];
        }
        std::sort(blk.succs.begin(), blk.succs.end());
        cfg.blocks.push_back(std::move(blk));
    }
    return cfg;
}

} // namespace tpcscan::binfeat
