#include "tpcscan/binfeat/acfg.hpp"

#include <array>
#include <optional>
#include <set>

namespace tpcscan::binfeat {

namespace {

constexpr int kStackPointer = 2;

// Tracks lui/auipc results inside one block so that split address
// materialisations (lui+addi, auipc+load, auipc+jalr) count once, as the
// composed value.
class ConstantCollector {
public:
    explicit ConstantCollector(const ElfInfo* elf) : elf_(elf) {}

    void step(const Instruction& insn)
    {
        switch (insn.op) {
        case Op::lui:
        case Op::auipc: {
            const std::uint64_t value = insn.op == Op::lui
                                            ? static_cast<std::uint64_t>(insn.imm) & 0xFFFFFFFFu
                                            : (insn.addr + static_cast<std::uint64_t>(insn.imm)) & 0xFFFFFFFFu;
            overwrite(insn.rd);
            if (insn.rd > 0) {
                upper_[insn.rd] = value;
            }
            return;
        }
        case Op::addi:
            if (auto base = take_upper(insn.rs1)) {
                record((*base + static_cast<std::uint64_t>(insn.imm)) & 0xFFFFFFFFu);
            } else if (insn.imm != 0) {
                record_numeric(insn.imm);
            }
            overwrite(insn.rd);
            return;
        case Op::jalr:
            take_upper(insn.rs1);
            overwrite(insn.rd);
            return;
        default:
            break;
        }
        if (insn.is_load() || insn.is_store()) {
            if (auto base = take_upper(insn.rs1)) {
                record((*base + static_cast<std::uint64_t>(insn.imm)) & 0xFFFFFFFFu);
            }
            if (insn.is_load()) {
                overwrite(insn.rd);
            }
            return;
        }
        if (insn.cls == InsnClass::arith && insn.rs2 < 0 && insn.imm != 0) {
            record_numeric(insn.imm);
        }
        if (insn.rd >= 0) {
            overwrite(insn.rd);
        }
    }

    void finish()
    {
        for (int r = 1; r < 32; ++r) {
            overwrite(r);
        }
    }

    int strings() const { return static_cast<int>(strings_.size()); }
    int numerics() const { return static_cast<int>(numerics_.size()); }

private:
    std::optional<std::uint64_t> take_upper(int reg)
    {
        if (reg <= 0 || !upper_[reg]) {
            return std::nullopt;
        }
        auto v = upper_[reg];
        upper_[reg].reset();
        return v;
    }

    // A register about to be clobbered: an unconsumed upper value still
    // counts as a constant on its own.
    void overwrite(int reg)
    {
        if (reg > 0 && upper_[reg]) {
            record(*upper_[reg]);
            upper_[reg].reset();
        }
    }

    void record(std::uint64_t value)
    {
        if (elf_ != nullptr && elf_->in_string_span(value)) {
            strings_.insert(value);
        } else {
            numerics_.insert(static_cast<std::int64_t>(value));
        }
    }

    void record_numeric(std::int64_t value) { numerics_.insert(value); }

    const ElfInfo* elf_;
    std::array<std::optional<std::uint64_t>, 32> upper_{};
    std::set<std::uint64_t> strings_;
    std::set<std::int64_t> numerics_;
};

} // namespace

std::vector<int> offspring_counts(std::size_t n_blocks, const std::vector<Edge>& edges)
{
    std::vector<std::vector<std::uint32_t>> adj(n_blocks);
    for (const auto& [from, to] : edges) {
        if (from < n_blocks && to < n_blocks) {
            adj[from].push_back(to);
        }
    }
    std::vector<int> counts(n_blocks, 0);
    std::vector<char> seen(n_blocks);
    std::vector<std::uint32_t> stack;
    for (std::size_t start = 0; start < n_blocks; ++start) {
        std::fill(seen.begin(), seen.end(), 0);
        stack.assign(adj[start].begin(), adj[start].end());
        int count = 0;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            if (seen[v]) {
                continue;
            }
            seen[v] = 1;
            if (v != start) {
                ++count;
            }
            for (auto w : adj[v]) {
                if (!seen[w]) {
                    stack.push_back(w);
                }
            }
        }
        counts[start] = count;
    }
    return counts;
}

void Acfg::validate() const
{
    const auto n = blocks.size();
    if (func_attrs.n_blocks != static_cast<int>(n)) {
        throw InvalidAcfg(function_id + ": n_blocks does not match the block list");
    }
    if (func_attrs.n_edges != static_cast<int>(edges.size())) {
        throw InvalidAcfg(function_id + ": n_edges does not match the edge list");
    }
    if (func_attrs.n_variables < 0) {
        throw InvalidAcfg(function_id + ": negative variable count");
    }
    for (const auto& [from, to] : edges) {
        if (from >= n || to >= n) {
            throw InvalidAcfg(function_id + ": edge endpoint out of range");
        }
    }
    const auto offspring = offspring_counts(n, edges);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& b = blocks[i];
        for (int v : b.as_array()) {
            if (v < 0) {
                throw InvalidAcfg(function_id + ": negative block attribute");
            }
        }
        if (b.n_transfer > b.n_instructions || b.n_calls > b.n_instructions || b.n_arith > b.n_instructions) {
            throw InvalidAcfg(function_id + ": per-class count exceeds instruction count");
        }
        if (b.n_offspring != offspring[i]) {
            throw InvalidAcfg(function_id + ": offspring count disagrees with the edge list");
        }
    }
}

Acfg compute_acfg(const Cfg& cfg, const ElfInfo* elf_context)
{
    Acfg acfg;
    std::set<std::int64_t> stack_slots;
    for (std::size_t b = 0; b < cfg.blocks.size(); ++b) {
        const auto& block = cfg.blocks[b];
        BlockAttr attr;
        ConstantCollector constants(elf_context);
        for (const auto& insn : block.insns) {
            ++attr.n_instructions;
            switch (insn.cls) {
            case InsnClass::transfer: ++attr.n_transfer; break;
            case InsnClass::call: ++attr.n_calls; break;
            case InsnClass::arith: ++attr.n_arith; break;
            case InsnClass::other: break;
            }
            if ((insn.is_load() || insn.is_store()) && insn.rs1 == kStackPointer) {
                stack_slots.insert(insn.imm);
            }
            constants.step(insn);
        }
        constants.finish();
        attr.n_string_consts = constants.strings();
        attr.n_numeric_consts = constants.numerics();
        acfg.blocks.push_back(attr);
        for (auto s : block.succs) {
            acfg.edges.emplace_back(static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(s));
        }
    }
    const auto offspring = offspring_counts(acfg.blocks.size(), acfg.edges);
    for (std::size_t i = 0; i < acfg.blocks.size(); ++i) {
        acfg.blocks[i].n_offspring = offspring[i];
    }
    acfg.func_attrs.n_blocks = static_cast<int>(acfg.blocks.size());
    acfg.func_attrs.n_edges = static_cast<int>(acfg.edges.size());
    acfg.func_attrs.n_variables = static_cast<int>(stack_slots.size());
    return acfg;
}

} // namespace tpcscan::binfeat
