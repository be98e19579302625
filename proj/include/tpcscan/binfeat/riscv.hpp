#pragma once

#include "tpcscan/common/bytes.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tpcscan::binfeat {

enum class InsnClass { transfer, call, arith, other };

std::string_view to_string(InsnClass cls);

enum class Op : std::uint8_t {
    lui, auipc, jal, jalr,
    beq, bne, blt, bge, bltu, bgeu,
    lb, lh, lw, lbu, lhu,
    sb, sh, sw,
    addi, slti, sltiu, xori, ori, andi, slli, srli, srai,
    add, sub, sll, slt, sltu, xor_, srl, sra, or_, and_,
    fence, fence_i, ecall, ebreak,
    csrrw, csrrs, csrrc, csrrwi, csrrsi, csrrci,
    data,
};

std::string_view mnemonic_of(Op op);

/// One decoded RV32I word. Register fields are -1 when the format has no
/// such operand. `imm` holds the effective sign-extended immediate (U-type
/// values are already shifted left by 12, CSR ops carry the CSR number in
/// `imm` and the 5-bit immediate, if any, in `rs1`).
struct Instruction {
    std::uint64_t addr = 0;
    std::uint32_t word = 0;
    Op op = Op::data;
    InsnClass cls = InsnClass::other;
    int rd = -1;
    int rs1 = -1;
    int rs2 = -1;
    std::int64_t imm = 0;

    bool is_data() const { return op == Op::data; }
    bool is_branch() const { return op >= Op::beq && op <= Op::bgeu; }
    bool is_load() const { return op >= Op::lb && op <= Op::lhu; }
    bool is_store() const { return op >= Op::sb && op <= Op::sw; }
    /// Target of a branch or jal; nullopt for everything else.
    std::optional<std::uint64_t> direct_target() const;

    std::string_view mnemonic() const { return mnemonic_of(op); }
    std::vector<std::string> operands() const;
    std::vector<std::int64_t> imms() const;
    std::string text() const;
};

constexpr std::size_t kInstructionWidth = 4;

/// Total: words that are not valid RV32I (plus Zicsr/Zifencei) encodings
/// come back as `Op::data`.
Instruction decode_instruction(std::uint32_t word, std::uint64_t addr);

/// Linear sweep over aligned little-endian words; trailing bytes that do not
/// fill a word are ignored.
std::vector<Instruction> decode_range(ByteView bytes, std::uint64_t base_addr);

/// Fraction of aligned words that decode to a valid instruction.
double valid_instruction_fraction(ByteView bytes);

} // namespace tpcscan::binfeat
