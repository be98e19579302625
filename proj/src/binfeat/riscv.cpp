#include "tpcscan/binfeat/riscv.hpp"

#include <array>
#include <cstdio>

namespace tpcscan::binfeat {

namespace {

constexpr std::array<std::string_view, static_cast<std::size_t>(Op::data) + 1> kMnemonics = {
    "lui", "auipc", "jal", "jalr",
    "beq", "bne", "blt", "bge", "bltu", "bgeu",
    "lb", "lh", "lw", "lbu", "lhu",
    "sb", "sh", "sw",
    "addi", "slti", "sltiu", "xori", "ori", "andi", "slli", "srli", "srai",
    "add", "sub", "sll", "slt", "sltu", "xor", "srl", "sra", "or", "and",
    "fence", "fence.i", "ecall", "ebreak",
    "csrrw", "csrrs", "csrrc", "csrrwi", "csrrsi", "csrrci",
    ".word",
};

std::int64_t sign_extend(std::uint32_t value, int bits)
{
    const std::uint32_t m = 1u << (bits - 1);
    value &= (bits == 32) ? 0xFFFFFFFFu : ((1u << bits) - 1);
    return static_cast<std::int64_t>(static_cast<std::int32_t>((value ^ m) - m));
}

std::int64_t imm_i(std::uint32_t w) { return sign_extend(w >> 20, 12); }
std::int64_t imm_s(std::uint32_t w) { return sign_extend(((w >> 25) << 5) | ((w >> 7) & 0x1F), 12); }
std::int64_t imm_b(std::uint32_t w)
{
    const std::uint32_t v = (((w >> 31) & 1) << 12) | (((w >> 7) & 1) << 11) | (((w >> 25) & 0x3F) << 5) |
                            (((w >> 8) & 0xF) << 1);
    return sign_extend(v, 13);
}
std::int64_t imm_j(std::uint32_t w)
{
    const std::uint32_t v = (((w >> 31) & 1) << 20) | (((w >> 12) & 0xFF) << 12) | (((w >> 20) & 1) << 11) |
                            (((w >> 21) & 0x3FF) << 1);
    return sign_extend(v, 21);
}

std::string reg(int r) { return "x" + std::to_string(r); }

std::string hex(std::uint64_t v)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string fence_set(std::uint32_t bits)
{
    std::string s;
    if (bits & 8) s += 'i';
    if (bits & 4) s += 'o';
    if (bits & 2) s += 'r';
    if (bits & 1) s += 'w';
    return s.empty() ? "0" : s;
}

InsnClass classify(const Instruction& insn)
{
    switch (insn.op) {
    case Op::jal:
    case Op::jalr:
        return insn.rd == 0 ? InsnClass::transfer : InsnClass::call;
    case Op::beq: case Op::bne: case Op::blt: case Op::bge: case Op::bltu: case Op::bgeu:
        return InsnClass::transfer;
    case Op::lui: case Op::auipc:
    case Op::addi: case Op::slti: case Op::sltiu: case Op::xori: case Op::ori: case Op::andi:
    case Op::slli: case Op::srli: case Op::srai:
    case Op::add: case Op::sub: case Op::sll: case Op::slt: case Op::sltu:
    case Op::xor_: case Op::srl: case Op::sra: case Op::or_: case Op::and_:
        return InsnClass::arith;
    default:
        return InsnClass::other;
    }
}

bool decode_fields(std::uint32_t w, Instruction& out)
{
    const std::uint32_t opcode = w & 0x7F;
    const int rd = static_cast<int>((w >> 7) & 0x1F);
    const std::uint32_t funct3 = (w >> 12) & 0x7;
    const int rs1 = static_cast<int>((w >> 15) & 0x1F);
    const int rs2 = static_cast<int>((w >> 20) & 0x1F);
    const std::uint32_t funct7 = w >> 25;

    switch (opcode) {
    case 0x37:
    case 0x17:
        out.op = opcode == 0x37 ? Op::lui : Op::auipc;
        out.rd = rd;
        out.imm = sign_extend(w & 0xFFFFF000u, 32);
        return true;
    case 0x6F:
        out.op = Op::jal;
        out.rd = rd;
        out.imm = imm_j(w);
        return true;
    case 0x67:
        if (funct3 != 0) return false;
        out.op = Op::jalr;
        out.rd = rd;
        out.rs1 = rs1;
        out.imm = imm_i(w);
        return true;
    case 0x63: {
        static constexpr std::array<int, 8> ops = {0, 1, -1, -1, 2, 3, 4, 5};
        if (ops[funct3] < 0) return false;
        out.op = static_cast<Op>(static_cast<int>(Op::beq) + ops[funct3]);
        out.rs1 = rs1;
        out.rs2 = rs2;
        out.imm = imm_b(w);
        return true;
    }
    case 0x03: {
        static constexpr std::array<int, 8> ops = {0, 1, 2, -1, 3, 4, -1, -1};
        if (ops[funct3] < 0) return false;
        out.op = static_cast<Op>(static_cast<int>(Op::lb) + ops[funct3]);
        out.rd = rd;
        out.rs1 = rs1;
        out.imm = imm_i(w);
        return true;
    }
    case 0x23:
        if (funct3 > 2) return false;
        out.op = static_cast<Op>(static_cast<int>(Op::sb) + static_cast<int>(funct3));
        out.rs1 = rs1;
        out.rs2 = rs2;
        out.imm = imm_s(w);
        return true;
    case 0x13:
        out.rd = rd;
        out.rs1 = rs1;
        switch (funct3) {
        case 0: out.op = Op::addi; break;
        case 2: out.op = Op::slti; break;
        case 3: out.op = Op::sltiu; break;
        case 4: out.op = Op::xori; break;
        case 6: out.op = Op::ori; break;
        case 7: out.op = Op::andi; break;
        case 1:
            if (funct7 != 0) return false;
            out.op = Op::slli;
            out.imm = rs2;
            return true;
        case 5:
            if (funct7 != 0 && funct7 != 0x20) return false;
            out.op = funct7 ? Op::srai : Op::srli;
            out.imm = rs2;
            return true;
        }
        out.imm = imm_i(w);
        return true;
    case 0x33: {
        out.rd = rd;
        out.rs1 = rs1;
        out.rs2 = rs2;
        if (funct7 == 0) {
            static constexpr std::array<Op, 8> ops = {Op::add, Op::sll, Op::slt, Op::sltu,
                                                      Op::xor_, Op::srl, Op::or_, Op::and_};
            out.op = ops[funct3];
            return true;
        }
        if (funct7 == 0x20 && (funct3 == 0 || funct3 == 5)) {
            out.op = funct3 == 0 ? Op::sub : Op::sra;
            return true;
        }
        return false;
    }
    case 0x0F:
        if (rd != 0 || rs1 != 0) return false;
        if (funct3 == 0) {
            if ((w >> 28) != 0) return false;
            out.op = Op::fence;
            out.imm = (w >> 20) & 0xFF; // pred << 4 | succ
            return true;
        }
        if (funct3 == 1 && (w >> 20) == 0) {
            out.op = Op::fence_i;
            return true;
        }
        return false;
    case 0x73:
        if (funct3 == 0) {
            if (w == 0x00000073u) {
                out.op = Op::ecall;
                return true;
            }
            if (w == 0x00100073u) {
                out.op = Op::ebreak;
                return true;
            }
            return false;
        }
        if (funct3 == 4) return false;
        {
            static constexpr std::array<Op, 8> ops = {Op::data, Op::csrrw, Op::csrrs, Op::csrrc,
                                                      Op::data, Op::csrrwi, Op::csrrsi, Op::csrrci};
            out.op = ops[funct3];
            out.rd = rd;
            out.rs1 = rs1;
            out.imm = w >> 20;
            return true;
        }
    default:
        return false;
    }
}

} // namespace

std::string_view to_string(InsnClass cls)
{
    switch (cls) {
    case InsnClass::transfer: return "transfer";
    case InsnClass::call: return "call";
    case InsnClass::arith: return "arith";
    case InsnClass::other: break;
    }
    return "other";
}

std::string_view mnemonic_of(Op op)
{
    return kMnemonics[static_cast<std::size_t>(op)];
}

std::optional<std::uint64_t> Instruction::direct_target() const
{
    if (op == Op::jal || is_branch()) {
        return static_cast<std::uint64_t>(static_cast<std::int64_t>(addr) + imm);
    }
    return std::nullopt;
}

std::vector<std::string> Instruction::operands() const
{
    switch (op) {
    case Op::lui:
    case Op::auipc:
        return {reg(rd), hex((static_cast<std::uint64_t>(imm) >> 12) & 0xFFFFF)};
    case Op::jal:
        return {reg(rd), std::to_string(imm)};
    case Op::jalr:
        return {reg(rd), std::to_string(imm) + "(" + reg(rs1) + ")"};
    case Op::fence:
        return {fence_set((static_cast<std::uint32_t>(imm) >> 4) & 0xF), fence_set(static_cast<std::uint32_t>(imm) & 0xF)};
    case Op::fence_i:
    case Op::ecall:
    case Op::ebreak:
        return {};
    case Op::csrrw: case Op::csrrs: case Op::csrrc:
        return {reg(rd), hex(static_cast<std::uint64_t>(imm)), reg(rs1)};
    case Op::csrrwi: case Op::csrrsi: case Op::csrrci:
        return {reg(rd), hex(static_cast<std::uint64_t>(imm)), std::to_string(rs1)};
    case Op::data:
        return {hex(word)};
    default:
        break;
    }
    if (is_branch()) {
        return {reg(rs1), reg(rs2), std::to_string(imm)};
    }
    if (is_load()) {
        return {reg(rd), std::to_string(imm) + "(" + reg(rs1) + ")"};
    }
    if (is_store()) {
        return {reg(rs2), std::to_string(imm) + "(" + reg(rs1) + ")"};
    }
    if (rs2 >= 0) {
        return {reg(rd), reg(rs1), reg(rs2)};
    }
    return {reg(rd), reg(rs1), std::to_string(imm)};
}

std::vector<std::int64_t> Instruction::imms() const
{
    switch (op) {
    case Op::add: case Op::sub: case Op::sll: case Op::slt: case Op::sltu:
    case Op::xor_: case Op::srl: case Op::sra: case Op::or_: case Op::and_:
    case Op::fence_i: case Op::ecall: case Op::ebreak: case Op::data:
        return {};
    case Op::csrrwi: case Op::csrrsi: case Op::csrrci:
        return {imm, rs1};
    default:
        return {imm};
    }
}

std::string Instruction::text() const
{
    std::string out(mnemonic());
    const auto ops = operands();
    for (std::size_t i = 0; i < ops.size(); ++i) {
        out += i == 0 ? " " : ", ";
        out += ops[i];
    }
    return out;
}

Instruction decode_instruction(std::uint32_t word, std::uint64_t addr)
{
    Instruction insn;
    insn.addr = addr;
    insn.word = word;
    if (!decode_fields(word, insn) || insn.op == Op::data) {
        Instruction data;
        data.addr = addr;
        data.word = word;
        return data;
    }
    insn.cls = classify(insn);
    return insn;
}

std::vector<Instruction> decode_range(ByteView bytes, std::uint64_t base_addr)
{
    std::vector<Instruction> out;
    out.reserve(bytes.size() / kInstructionWidth);
    for (std::size_t off = 0; off + kInstructionWidth <= bytes.size(); off += kInstructionWidth) {
        out.push_back(decode_instruction(load_le32(&bytes[off]), base_addr + off));
    }
    return out;
}

double valid_instruction_fraction(ByteView bytes)
{
    const std::size_t words = bytes.size() / kInstructionWidth;
    if (words == 0) {
        return 0.0;
    }
    std::size_t valid = 0;
    for (std::size_t off = 0; off + kInstructionWidth <= bytes.size(); off += kInstructionWidth) {
        if (!decode_instruction(load_le32(&bytes[off]), 0).is_data()) {
            ++valid;
        }
    }
    return static_cast<double>(valid) / static_cast<double>(words);
}

} // namespace tpcscan::binfeat
