#include "tpcscan/common/arch.hpp"

namespace tpcscan {

std::string_view to_string(Arch arch)
{
    switch (arch) {
    case Arch::riscv32: return "riscv32";
    case Arch::arm: return "arm";
    case Arch::mips: return "mips";
    case Arch::x86: return "x86";
    case Arch::unknown: break;
    }
    return "unknown";
}

std::optional<Arch> arch_from_string(std::string_view text)
{
    for (auto a : {Arch::riscv32, Arch::arm, Arch::mips, Arch::x86, Arch::unknown}) {
        if (to_string(a) == text) {
            return a;
        }
    }
    return std::nullopt;
}

} // namespace tpcscan
