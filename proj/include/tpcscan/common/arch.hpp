#pragma once

#include <optional>
#include <string_view>

namespace tpcscan {

enum class Arch { riscv32, arm, mips, x86, unknown };

std::string_view to_string(Arch arch);
std::optional<Arch> arch_from_string(std::string_view text);

} // namespace tpcscan
