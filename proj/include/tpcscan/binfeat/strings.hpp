#pragma once

#include "tpcscan/common/bytes.hpp"

#include <cstddef>
#include <set>
#include <string>

namespace tpcscan::binfeat {

inline bool is_printable_string_byte(std::uint8_t b)
{
    return (b >= 0x20 && b <= 0x7E) || b == '\t';
}

/// Every maximal run of printable ASCII (plus tab) of at least `min_len`
/// bytes. A run that reaches the end of the buffer is kept.
std::set<std::string> extract_strings(ByteView bytes, std::size_t min_len = 4);

} // namespace tpcscan::binfeat
