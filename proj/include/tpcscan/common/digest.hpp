#pragma once

#include "tpcscan/common/bytes.hpp"

#include <string>

namespace tpcscan {

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(ByteView data);

} // namespace tpcscan
