#include "tpcscan/common/bytes.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace tpcscan {

Bytes to_bytes(std::string_view s)
{
    return Bytes(s.begin(), s.end());
}

double shannon_entropy(ByteView data)
{
    if (data.empty()) {
        return 0.0;
    }
    std::array<std::size_t, 256> counts{};
    for (auto b : data) {
        ++counts[b];
    }
    const double n = static_cast<double>(data.size());
    double h = 0.0;
    for (auto c : counts) {
        if (c != 0) {
            const double p = static_cast<double>(c) / n;
            h -= p * std::log2(p);
        }
    }
    return h;
}

double mean_block_entropy(ByteView data, std::size_t block_size)
{
    if (data.empty()) {
        return 0.0;
    }
    if (data.size() <= block_size) {
        return shannon_entropy(data);
    }
    double total = 0.0;
    std::size_t blocks = 0;
    for (std::size_t off = 0; off + block_size <= data.size(); off += block_size) {
        total += shannon_entropy(data.subspan(off, block_size));
        ++blocks;
    }
    return total / static_cast<double>(blocks);
}

std::string hex_u64(std::uint64_t value)
{
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(value));
    return buf;
}

} // namespace tpcscan
