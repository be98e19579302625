#include "tpcscan/binfeat/strings.hpp"

namespace tpcscan::binfeat {

std::set<std::string> extract_strings(ByteView bytes, std::size_t min_len)
{
    if (min_len == 0) {
        min_len = 1;
    }
    std::set<std::string> out;
    std::size_t run_start = 0;
    std::size_t run_len = 0;
    auto flush = [&] {
        if (run_len >= min_len) {
            out.emplace(reinterpret_cast<const char*>(&bytes[run_start]), run_len);
        }
        run_len = 0;
    };
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        if (is_printable_string_byte(bytes[i])) {
            if (run_len == 0) {
                run_start = i;
            }
            ++run_len;
        } else {
            flush();
        }
    }
    flush();
    return out;
}

} // namespace tpcscan::binfeat
