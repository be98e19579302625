#pragma once

#include "tpcscan/common/bytes.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport {

inline std::filesystem::path fixture(const std::string& rel)
{
    return std::filesystem::path(TPCSCAN_FIXTURE_DIR) / rel;
}

inline tpcscan::Bytes read_file(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("missing fixture " + p.string());
    return tpcscan::Bytes(std::istreambuf_iterator<char>(f), {});
}

inline nlohmann::json read_json(const std::filesystem::path& p)
{
    std::ifstream f(p);
    if (!f) throw std::runtime_error("missing fixture " + p.string());
    return nlohmann::json::parse(f);
}

inline tpcscan::Bytes base64_decode(const std::string& in)
{
    static const std::string alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    tpcscan::Bytes out;
    std::uint32_t acc = 0;
    int bits = 0;
    for (char c : in) {
        if (c == '=') break;
        const auto v = alphabet.find(c);
        if (v == std::string::npos) continue;
        acc = (acc << 6) | static_cast<std::uint32_t>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xFF));
        }
    }
    return out;
}

/// Temporary directory removed on destruction.
struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        std::random_device rd;
        path = std::filesystem::temp_directory_path() / ("tpcscan-test-" + std::to_string(rd()));
        std::filesystem::create_directories(path);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

inline void write_file(const std::filesystem::path& p, const std::string& content)
{
    std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    f << content;
}

} // namespace testsupport
