#include "tpcscan/extraction/decompress.hpp"

#include <lzma.h>
#include <zlib.h>

#include <string>

namespace tpcscan::extraction {

namespace {

constexpr std::size_t chunk = 64 * 1024;

Decompressed run_zlib(ByteView input, std::size_t limit, int window_bits, const char* what, bool keep = true)
{
    z_stream zs{};
    if (inflateInit2(&zs, window_bits) != Z_OK) {
        throw ExtractionError(std::string(what) + ": inflateInit failed");
    }
    Decompressed out;
    zs.next_in = const_cast<Bytef*>(input.data());
    zs.avail_in = static_cast<uInt>(std::min<std::size_t>(input.size(), UINT32_MAX));
    int rc = Z_OK;
    std::size_t produced = 0;
    while (rc != Z_STREAM_END) {
        const std::size_t have = keep ? out.data.size() : 0;
        out.data.resize(have + chunk);
        zs.next_out = out.data.data() + have;
        zs.avail_out = chunk;
        rc = inflate(&zs, Z_NO_FLUSH);
        produced += chunk - zs.avail_out;
        out.data.resize(have + chunk - zs.avail_out);
        if (produced > limit) {
            inflateEnd(&zs);
            throw ExtractionError(std::string(what) + ": output exceeds limit");
        }
        if (rc == Z_BUF_ERROR || (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0)) {
            inflateEnd(&zs);
            throw TruncatedImage(std::string(what) + ": stream ends early");
        }
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw MalformedArchive(std::string(what) + ": " + (zs.msg ? zs.msg : "inflate error"));
        }
    }
    out.consumed = input.size() - zs.avail_in;
    inflateEnd(&zs);
    return out;
}

Decompressed run_lzma(ByteView input, std::size_t limit, bool alone, bool keep = true)
{
    lzma_stream ls = LZMA_STREAM_INIT;
    const lzma_ret init = alone ? lzma_alone_decoder(&ls, UINT64_MAX) : lzma_stream_decoder(&ls, UINT64_MAX, 0);
    const char* what = alone ? "lzma" : "xz";
    if (init != LZMA_OK) {
        throw ExtractionError(std::string(what) + ": decoder init failed");
    }
    Decompressed out;
    ls.next_in = input.data();
    ls.avail_in = input.size();
    lzma_ret rc = LZMA_OK;
    std::size_t produced = 0;
    while (rc != LZMA_STREAM_END) {
        const std::size_t have = keep ? out.data.size() : 0;
        out.data.resize(have + chunk);
        ls.next_out = out.data.data() + have;
        ls.avail_out = chunk;
        rc = lzma_code(&ls, ls.avail_in == 0 ? LZMA_FINISH : LZMA_RUN);
        produced += chunk - ls.avail_out;
        out.data.resize(have + chunk - ls.avail_out);
        if (produced > limit) {
            lzma_end(&ls);
            throw ExtractionError(std::string(what) + ": output exceeds limit");
        }
        if (rc == LZMA_BUF_ERROR) {
            lzma_end(&ls);
            throw TruncatedImage(std::string(what) + ": stream ends early");
        }
        if (rc != LZMA_OK && rc != LZMA_STREAM_END) {
            lzma_end(&ls);
            if (rc == LZMA_FORMAT_ERROR || rc == LZMA_OPTIONS_ERROR) {
                throw UnsupportedVariant(std::string(what) + ": unsupported stream");
            }
            throw MalformedArchive(std::string(what) + ": corrupt stream");
        }
    }
    out.consumed = input.size() - ls.avail_in;
    lzma_end(&ls);
    return out;
}

} // namespace

Decompressed gunzip(ByteView input, std::size_t limit)
{
    return run_zlib(input, limit, 16 + MAX_WBITS, "gzip");
}

Bytes zlib_inflate(ByteView input, std::size_t expected_size)
{
    Decompressed d = run_zlib(input, expected_size + 1, MAX_WBITS, "zlib");
    return std::move(d.data);
}

Decompressed unxz(ByteView input, std::size_t limit)
{
    return run_lzma(input, limit, false);
}

Decompressed unlzma(ByteView input, std::size_t limit)
{
    return run_lzma(input, limit, true);
}

std::optional<std::size_t> compressed_stream_length(ByteView input, RegionKind kind, std::size_t limit)
{
    try {
        switch (kind) {
        case RegionKind::gzip: return run_zlib(input, limit, 16 + MAX_WBITS, "gzip", false).consumed;
        case RegionKind::xz: return run_lzma(input, limit, false, false).consumed;
        case RegionKind::lzma: return run_lzma(input, limit, true, false).consumed;
        default: return std::nullopt;
        }
    } catch (const ExtractionError&) {
        return std::nullopt;
    }
}

Decompressed decompress(ByteView input, RegionKind kind, std::size_t limit)
{
    switch (kind) {
    case RegionKind::gzip: return gunzip(input, limit);
    case RegionKind::xz: return unxz(input, limit);
    case RegionKind::lzma: return unlzma(input, limit);
    default: throw UnsupportedVariant("not a compressed region: " + std::string(to_string(kind)));
    }
}

} // namespace tpcscan::extraction
