#pragma once

#include "tpcscan/extraction/types.hpp"

#include <optional>

namespace tpcscan::extraction {

struct Decompressed {
    Bytes data;
    /// Input bytes consumed up to the end of the first stream.
    std::size_t consumed = 0;
};

inline constexpr std::size_t default_output_limit = std::size_t{256} << 20;

/// gzip member (RFC 1952). Trailing bytes after the member are ignored.
Decompressed gunzip(ByteView input, std::size_t limit = default_output_limit);
/// zlib stream (RFC 1950) with known output size, as used by squashfs.
Bytes zlib_inflate(ByteView input, std::size_t expected_size);
Decompressed unxz(ByteView input, std::size_t limit = default_output_limit);
/// Legacy .lzma ("LZMA alone") stream.
Decompressed unlzma(ByteView input, std::size_t limit = default_output_limit);

/// Decodes without keeping the output and returns the stream's length in
/// bytes. nullopt when the stream is corrupt, truncated or exceeds `limit`.
std::optional<std::size_t> compressed_stream_length(ByteView input, RegionKind kind,
                                                    std::size_t limit = default_output_limit);

/// Dispatch on a compressed region kind.
Decompressed decompress(ByteView input, RegionKind kind, std::size_t limit = default_output_limit);

} // namespace tpcscan::extraction
