#pragma once

#include "tpcscan/extraction/types.hpp"

#include <string>
#include <vector>

namespace tpcscan::extraction {

struct FilesystemContents {
    std::vector<ExtractedObject> objects;
    /// Skipped entries (symlinks, devices, unsafe paths) and other notes.
    std::vector<std::string> warnings;
};

/// newc / crc CPIO. The crc variant's data checksum is verified.
FilesystemContents extract_cpio(ByteView bytes);
/// ustar TAR with pax path/size records and GNU long names.
FilesystemContents extract_tar(ByteView bytes);
/// SquashFS 4.0, little-endian, zlib compressor only.
FilesystemContents extract_squashfs(ByteView bytes);

/// Dispatches on kind. cramfs and jffs2 raise UnsupportedVariant.
FilesystemContents extract_filesystem(ByteView bytes, RegionKind kind);

/// Strips leading "./" and "/", collapses repeated separators and drops
/// "." components. Returns an empty string for paths that escape the root
/// or are empty.
std::string normalize_member_path(std::string_view path);

namespace detail {
/// Adds one regular file, replacing an earlier member with the same path.
void add_object(FilesystemContents& out, std::string_view raw_path, Bytes bytes);
} // namespace detail

} // namespace tpcscan::extraction
