#pragma once

#include "tpcscan/common/arch.hpp"
#include "tpcscan/common/bytes.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tpcscan::extraction {

class ExtractionError : public Error {
public:
    using Error::Error;
};

/// A header or table claims more bytes than the input holds.
class TruncatedImage : public ExtractionError {
public:
    using ExtractionError::ExtractionError;
};

/// Recognised format, but a variant this reader does not extract.
class UnsupportedVariant : public ExtractionError {
public:
    using ExtractionError::ExtractionError;
};

/// Checksum or structural violation.
class MalformedArchive : public ExtractionError {
public:
    using ExtractionError::ExtractionError;
};

struct FirmwareImage {
    std::string id;
    std::string name;
    Bytes bytes;
    /// Free-form metadata; recognised keys are vendor, category and
    /// release_date (ISO-8601).
    std::map<std::string, std::string> metadata;
};

enum class RegionKind { gzip, xz, lzma, squashfs, cramfs, jffs2, cpio, tar, elf, uimage, unknown };

struct CarvedRegion {
    std::uint64_t offset = 0;
    std::uint64_t length = 0;
    RegionKind kind = RegionKind::unknown;
    /// Nesting depth; 0 for regions found in the raw image. Offsets of
    /// nested regions are relative to the decoded payload of `parent`.
    int depth = 0;
    int parent = -1;

    bool operator==(const CarvedRegion&) const = default;
};

enum class ObjectKind { elf_binary, text, data };

struct ExtractedObject {
    std::string path;
    Bytes bytes;
    ObjectKind kind = ObjectKind::data;
};

enum class OsClass { linux_based, monolithic, encrypted, unknown };
enum class FilesystemKind { squashfs, cramfs, jffs2, cpio, tar, none, unknown };

struct FirmwareInfo {
    OsClass os_class = OsClass::unknown;
    Arch arch = Arch::unknown;
    FilesystemKind filesystem = FilesystemKind::unknown;
    double entropy_mean = 0.0;

    bool operator==(const FirmwareInfo&) const = default;
};

std::string_view to_string(RegionKind kind);
std::string_view to_string(ObjectKind kind);
std::string_view to_string(OsClass os);
std::string_view to_string(FilesystemKind fs);
std::optional<OsClass> os_class_from_string(std::string_view s);
std::optional<FilesystemKind> filesystem_from_string(std::string_view s);

bool is_filesystem(RegionKind kind);
bool is_compressed(RegionKind kind);
std::optional<FilesystemKind> filesystem_of(RegionKind kind);

/// elf_binary on ELF magic, text when the content is printable, data
/// otherwise.
ObjectKind classify_object(ByteView bytes);

/// Mostly-printable content with no NUL bytes in the probed prefix.
bool looks_like_text(ByteView bytes);

} // namespace tpcscan::extraction
