#include "tpcscan/extraction/decompress.hpp"
#include "tpcscan/extraction/filesystem.hpp"

#include <map>
#include <set>

namespace tpcscan::extraction {

namespace {

constexpr std::size_t superblock_size = 96;
constexpr std::size_t metadata_size = 8192;
constexpr std::uint32_t no_fragment = 0xFFFFFFFF;
constexpr std::uint32_t data_uncompressed = 1u << 24;
constexpr int max_dir_depth = 128;

enum InodeType : std::uint16_t {
    basic_dir = 1,
    basic_file = 2,
    basic_symlink = 3,
    ext_dir = 8,
    ext_file = 9,
    ext_symlink = 10,
};

struct Superblock {
    std::uint32_t block_size;
    std::uint32_t fragment_count;
    std::uint64_t root_inode;
    std::uint64_t bytes_used;
    std::uint64_t inode_table;
    std::uint64_t directory_table;
    std::uint64_t fragment_table;
};

class Image {
public:
    Image(ByteView bytes, const Superblock& sb) : bytes_(bytes), sb_(sb) {}

    ByteView span(std::uint64_t offset, std::uint64_t length) const
    {
        if (!in_bounds(offset, length, bytes_.size())) {
            throw TruncatedImage("squashfs: read past end of image");
        }
        return bytes_.subspan(offset, length);
    }

    /// Decoded metadata block at an absolute offset, plus its on-disk size.
    const std::pair<Bytes, std::size_t>& metadata_block(std::uint64_t offset)
    {
        if (auto it = cache_.find(offset); it != cache_.end()) {
            return it->second;
        }
        const std::uint16_t header = load_le16(span(offset, 2).data());
        const std::size_t size = header & 0x7FFF;
        ByteView payload = span(offset + 2, size);
        Bytes decoded = (header & 0x8000) ? Bytes(payload.begin(), payload.end()) : zlib_inflate(payload, metadata_size);
        if (decoded.size() > metadata_size) {
            throw MalformedArchive("squashfs: oversized metadata block");
        }
        return cache_.emplace(offset, std::make_pair(std::move(decoded), size + 2)).first->second;
    }

    /// Reads `length` bytes of a metadata stream starting at block
    /// `table + block` and byte `offset` within it.
    Bytes read_metadata(std::uint64_t table, std::uint64_t block, std::size_t offset, std::size_t length)
    {
        Bytes out;
        std::uint64_t at = table + block;
        while (out.size() < length) {
            const auto& [data, disk_size] = metadata_block(at);
            if (offset > data.size()) {
                throw MalformedArchive("squashfs: metadata offset outside block");
            }
            const std::size_t take = std::min(length - out.size(), data.size() - offset);
            out.insert(out.end(), data.begin() + static_cast<std::ptrdiff_t>(offset),
                       data.begin() + static_cast<std::ptrdiff_t>(offset + take));
            if (out.size() < length && data.size() == offset + take) {
                if (data.empty()) {
                    throw MalformedArchive("squashfs: empty metadata block");
                }
                at += disk_size;
                offset = 0;
            } else {
                offset += take;
            }
        }
        return out;
    }

    Bytes data_block(std::uint64_t offset, std::uint32_t size_word, std::size_t expected)
    {
        const std::uint32_t size = size_word & ~data_uncompressed;
        if (size == 0) {
            return Bytes(expected, 0); // sparse
        }
        ByteView raw = span(offset, size);
        if (size_word & data_uncompressed) {
            return Bytes(raw.begin(), raw.end());
        }
        return zlib_inflate(raw, sb_.block_size);
    }

    std::pair<std::uint64_t, std::uint32_t> fragment_entry(std::uint32_t index)
    {
        if (index >= sb_.fragment_count) {
            throw MalformedArchive("squashfs: fragment index out of range");
        }
        const std::uint64_t pointer_at = sb_.fragment_table + std::uint64_t{index / 512} * 8;
        const std::uint64_t block_at = load_le64(span(pointer_at, 8).data());
        const Bytes entry = read_metadata(block_at, 0, (index % 512) * 16, 16);
        return {load_le64(entry.data()), load_le32(entry.data() + 8)};
    }

    const Bytes& fragment_block(std::uint32_t index)
    {
        if (auto it = fragments_.find(index); it != fragments_.end()) {
            return it->second;
        }
        const auto [start, size_word] = fragment_entry(index);
        return fragments_.emplace(index, data_block(start, size_word, sb_.block_size)).first->second;
    }

    const Superblock& sb() const { return sb_; }

private:
    ByteView bytes_;
    Superblock sb_;
    std::map<std::uint64_t, std::pair<Bytes, std::size_t>> cache_;
    std::map<std::uint32_t, Bytes> fragments_;
};

struct InodeRef {
    std::uint64_t block;
    std::size_t offset;
};

InodeRef split_ref(std::uint64_t ref) { return {ref >> 16, static_cast<std::size_t>(ref & 0xFFFF)}; }

class Reader {
public:
    Reader(Image& img, FilesystemContents& out) : img_(img), out_(out) {}

    void walk_directory(InodeRef ref, const std::string& prefix, int depth)
    {
        if (depth > max_dir_depth) {
            throw MalformedArchive("squashfs: directory nesting too deep");
        }
        const std::uint64_t key = (ref.block << 16) | ref.offset;
        if (!visited_.insert(key).second) {
            throw MalformedArchive("squashfs: directory cycle");
        }
        const Bytes header = inode_bytes(ref, 16);
        const std::uint16_t type = load_le16(header.data());
        std::uint32_t start_block = 0;
        std::uint32_t listing_size = 0;
        std::size_t offset = 0;
        if (type == basic_dir) {
            const Bytes d = inode_bytes(ref, 32);
            start_block = load_le32(d.data() + 16);
            listing_size = load_le16(d.data() + 24);
            offset = load_le16(d.data() + 26);
        } else if (type == ext_dir) {
            const Bytes d = inode_bytes(ref, 40);
            listing_size = load_le32(d.data() + 20);
            start_block = load_le32(d.data() + 24);
            offset = load_le16(d.data() + 34);
        } else {
            throw MalformedArchive("squashfs: directory inode expected");
        }
        if (listing_size <= 3) {
            return;
        }
        const Bytes listing = img_.read_metadata(img_.sb().directory_table, start_block, offset, listing_size - 3);
        std::size_t pos = 0;
        while (pos < listing.size()) {
            if (pos + 12 > listing.size()) {
                throw MalformedArchive("squashfs: truncated directory header");
            }
            const std::uint32_t count = load_le32(&listing[pos]) + 1;
            const std::uint32_t block = load_le32(&listing[pos + 4]);
            pos += 12;
            for (std::uint32_t k = 0; k < count; ++k) {
                if (pos + 8 > listing.size()) {
                    throw MalformedArchive("squashfs: truncated directory entry");
                }
                const std::uint16_t entry_offset = load_le16(&listing[pos]);
                const std::size_t name_size = std::size_t{load_le16(&listing[pos + 6])} + 1;
                if (pos + 8 + name_size > listing.size()) {
                    throw MalformedArchive("squashfs: truncated directory name");
                }
                const std::string name(reinterpret_cast<const char*>(&listing[pos + 8]), name_size);
                pos += 8 + name_size;
                visit(InodeRef{block, entry_offset}, prefix.empty() ? name : prefix + "/" + name, depth);
            }
        }
    }

private:
    Bytes inode_bytes(InodeRef ref, std::size_t length)
    {
        return img_.read_metadata(img_.sb().inode_table, ref.block, ref.offset, length);
    }

    void visit(InodeRef ref, const std::string& path, int depth)
    {
        const Bytes header = inode_bytes(ref, 16);
        switch (load_le16(header.data())) {
        case basic_dir:
        case ext_dir:
            walk_directory(ref, path, depth + 1);
            break;
        case basic_file: {
            const Bytes f = inode_bytes(ref, 32);
            read_file(ref, path, load_le32(f.data() + 16), load_le32(f.data() + 20), load_le32(f.data() + 24),
                      load_le32(f.data() + 28), 32);
            break;
        }
        case ext_file: {
            const Bytes f = inode_bytes(ref, 56);
            read_file(ref, path, load_le64(f.data() + 16), load_le32(f.data() + 44), load_le32(f.data() + 48),
                      load_le64(f.data() + 24), 56);
            break;
        }
        case basic_symlink:
        case ext_symlink:
            out_.warnings.push_back("symlink skipped: " + path);
            break;
        default:
            out_.warnings.push_back("special file skipped: " + path);
            break;
        }
    }

    void read_file(InodeRef ref, const std::string& path, std::uint64_t blocks_start, std::uint32_t fragment,
                   std::uint32_t fragment_offset, std::uint64_t file_size, std::size_t header_size)
    {
        const std::uint32_t bs = img_.sb().block_size;
        if (file_size > img_.sb().bytes_used * 1024 + bs) {
            throw MalformedArchive("squashfs: implausible file size for " + path);
        }
        std::uint64_t block_count = file_size / bs;
        if (fragment == no_fragment && file_size % bs != 0) {
            ++block_count;
        }
        const Bytes entry = inode_bytes(ref, header_size + block_count * 4);
        Bytes content;
        content.reserve(file_size);
        std::uint64_t disk = blocks_start;
        for (std::uint64_t k = 0; k < block_count; ++k) {
            const std::uint32_t word = load_le32(entry.data() + header_size + k * 4);
            const std::size_t expected = static_cast<std::size_t>(std::min<std::uint64_t>(bs, file_size - content.size()));
            Bytes chunk = img_.data_block(disk, word, expected);
            if (chunk.size() < expected) {
                throw MalformedArchive("squashfs: short data block in " + path);
            }
            content.insert(content.end(), chunk.begin(), chunk.begin() + static_cast<std::ptrdiff_t>(expected));
            disk += word & ~data_uncompressed;
        }
        if (content.size() < file_size) {
            const Bytes& frag = img_.fragment_block(fragment);
            const std::size_t tail = file_size - content.size();
            if (fragment_offset + tail > frag.size()) {
                throw MalformedArchive("squashfs: fragment too short for " + path);
            }
            content.insert(content.end(), frag.begin() + fragment_offset, frag.begin() + fragment_offset + tail);
        }
        detail::add_object(out_, path, std::move(content));
    }

    Image& img_;
    FilesystemContents& out_;
    std::set<std::uint64_t> visited_;
};

} // namespace

FilesystemContents extract_squashfs(ByteView b)
{
    if (b.size() < superblock_size) {
        throw TruncatedImage("squashfs: superblock needs 96 bytes, have " + std::to_string(b.size()));
    }
    if (as_chars(b.first(4)) != "hsqs") {
        if (as_chars(b.first(4)) == "sqsh") {
            throw UnsupportedVariant("squashfs: big-endian image");
        }
        throw MalformedArchive("squashfs: bad magic");
    }
    const std::uint16_t major = load_le16(&b[28]);
    if (major != 4) {
        throw UnsupportedVariant("squashfs: version " + std::to_string(major));
    }
    const std::uint16_t compressor = load_le16(&b[20]);
    if (compressor != 1) {
        throw UnsupportedVariant("squashfs: compressor id " + std::to_string(compressor) + " (only zlib supported)");
    }
    Superblock sb{};
    sb.block_size = load_le32(&b[12]);
    sb.fragment_count = load_le32(&b[16]);
    const std::uint16_t block_log = load_le16(&b[22]);
    sb.root_inode = load_le64(&b[32]);
    sb.bytes_used = load_le64(&b[40]);
    sb.inode_table = load_le64(&b[64]);
    sb.directory_table = load_le64(&b[72]);
    sb.fragment_table = load_le64(&b[80]);
    if (block_log < 12 || block_log > 20 || sb.block_size != (1u << block_log)) {
        throw MalformedArchive("squashfs: inconsistent block size");
    }
    if (sb.bytes_used > b.size()) {
        throw TruncatedImage("squashfs: bytes_used exceeds available data");
    }
    if (sb.inode_table >= sb.bytes_used || sb.directory_table >= sb.bytes_used) {
        throw MalformedArchive("squashfs: table offsets outside image");
    }
    FilesystemContents out;
    Image image(b.first(sb.bytes_used), sb);
    Reader reader(image, out);
    reader.walk_directory(split_ref(sb.root_inode), "", 0);
    return out;
}

} // namespace tpcscan::extraction
