#pragma once

#include "tpcscan/extraction/types.hpp"

#include <vector>

namespace tpcscan::extraction {

/// Scans for known magic constants. Regions come back sorted by offset.
/// Self-describing containers (cpio, tar, squashfs, cramfs, elf) get their
/// header-derived length, compressed streams the length a trial decode
/// consumes; the interior of either is not rescanned. Every other region
/// extends to the next region or the end of the input.
std::vector<CarvedRegion> scan_signatures(ByteView bytes);

} // namespace tpcscan::extraction
