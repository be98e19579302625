#pragma once

#include "tpcscan/extraction/types.hpp"

#include <vector>

namespace tpcscan::extraction {

struct IdentifyConfig {
    /// Mean block entropy at or above this reads as compressed or encrypted.
    double entropy_ceiling = 7.0;
    /// Fraction of aligned words that must decode for a monolithic image.
    double min_decode_fraction = 0.7;
};

FirmwareInfo identify_firmware(const FirmwareImage& image, const std::vector<CarvedRegion>& regions,
                               const std::vector<ExtractedObject>& objects, const IdentifyConfig& config = {});

/// Bytes used for the instruction probe: the executable sections when the
/// image itself is an ELF file, the raw image otherwise.
Bytes probe_bytes(ByteView image);

} // namespace tpcscan::extraction
