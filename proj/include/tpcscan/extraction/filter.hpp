#pragma once

#include "tpcscan/common/bytes.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tpcscan::extraction {

struct FilterRules {
    /// Lower-case file name suffixes that are never firmware.
    std::vector<std::string> reject_suffixes{".txt", ".md", ".html", ".htm", ".pdf", ".doc", ".docx", ".xml",
                                             ".csv", ".json", ".png", ".jpg", ".jpeg", ".gif", ".dex", ".apk",
                                             ".exe", ".msi", ".sig", ".sha256", ".md5"};
    bool reject_plain_text = true;
};

struct FilterDecision {
    bool accept = false;
    /// "suffix", "empty", "content:<type>" for rejections; "signature:<kind>"
    /// or "default" for acceptances.
    std::string reason;
};

/// Decides whether a downloaded file is worth treating as a firmware image.
FilterDecision filter_candidate(std::string_view name, ByteView bytes, const FilterRules& rules = {});

} // namespace tpcscan::extraction
