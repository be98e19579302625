#pragma once

#include "tpcscan/tpcdb/types.hpp"

#include <set>
#include <string>
#include <vector>

namespace tpcscan::tpcdb {

struct VersionFeatures {
    std::string version;
    std::set<std::string> strings;
    std::set<std::string> functions;
};

/// Sharing sets are the intersection over all versions; the unique set of a
/// version holds what no other version has. Strings and functions are
/// handled separately. Output order follows the input.
std::vector<VersionSignature> derive_signature_sets(const std::vector<VersionFeatures>& versions);

/// Recomputes the sharing/unique sets of an existing record in place.
void rederive(TpcRecord& record);

/// The part of a "name(types)" signature before the parameter list.
std::string function_name_of(std::string_view signature);

/// Printable runs of a source literal at least `min_len` long, as they
/// appear when the compiled literal is read back out of a binary.
std::set<std::string> observable_strings(std::string_view literal, std::size_t min_len = 4);

} // namespace tpcscan::tpcdb
