#pragma once

#include <set>
#include <string>
#include <string_view>

namespace tpcscan::tpcdb {

struct SourceFeatures {
    std::set<std::string> strings;
    /// "name(type1,type2)" for every function definition.
    std::set<std::string> functions;
};

/// Best-effort C/C++ lexer. Comments, #if 0 bodies and #include operands are
/// skipped; string literals are unescaped and adjacent literals joined;
/// function definitions at file or namespace scope yield signatures with
/// parameter names dropped.
SourceFeatures lex_source_features(std::string_view text);

} // namespace tpcscan::tpcdb
