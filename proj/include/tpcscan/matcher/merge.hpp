#pragma once

#include "tpcscan/matcher/types.hpp"

#include <vector>

namespace tpcscan::matcher {

enum class Side { first, second };

/// Which of two claims on the same TPC supplies the version. A concrete
/// version beats unknown; between two different concrete versions the
/// higher score wins and an exact tie goes to the syntax channel, then to
/// the greater version.
Side reconcile(const MatchResult& a, const MatchResult& b);

/// Union by TPC name with version reconciliation. Every result carries
/// channel "union"; differing concrete versions leave a conflict note.
/// Output is sorted by TPC name.
std::vector<MatchResult> union_merge(const std::vector<MatchResult>& r_syntax, const std::vector<MatchResult>& r_cfg);

} // namespace tpcscan::matcher
