#pragma once

#include "tpcscan/binfeat/acfg.hpp"

#include <nlohmann/json.hpp>

#include <vector>

namespace tpcscan::binfeat {

// ACFG exchange format, one object per function:
//   {"function_id": "SSL_read",
//    "blocks": [[str, num, transfer, calls, insns, arith, offspring], ...],
//    "edges": [[from, to], ...],
//    "func_attrs": {"n_blocks": 3, "n_edges": 3, "n_variables": 2}}
// A document is either a list of such objects or {"acfgs": [...]}.

nlohmann::json acfg_to_json(const Acfg& acfg);

/// Throws InvalidAcfg on a shape error or a broken invariant.
Acfg acfg_from_json(const nlohmann::json& j);

std::vector<Acfg> acfgs_from_document(const nlohmann::json& doc);

} // namespace tpcscan::binfeat
