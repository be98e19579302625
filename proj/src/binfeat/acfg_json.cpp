#include "tpcscan/binfeat/acfg_json.hpp"

namespace tpcscan::binfeat {

using nlohmann::json;

json acfg_to_json(const Acfg& acfg)
{
    json blocks = json::array();
    for (const auto& b : acfg.blocks) {
        blocks.push_back(b.as_array());
    }
    json edges = json::array();
    for (const auto& [from, to] : acfg.edges) {
        edges.push_back({from, to});
    }
    return json{
        {"function_id", acfg.function_id},
        {"blocks", std::move(blocks)},
        {"edges", std::move(edges)},
        {"func_attrs",
         {{"n_blocks", acfg.func_attrs.n_blocks},
          {"n_edges", acfg.func_attrs.n_edges},
          {"n_variables", acfg.func_attrs.n_variables}}},
    };
}

Acfg acfg_from_json(const json& j)
{
    Acfg acfg;
    try {
        acfg.function_id = j.at("function_id").get<std::string>();
        for (const auto& b : j.at("blocks")) {
            if (!b.is_array() || b.size() != BlockAttr::kCount) {
                throw InvalidAcfg(acfg.function_id + ": every block needs exactly 7 attributes");
            }
            acfg.blocks.push_back(BlockAttr::from_array(b.get<std::array<int, BlockAttr::kCount>>()));
        }
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw InvalidAcfg(acfg.function_id + ": edges are [from, to] pairs");
            }
            acfg.edges.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
        }
        const auto& fa = j.at("func_attrs");
        acfg.func_attrs.n_blocks = fa.at("n_blocks").get<int>();
        acfg.func_attrs.n_edges = fa.at("n_edges").get<int>();
        acfg.func_attrs.n_variables = fa.at("n_variables").get<int>();
    } catch (const json::exception& e) {
        throw InvalidAcfg(std::string("malformed ACFG object: ") + e.what());
    }
    if (acfg.function_id.empty()) {
        throw InvalidAcfg("ACFG without a function_id");
    }
    acfg.validate();
    return acfg;
}

std::vector<Acfg> acfgs_from_document(const json& doc)
{
    const json* list = &doc;
    if (doc.is_object() && doc.contains("acfgs")) {
        list = &doc.at("acfgs");
    }
    if (!list->is_array()) {
        throw InvalidAcfg("ACFG document must be a list or an object with an \"acfgs\" list");
    }
    std::vector<Acfg> out;
    out.reserve(list->size());
    for (const auto& item : *list) {
        out.push_back(acfg_from_json(item));
    }
    return out;
}

} // namespace tpcscan::binfeat
