#include "tpcscan/matcher/types.hpp"

#include "tpcscan/tpcdb/version.hpp"

namespace tpcscan::matcher {

void Thresholds::validate() const
{
    for (double v : {alpha, beta, gamma}) {
        if (!(v > 0.0 && v <= 1.0)) throw InvalidThresholds("thresholds must lie in (0, 1]");
    }
}

std::string_view to_string(Channel c)
{
    switch (c) {
    case Channel::syntax: return "syntax";
    case Channel::cfg: return "cfg";
    case Channel::merged: return "union";
    }
    return "syntax";
}

Channel channel_from_string(std::string_view s)
{
    if (s == "syntax") return Channel::syntax;
    if (s == "cfg") return Channel::cfg;
    if (s == "union") return Channel::merged;
    throw Error("unknown channel " + std::string(s));
}

bool MatchResult::version_known() const { return !tpcdb::is_unknown_version(version); }

nlohmann::json to_json(const MatchResult& m)
{
    return {{"tpc", m.tpc},
            {"version", m.version},
            {"channel", to_string(m.channel)},
            {"score", m.score},
            {"evidence",
             {{"sharing_total", m.evidence.sharing_total},
              {"sharing_matched", m.evidence.sharing_matched},
              {"unique_total", m.evidence.unique_total},
              {"unique_matched", m.evidence.unique_matched},
              {"cfg_similarity", m.evidence.cfg_similarity},
              {"acfg_count", m.evidence.acfg_count}}},
            {"notes", m.notes}};
}

MatchResult match_from_json(const nlohmann::json& j)
{
    MatchResult m;
    m.tpc = j.at("tpc").get<std::string>();
    m.version = j.value("version", std::string(tpcdb::unknown_version));
    m.channel = channel_from_string(j.value("channel", "union"));
    m.score = j.value("score", 0.0);
    if (auto it = j.find("evidence"); it != j.end()) {
        m.evidence.sharing_total = it->value("sharing_total", 0);
        m.evidence.sharing_matched = it->value("sharing_matched", 0);
        m.evidence.unique_total = it->value("unique_total", 0);
        m.evidence.unique_matched = it->value("unique_matched", 0);
        m.evidence.cfg_similarity = it->value("cfg_similarity", 0.0);
        m.evidence.acfg_count = it->value("acfg_count", 0);
    }
    m.notes = j.value("notes", std::vector<std::string>{});
    return m;
}

} // namespace tpcscan::matcher
