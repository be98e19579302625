#include "tpcscan/matcher/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tpcscan::matcher {

std::size_t levenshtein(std::string_view a, std::string_view b)
{
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> row(b.size() + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0u : 1u)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::size_t bounded_levenshtein(std::string_view a, std::string_view b, std::size_t bound)
{
    if (a.size() < b.size()) std::swap(a, b);
    const std::size_t over = bound + 1;
    if (a.size() - b.size() > bound) return over;
    if (b.empty()) return a.size();
    // Only cells with |i - j| <= bound can stay within the bound.
    const std::size_t inf = a.size() + b.size() + 1;
    std::vector<std::size_t> prev(b.size() + 1, inf), cur(b.size() + 1, inf);
    for (std::size_t j = 0; j <= std::min(b.size(), bound); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        const std::size_t lo = i > bound ? i - bound : 0;
        const std::size_t hi = std::min(b.size(), i + bound);
        std::fill(cur.begin(), cur.end(), inf);
        if (lo == 0) cur[0] = i;
        std::size_t row_min = lo == 0 ? cur[0] : inf;
        for (std::size_t j = std::max<std::size_t>(lo, 1); j <= hi; ++j) {
            std::size_t v = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            v = std::min(v, prev[j] + 1);
            v = std::min(v, cur[j - 1] + 1);
            cur[j] = v;
            row_min = std::min(row_min, v);
        }
        if (row_min > bound) return over;
        std::swap(prev, cur);
    }
    return std::min(prev[b.size()], over);
}

namespace {

double similarity_of(std::size_t d, std::size_t m)
{
    return 1.0 - static_cast<double>(d) / static_cast<double>(m);
}

} // namespace

double edit_similarity(std::string_view a, std::string_view b)
{
    const std::size_t m = std::max(a.size(), b.size());
    if (m == 0) return 1.0;
    return similarity_of(levenshtein(a, b), m);
}

std::size_t max_distance_for(std::size_t m, double alpha)
{
    if (m == 0) return 0;
    auto d = static_cast<std::size_t>(std::max(0.0, std::floor((1.0 - alpha) * static_cast<double>(m))));
    d = std::min(d, m);
    while (d < m && similarity_of(d + 1, m) >= alpha) ++d;
    while (d > 0 && similarity_of(d, m) < alpha) --d;
    return d;
}

bool in_length_band(std::size_t la, std::size_t lb, double alpha)
{
    const std::size_t m = std::max(la, lb);
    const std::size_t diff = la > lb ? la - lb : lb - la;
    const auto band = static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(m)));
    // The exact predicate bound guards against rounding in the product.
    return diff <= std::max(band, max_distance_for(m, alpha));
}

FeatureIndex::FeatureIndex(const std::set<std::string>& features)
{
    for (const auto& f : features) {
        exact_.insert(f);
        by_length_[f.size()].push_back(f);
    }
}

bool FeatureIndex::has_similar(std::string_view f, double alpha, bool prune) const
{
    if (exact_.count(std::string(f))) return true;
    if (!prune) {
        for (const auto& [_, group] : by_length_) {
            for (const auto& g : group) {
                if (edit_similarity(f, g) >= alpha) return true;
            }
        }
        return false;
    }
    const std::size_t la = f.size();
    const auto slack = static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(la))) + 1;
    auto it = by_length_.lower_bound(la > slack ? la - slack : 0);
    for (; it != by_length_.end(); ++it) {
        const std::size_t lb = it->first;
        if (lb > la && lb - la > static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(lb))) + 1) {
            break;
        }
        if (!in_length_band(la, lb, alpha)) continue;
        const std::size_t m = std::max(la, lb);
        const std::size_t k = max_distance_for(m, alpha);
        for (const auto& g : it->second) {
            if (m == 0) return true;
            const std::size_t d = bounded_levenshtein(f, g, k);
            if (d <= k && similarity_of(d, m) >= alpha) return true;
        }
    }
    return false;
}

double FeatureIndex::best_similarity(std::string_view f) const
{
    if (exact_.count(std::string(f))) return 1.0;
    const std::size_t la = f.size();
    // Visit lengths by their similarity ceiling 1 - |la - lb| / max.
    std::vector<std::pair<double, std::size_t>> order;
    for (const auto& [lb, _] : by_length_) {
        const std::size_t m = std::max(la, lb);
        if (m == 0) continue;
        order.emplace_back(similarity_of(la > lb ? la - lb : lb - la, m), lb);
    }
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    double best = 0.0;
    for (const auto& [ceiling, lb] : order) {
        if (ceiling <= best) break;
        const std::size_t m = std::max(la, lb);
        for (const auto& g : by_length_.at(lb)) {
            // only distances strictly better than the current best matter
            std::size_t bound = m;
            while (bound > 0 && similarity_of(bound, m) <= best) --bound;
            if (similarity_of(bound, m) <= best) break;
            const std::size_t d = bounded_levenshtein(f, g, bound);
            if (d <= bound) best = std::max(best, similarity_of(d, m));
        }
    }
    return best;
}

std::size_t match_feature_set(const std::set<std::string>& tpc, const FeatureIndex& fw, double alpha, bool prune)
{
    std::size_t matched = 0;
    for (const auto& f : tpc) {
        if (fw.has_similar(f, alpha, prune)) ++matched;
    }
    return matched;
}

std::size_t match_feature_set(const std::set<std::string>& tpc, const std::set<std::string>& fw, double alpha,
                              bool prune)
{
    return match_feature_set(tpc, FeatureIndex(fw), alpha, prune);
}

} // namespace tpcscan::matcher
