#include "tpcscan/tpcdb/signatures.hpp"

#include "tpcscan/binfeat/strings.hpp"

#include <algorithm>
#include <iterator>

namespace tpcscan::tpcdb {

namespace {

std::set<std::string> intersect(const std::set<std::string>& a, const std::set<std::string>& b)
{
    std::set<std::string> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

std::set<std::string> minus(const std::set<std::string>& a, const std::set<std::string>& b)
{
    std::set<std::string> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

} // namespace

std::vector<VersionSignature> derive_signature_sets(const std::vector<VersionFeatures>& versions)
{
    std::vector<VersionSignature> out;
    if (versions.empty()) {
        return out;
    }
    std::set<std::string> sharing_strings = versions.front().strings;
    std::set<std::string> sharing_functions = versions.front().functions;
    for (const auto& v : versions) {
        sharing_strings = intersect(sharing_strings, v.strings);
        sharing_functions = intersect(sharing_functions, v.functions);
    }
    for (std::size_t i = 0; i < versions.size(); ++i) {
        std::set<std::string> other_strings;
        std::set<std::string> other_functions;
        for (std::size_t j = 0; j < versions.size(); ++j) {
            if (j == i) continue;
            other_strings.insert(versions[j].strings.begin(), versions[j].strings.end());
            other_functions.insert(versions[j].functions.begin(), versions[j].functions.end());
        }
        VersionSignature sig;
        sig.version = versions[i].version;
        sig.strings = versions[i].strings;
        sig.functions = versions[i].functions;
        sig.sharing_strings = sharing_strings;
        sig.sharing_functions = sharing_functions;
        sig.unique_strings = minus(versions[i].strings, other_strings);
        sig.unique_functions = minus(versions[i].functions, other_functions);
        out.push_back(std::move(sig));
    }
    return out;
}

void rederive(TpcRecord& record)
{
    std::vector<VersionFeatures> input;
    for (const auto& v : record.versions) {
        input.push_back({v.version, v.strings, v.functions});
    }
    auto derived = derive_signature_sets(input);
    for (std::size_t i = 0; i < derived.size(); ++i) {
        auto& v = record.versions[i];
        v.sharing_strings = std::move(derived[i].sharing_strings);
        v.sharing_functions = std::move(derived[i].sharing_functions);
        v.unique_strings = std::move(derived[i].unique_strings);
        v.unique_functions = std::move(derived[i].unique_functions);
    }
}

std::string function_name_of(std::string_view signature)
{
    return std::string(signature.substr(0, signature.find('(')));
}

std::set<std::string> observable_strings(std::string_view literal, std::size_t min_len)
{
    return binfeat::extract_strings(as_bytes(literal), min_len);
}

} // namespace tpcscan::tpcdb
