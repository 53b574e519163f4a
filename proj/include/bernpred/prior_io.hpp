#pragma once

#include <fstream>
#include <istream>
#include <string>

#include <json.hpp>

#include "bernpred/bayes.hpp"

namespace bernpred {

// Prior file format: a JSON array of {"atom": number, "weight": number}.
// Loading enforces every DiscretePrior invariant.

inline DiscretePrior load_prior(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("prior file: invalid JSON: ") + e.what());
    }
    if (!doc.is_array())
        throw std::runtime_error("prior file: expected a JSON array");
    std::vector<DiscretePrior::Atom> atoms;
    atoms.reserve(doc.size());
    for (const auto& entry : doc) {
        if (!entry.is_object() || !entry.contains("atom") || !entry.contains("weight") ||
            !entry["atom"].is_number() || !entry["weight"].is_number())
            throw std::runtime_error(
                "prior file: each entry must be {\"atom\": number, \"weight\": number}");
        atoms.push_back({entry["atom"].get<double>(), entry["weight"].get<double>()});
    }
    try {
        return DiscretePrior(std::move(atoms));
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("prior file: ") + e.what());
    }
}

inline DiscretePrior load_prior(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("prior file: cannot open " + path);
    return load_prior(in);
}

inline nlohmann::ordered_json prior_to_json(const DiscretePrior& prior) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& a : prior.atoms())
        arr.push_back({{"atom", a.theta}, {"weight", a.weight}});
    return arr;
}

inline void save_prior(const DiscretePrior& prior, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("prior file: cannot write " + path);
    out << prior_to_json(prior).dump(2) << '\n';
}

} // namespace bernpred
