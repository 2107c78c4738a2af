#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "holistic/model.hpp"
#include "holistic/stencil.hpp"

namespace holistic {

using Json = nlohmann::ordered_json;

/// Wire format for an h-homogeneous stencil:
///   {"hpower": int, "taps": {"-2": "1/2", ...}}
/// with rationals as "p/q" strings. Round-trips bit-exactly.
inline Json stencil_to_json(const Stencil& s) {
    const auto hp = s.homogeneous_hpower();
    if (!hp && !s.is_zero())
        throw std::invalid_argument(
            "stencil_to_json: stencil mixes h powers; serialise it per h-power part");
    Json j;
    j["hpower"] = hp.value_or(0);
    j["taps"] = Json::object();
    for (const auto& [r, c] : s.taps())
        j["taps"][std::to_string(r)] = c.coeff(*hp).to_string();
    return j;
}

inline Stencil stencil_from_json(const Json& j) {
    Stencil s;
    const int hp = j.at("hpower").get<int>();
    for (const auto& [key, val] : j.at("taps").items())
        s.set(std::stoi(key), HCoeff(Rational::from_string(val.get<std::string>()), hp));
    return s;
}

/// Split a stencil into h-homogeneous parts, ordered by h-power.
inline std::map<int, Stencil> stencil_h_parts(const Stencil& s) {
    std::map<int, Stencil> parts;
    for (const auto& [r, c] : s.taps())
        for (const auto& [hp, val] : c.terms()) parts[hp].add(r, HCoeff(val, hp));
    return parts;
}

/// Model wire format:
///   {"gamma_order": L, "eps_order": E, "terms": [{"g": k, "e": e, "stencil": {...}}]}
/// A (g, e) order whose stencil mixes h powers is emitted as one term entry
/// per h-power, ascending, so each embedded stencil keeps the exact format.
inline Json model_to_json(const ModelSeries& m) {
    Json j;
    j["gamma_order"] = m.gamma_order();
    j["eps_order"] = m.eps_order();
    j["terms"] = Json::array();
    for (const auto& [key, s] : m.series().terms())
        for (const auto& [hp, part] : stencil_h_parts(s)) {
            Json t;
            t["g"] = key.first;
            t["e"] = key.second;
            t["stencil"] = stencil_to_json(part);
            j["terms"].push_back(std::move(t));
        }
    return j;
}

inline ModelSeries model_from_json(const Json& j) {
    ModelSeries m(j.at("gamma_order").get<int>(), j.at("eps_order").get<int>());
    for (const auto& t : j.at("terms"))
        m.add(t.at("g").get<int>(), t.at("e").get<int>(), stencil_from_json(t.at("stencil")));
    return m;
}

}  // namespace holistic
