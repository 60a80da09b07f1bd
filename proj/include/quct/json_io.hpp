#pragma once

/**
 * @file json_io.hpp
 * @brief JSON renderings of the public types (stable schemas, stable key order).
 */

#include <json.hpp>

#include "quct/invariants.hpp"
#include "quct/oracle.hpp"
#include "quct/quadext.hpp"
#include "quct/spectrum.hpp"
#include "quct/verify.hpp"

namespace quct {

using Json = nlohmann::ordered_json;

/// {"1": "a/b", "5": "c/d"} with radicands ascending.
inline Json to_json(const QuadExt& x) {
    Json out = Json::object();
    for (const auto& [d, c] : x.terms()) out[d.get_str()] = c.get_str();
    return out;
}

/// [{"value": ..., "approx": float, "multiplicity": int}, ...] descending.
inline Json to_json(const Spectrum& s) {
    Json out = Json::array();
    for (const auto& e : s.entries()) {
        Json entry;
        entry["value"] = to_json(e.value);
        entry["approx"] = e.value.approx_value();
        entry["multiplicity"] = e.multiplicity;
        out.push_back(entry);
    }
    return out;
}

inline Json to_json(const MatchReport& m) {
    Json out;
    out["method"] = m.method;
    out["max_dev"] = m.max_dev;
    out["tol"] = m.tol;
    out["pass"] = m.pass;
    return out;
}

inline Json to_json(const InvariantReport& r) {
    Json out;
    out["ring"] = r.ring;
    out["order"] = r.order;
    out["classification"] = r.classification;
    out["degree"] = r.degree;
    out["energy"] = Json{{"exact", to_json(r.energy)}, {"text", r.energy.str()}, {"approx", r.energy_approx}};
    out["hyperenergetic"] = Json{{"computed", r.hyperenergetic.computed},
                                 {"classifier", r.hyperenergetic.classifier}};
    Json moments = Json::array();
    for (const auto& m : r.moments) moments.push_back(m.get_str());
    out["moments"] = moments;
    out["triangles"] = r.triangles.get_str();
    out["ramanujan"] = Json{{"computed", r.ramanujan.computed}, {"classifier", r.ramanujan.classifier}};

    Json sources = Json::object();
    if (r.sources.character) sources["character"] = to_json(*r.sources.character);
    if (r.sources.jacobi) sources["jacobi"] = to_json(*r.sources.jacobi);
    if (r.sources.moments_match) sources["moments_match"] = *r.sources.moments_match;
    if (r.sources.triangles_match) sources["triangles_match"] = *r.sources.triangles_match;
    if (r.sources.energy_match) sources["energy_match"] = *r.sources.energy_match;
    out["sources"] = sources;

    if (r.diameter) {
        out["diameter"] = *r.diameter;
    } else if (r.diameter_infinite) {
        out["diameter"] = "INFINITE";
    }
    if (r.tensor_decomposable) out["tensor_decomposes"] = *r.tensor_decomposable;
    return out;
}

inline Json to_json(const CheckResult& c) {
    Json out;
    out["invariant"] = c.invariant;
    out["ring"] = c.ring;
    out["pass"] = c.pass;
    if (!c.detail.empty()) out["detail"] = c.detail;
    return out;
}

}  // namespace quct
