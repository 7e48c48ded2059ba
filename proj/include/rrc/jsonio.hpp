#pragma once

// JSON rendering of classification results.  Field order is fixed so that
// identical (input, mode, seed) produce byte-identical output.

#include <json.hpp>

#include "classify.hpp"

namespace rrc {

using Json = nlohmann::ordered_json;

inline Json rat_json(const Rat& r) { return r.get_str(); }

inline Json point_json(const std::vector<Rat>& pt) {
    Json a = Json::array();
    for (auto& v : pt) a.push_back(rat_json(v));
    return a;
}

inline Json result_json(const ClassificationResult& r) {
    Json j;
    j["algorithm"] = r.algorithm;
    j["x_order"] = r.x_order;
    j["seed"] = r.seed;
    j["delta"] = r.delta;
    Json boundary;
    boundary["w_infinity"] = r.w_infinity.str();
    if (r.w_H) boundary["w_H"] = r.w_H->str();
    if (!r.minors.empty()) {
        Json ms = Json::array();
        for (auto& m : r.minors) ms.push_back(m.str());
        boundary["minors"] = ms;
    }
    if (!r.subresultants.empty()) {
        Json ss = Json::array();
        for (auto& s : r.subresultants) ss.push_back(s.str());
        boundary["subresultants"] = ss;
    }
    j["boundary"] = boundary;
    Json cond = Json::array();
    for (auto& p : r.condition_polys) cond.push_back(p.str());
    j["condition_polynomials"] = cond;
    Json cells = Json::array();
    for (auto& c : r.cells) {
        Json jc;
        jc["signs"] = c.signs;
        jc["sample"] = point_json(c.sample);
        jc["count"] = c.count;
        cells.push_back(jc);
    }
    j["cells"] = cells;
    Json formulas;
    for (auto& [count, conds] : r.formulas) formulas[std::to_string(count)] = conds;
    j["formulas"] = formulas;
    j["realizability"] = r.realizability;
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    return j;
}

inline Json cross_json(const CrossReport& rep, std::uint64_t seed) {
    Json j;
    j["algorithm"] = "cross-validate";
    j["seed"] = seed;
    j["agreement"] = true; // a disagreement throws before reaching here
    j["points_checked"] = rep.points_checked;
    j["points_skipped"] = rep.points_skipped;
    Json ch = Json::array(), cs = Json::array();
    for (int c : rep.counts_hermite) ch.push_back(c);
    for (int c : rep.counts_sturm) cs.push_back(c);
    j["counts_hermite"] = ch;
    j["counts_sturm"] = cs;
    j["hermite"] = result_json(rep.hermite);
    j["sturm"] = result_json(rep.sturm);
    return j;
}

} // namespace rrc
