#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperchaos/compact_set.hpp"
#include "hyperchaos/constructors.hpp"
#include "hyperchaos/criteria.hpp"
#include "hyperchaos/pair_class.hpp"
#include "hyperchaos/pl_map.hpp"
#include "hyperchaos/shift_space.hpp"

namespace hyperchaos {

/// Map file format: {"nodes": [["p/q","p/q"], ...]}. The parser reports the
/// first violated invariant together with the offending node index.
struct MapFormatError : std::runtime_error {
    std::size_t index;
    MapFormatError(const std::string& what, std::size_t idx)
        : std::runtime_error(what + " (node " + std::to_string(idx) + ")"), index(idx) {}
};

inline PLMap parse_map_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MapFormatError(std::string("invalid JSON: ") + e.what(), 0);
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
        throw MapFormatError("document must be an object with a \"nodes\" array", 0);
    std::vector<MapNode> nodes;
    std::size_t idx = 0;
    for (const auto& item : doc["nodes"]) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_string())
            throw MapFormatError("node must be a pair of rational strings", idx);
        try {
            nodes.push_back({Rational::parse(item[0].get<std::string>()),
                             Rational::parse(item[1].get<std::string>())});
        } catch (const std::exception& e) {
            throw MapFormatError(e.what(), idx);
        }
        ++idx;
    }
    if (auto err = PLMap::validate(nodes)) throw MapFormatError(err->message, err->index);
    return PLMap(std::move(nodes));
}

inline std::string dump_map_json(const PLMap& m) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : m.nodes()) nodes.push_back({n.x.str(), n.y.str()});
    nlohmann::json doc;
    doc["nodes"] = std::move(nodes);
    return doc.dump(2) + "\n";
}

// --- report serialization ---------------------------------------------------

inline nlohmann::json to_json(const OrbitStats& s) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : s.values) values.push_back(v.str());
    return {{"values", std::move(values)},
            {"tail_start", s.tail_start},
            {"tail_min", s.tail_min.str()},
            {"tail_max", s.tail_max.str()}};
}

inline nlohmann::json to_json(const PairVerdict& v) {
    return {{"class", to_string(v.cls)},
            {"tail_min", v.stats.tail_min.str()},
            {"tail_max", v.stats.tail_max.str()},
            {"horizon", v.params.horizon},
            {"tail_start", v.stats.tail_start},
            {"tol_low", v.params.tol_low.str()},
            {"eps", v.params.eps.str()}};
}

inline nlohmann::json to_json(const ConditionResult& c) {
    return {{"status", c.status()}, {"detail", c.detail}};
}

inline nlohmann::json to_json(const ChaosVerdict& v) {
    nlohmann::json evidence;
    for (const auto& [name, cond] : v.evidence) evidence[name] = to_json(cond);
    nlohmann::json out{{"eps", v.eps.str()},
                       {"tol_low", v.tol_low.str()},
                       {"horizon", v.horizon},
                       {"generic", to_json(v.generic)},
                       {"generic_eps", to_json(v.generic_eps)},
                       {"dense", to_json(v.dense)},
                       {"dense_eps", to_json(v.dense_eps)},
                       {"evidence", std::move(evidence)}};
    if (v.eps_estimate) out["eps_estimate"] = v.eps_estimate->str();
    if (v.th2_fixed_point) out["fixed_point"] = v.th2_fixed_point->str();
    if (v.witness_box)
        out["witness_box"] = {v.witness_box->first.str(), v.witness_box->second.str()};
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : v.transitive_report.entries) {
        nlohmann::json je{{"interval", e.t.str()},
                          {"dichotomy", to_string(e.dichotomy)},
                          {"transitive", e.transitive},
                          {"evidence", e.evidence}};
        if (e.swap_point) je["swap_point"] = e.swap_point->str();
        entries.push_back(std::move(je));
    }
    out["invariant_intervals"] = std::move(entries);
    return out;
}

inline nlohmann::json to_json(const DensityReport& r) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : r.cells)
        cells.push_back({{"i", c.i},
                         {"j", c.j},
                         {"first", c.first},
                         {"second", c.second},
                         {"class", to_string(c.cls)},
                         {"tail_min", c.tail_min.str()},
                         {"tail_max", c.tail_max.str()}});
    nlohmann::json counterexamples = nlohmann::json::array();
    for (const auto& [i, j] : r.counterexample_cells) counterexamples.push_back({i, j});
    nlohmann::json out{{"cells", std::move(cells)},
                       {"count_li_yorke", r.count_li_yorke},
                       {"count_eps_li_yorke", r.count_eps_li_yorke},
                       {"count_asymptotic", r.count_asymptotic},
                       {"count_distal", r.count_distal},
                       {"count_undetermined", r.count_undetermined},
                       {"ly_fraction", r.ly_fraction().str()},
                       {"eps_ly_fraction", r.eps_ly_fraction().str()},
                       {"counterexample_cells", std::move(counterexamples)}};
    if (r.infeasible) out["infeasible"] = r.note;
    return out;
}

inline std::string to_csv(const DensityReport& r) {
    std::ostringstream os;
    os << "i,j,first,second,class,tail_min,tail_max\n";
    for (const auto& c : r.cells)
        os << c.i << ',' << c.j << ',' << c.first << ',' << c.second << ','
           << to_string(c.cls) << ',' << c.tail_min.str() << ',' << c.tail_max.str() << '\n';
    return os.str();
}

inline nlohmann::json to_json(const HyperPairResult& r) {
    nlohmann::json out{{"ok", r.ok}, {"stages", r.trace.stages}};
    if (!r.ok) out["failed_stage"] = r.trace.failed_stage;
    if (r.ok) {
        out["u"] = r.u.str();
        out["v"] = r.v.str();
    }
    if (r.verification) out["verification"] = to_json(*r.verification);
    return out;
}

inline nlohmann::json to_json(const ShiftExampleReport& r) {
    nlohmann::json series = nlohmann::json::array();
    for (const auto& d : r.dh_series) series.push_back(d.str());
    nlohmann::json expected = nlohmann::json::array();
    for (const auto& d : r.expected_series) expected.push_back(d.str());
    return {{"passed", r.passed()},
            {"census_asymptotic", r.census_asymptotic},
            {"census_size", r.census_size},
            {"series_matches_closed_form", r.series_matches},
            {"limsup_is_one", r.limsup_is_one},
            {"dh_series", std::move(series)},
            {"expected_series", std::move(expected)}};
}

}  // namespace hyperchaos
