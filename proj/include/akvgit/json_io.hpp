#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "local_charts.hpp"

namespace akvgit {

using Json = nlohmann::json;

namespace io {

[[noreturn]] inline void fail(const std::string& ptr, const std::string& msg) {
    throw Error(ErrorKind::invalid_input, (ptr.empty() ? std::string("/") : ptr) + ": " + msg);
}

inline const Json& at(const Json& j, const std::string& ptr, const std::string& key) {
    if (!j.is_object()) fail(ptr, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(ptr + "/" + key, "missing field");
    return *it;
}

inline const Json* find(const Json& j, const std::string& key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

inline std::int64_t integer(const Json& j, const std::string& ptr) {
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    return j.get<std::int64_t>();
}

inline std::string string(const Json& j, const std::string& ptr) {
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
}

inline const Json& array(const Json& j, const std::string& ptr) {
    if (!j.is_array()) fail(ptr, "expected an array");
    return j;
}

inline IntVec int_vector(const Json& j, const std::string& ptr) {
    IntVec out;
    for (std::size_t i = 0; i < array(j, ptr).size(); ++i) out.push_back(integer(j[i], ptr + "/" + std::to_string(i)));
    return out;
}

inline Rational rational(const Json& j, const std::string& ptr) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (!j.is_string()) fail(ptr, "expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::exception&) {
        fail(ptr, "malformed rational \"" + j.get<std::string>() + "\"");
    }
}

inline PointRef point(const Json& j, const std::string& ptr) {
    if (!j.is_array() || j.size() != 2) fail(ptr, "expected [component, point]");
    return {string(j[0], ptr + "/0"), string(j[1], ptr + "/1")};
}

inline Json emit(const PointRef& p) { return Json::array({p.comp, p.pt}); }

inline Parity parity(const Json& j, const std::string& ptr) {
    auto s = string(j, ptr);
    if (s == "even") return Parity::even;
    if (s == "odd") return Parity::odd;
    fail(ptr, "expected \"even\" or \"odd\"");
}

} // namespace io

inline Json to_json(const WeightSystem& ws) {
    Json coords = Json::array();
    for (const auto& c : ws.coords) coords.push_back({{"label", c.label}, {"weights", c.weights}});
    return {{"rank", ws.rank}, {"character", ws.character}, {"coords", coords}};
}

inline WeightSystem weight_system_from_json(const Json& j) {
    WeightSystem ws;
    auto rank = io::integer(io::at(j, "", "rank"), "/rank");
    if (rank < 1) io::fail("/rank", "rank must be positive");
    ws.rank = static_cast<int>(rank);
    ws.character = io::int_vector(io::at(j, "", "character"), "/character");
    if (ws.character.size() != static_cast<std::size_t>(rank)) io::fail("/character", "length differs from rank");
    const auto& coords = io::array(io::at(j, "", "coords"), "/coords");
    for (std::size_t i = 0; i < coords.size(); ++i) {
        auto ptr = "/coords/" + std::to_string(i);
        Coord c{io::string(io::at(coords[i], ptr, "label"), ptr + "/label"),
                io::int_vector(io::at(coords[i], ptr, "weights"), ptr + "/weights")};
        if (c.weights.size() != static_cast<std::size_t>(rank)) io::fail(ptr + "/weights", "length differs from rank");
        for (const auto& prev : ws.coords)
            if (prev.label == c.label) io::fail(ptr + "/label", "duplicate label " + c.label);
        ws.coords.push_back(std::move(c));
    }
    return ws;
}

inline Json to_json(const WeightSystem& ws, const StratumUnion& u) { return {{"strata", labeled(ws, u)}}; }

inline StratumUnion stratum_union_from_json(const WeightSystem& ws, const Json& j) {
    const auto& strata = io::array(io::at(j, "", "strata"), "/strata");
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < strata.size(); ++i) {
        auto ptr = "/strata/" + std::to_string(i);
        std::vector<std::size_t> idx;
        for (std::size_t t = 0; t < io::array(strata[i], ptr).size(); ++t) {
            auto label = io::string(strata[i][t], ptr + "/" + std::to_string(t));
            try {
                idx.push_back(ws.index_of(label));
            } catch (const Error&) {
                io::fail(ptr + "/" + std::to_string(t), "unknown coordinate " + label);
            }
        }
        out.push_back(std::move(idx));
    }
    return make_union(std::move(out));
}

inline Json to_json(const CurveGraph& c) {
    Json comps = Json::array();
    for (const auto& comp : c.components) {
        Json e{{"id", comp.id}, {"genus", comp.genus}, {"points", comp.points}};
        if (!comp.weierstrass.empty()) e["weierstrass"] = comp.weierstrass;
        comps.push_back(std::move(e));
    }
    Json sings = Json::array();
    for (const auto& s : c.singularities) {
        Json branches = Json::array();
        for (const auto& b : s.branches) branches.push_back(io::emit(b));
        Json e{{"k", s.k}, {"branches", branches}};
        if (!s.crimping.empty()) {
            Json cr = Json::array();
            for (const auto& x : s.crimping) cr.push_back(to_string(x));
            e["crimping"] = cr;
        }
        sings.push_back(std::move(e));
    }
    Json marks = Json::array();
    for (const auto& p : c.marks) marks.push_back(io::emit(p));
    Json out{{"components", comps}, {"singularities", sings}, {"marks", marks}};
    if (!c.h_declarations.empty()) {
        Json decl = Json::array();
        for (const auto& h : c.h_declarations) {
            Json pts = Json::array();
            for (const auto& p : h.points) pts.push_back(io::emit(p));
            decl.push_back({{"m", h.m}, {"points", pts}});
        }
        out["h_declarations"] = decl;
    }
    return out;
}

// Components without an explicit "points" list get every point the document mentions.
inline CurveGraph curve_from_json(const Json& j) {
    if (!j.is_object()) io::fail("", "expected a curve object");
    CurveGraph c;
    std::vector<bool> explicit_points;
    const auto& comps = io::array(io::at(j, "", "components"), "/components");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        auto ptr = "/components/" + std::to_string(i);
        Component comp;
        comp.id = io::string(io::at(comps[i], ptr, "id"), ptr + "/id");
        comp.genus = static_cast<int>(io::integer(io::at(comps[i], ptr, "genus"), ptr + "/genus"));
        auto* pts = io::find(comps[i], "points");
        if (pts)
            for (std::size_t t = 0; t < io::array(*pts, ptr + "/points").size(); ++t)
                comp.points.push_back(io::string((*pts)[t], ptr + "/points/" + std::to_string(t)));
        explicit_points.push_back(pts != nullptr);
        if (auto* w = io::find(comps[i], "weierstrass"))
            for (std::size_t t = 0; t < io::array(*w, ptr + "/weierstrass").size(); ++t)
                comp.weierstrass.push_back(io::string((*w)[t], ptr + "/weierstrass/" + std::to_string(t)));
        c.components.push_back(std::move(comp));
    }
    std::vector<std::pair<PointRef, std::string>> mentioned;
    if (auto* sings = io::find(j, "singularities")) {
        for (std::size_t i = 0; i < io::array(*sings, "/singularities").size(); ++i) {
            auto ptr = "/singularities/" + std::to_string(i);
            const auto& s = (*sings)[i];
            Singularity sing;
            sing.k = static_cast<int>(io::integer(io::at(s, ptr, "k"), ptr + "/k"));
            const auto& br = io::array(io::at(s, ptr, "branches"), ptr + "/branches");
            for (std::size_t t = 0; t < br.size(); ++t) {
                auto bptr = ptr + "/branches/" + std::to_string(t);
                sing.branches.push_back(io::point(br[t], bptr));
                mentioned.emplace_back(sing.branches.back(), bptr);
            }
            if (auto* cr = io::find(s, "crimping"))
                for (std::size_t t = 0; t < io::array(*cr, ptr + "/crimping").size(); ++t)
                    sing.crimping.push_back(io::rational((*cr)[t], ptr + "/crimping/" + std::to_string(t)));
            else if (sing.k >= 1)
                sing.crimping.assign(crimping_length(sing.k), Rational(0));
            c.singularities.push_back(std::move(sing));
        }
    }
    if (auto* marks = io::find(j, "marks"))
        for (std::size_t i = 0; i < io::array(*marks, "/marks").size(); ++i) {
            auto ptr = "/marks/" + std::to_string(i);
            c.marks.push_back(io::point((*marks)[i], ptr));
            mentioned.emplace_back(c.marks.back(), ptr);
        }
    if (auto* decl = io::find(j, "h_declarations"))
        for (std::size_t i = 0; i < io::array(*decl, "/h_declarations").size(); ++i) {
            auto ptr = "/h_declarations/" + std::to_string(i);
            HDeclaration h;
            h.m = static_cast<int>(io::integer(io::at((*decl)[i], ptr, "m"), ptr + "/m"));
            const auto& pts = io::array(io::at((*decl)[i], ptr, "points"), ptr + "/points");
            for (std::size_t t = 0; t < pts.size(); ++t) {
                h.points.push_back(io::point(pts[t], ptr + "/points/" + std::to_string(t)));
                mentioned.emplace_back(h.points.back(), ptr + "/points/" + std::to_string(t));
            }
            c.h_declarations.push_back(std::move(h));
        }
    for (std::size_t ci = 0; ci < c.components.size(); ++ci)
        for (const auto& w : c.components[ci].weierstrass) mentioned.emplace_back(PointRef{c.components[ci].id, w}, "");
    for (const auto& [p, ptr] : mentioned) {
        auto it = std::find_if(c.components.begin(), c.components.end(), [&](const Component& x) { return x.id == p.comp; });
        if (it == c.components.end()) io::fail(ptr, "unknown component " + p.comp);
        if (explicit_points[it - c.components.begin()]) continue;
        if (std::find(it->points.begin(), it->points.end(), p.pt) == it->points.end()) it->points.push_back(p.pt);
    }
    return c;
}

inline Json to_json(const CrimpingVector& c) {
    Json e = Json::array();
    for (const auto& x : c.entries) e.push_back(to_string(x));
    return {{"parity", to_string(c.parity)}, {"m", c.m}, {"entries", e}};
}

inline CrimpingVector crimping_from_json(const Json& j) {
    CrimpingVector c;
    c.parity = io::parity(io::at(j, "", "parity"), "/parity");
    c.m = static_cast<int>(io::integer(io::at(j, "", "m"), "/m"));
    const auto& e = io::array(io::at(j, "", "entries"), "/entries");
    for (std::size_t i = 0; i < e.size(); ++i) c.entries.push_back(io::rational(e[i], "/entries/" + std::to_string(i)));
    try {
        validate(c);
    } catch (const Error& err) {
        io::fail("/entries", err.what());
    }
    return c;
}

inline Json to_json(const ValuedCrimping& v) {
    Json e = Json::array();
    for (const auto& x : v.entries)
        e.push_back({{"val", x.val ? Json(*x.val) : Json("inf")}, {"lead", to_string(x.lead)}});
    return {{"parity", to_string(v.parity)}, {"m", v.m}, {"entries", e}};
}

inline ValuedCrimping valued_crimping_from_json(const Json& j) {
    ValuedCrimping v;
    v.parity = io::parity(io::at(j, "", "parity"), "/parity");
    v.m = static_cast<int>(io::integer(io::at(j, "", "m"), "/m"));
    const auto& e = io::array(io::at(j, "", "entries"), "/entries");
    for (std::size_t i = 0; i < e.size(); ++i) {
        auto ptr = "/entries/" + std::to_string(i);
        ValuedEntry x;
        const auto& val = io::at(e[i], ptr, "val");
        if (val.is_string() && val.get<std::string>() == "inf") x.val = std::nullopt;
        else x.val = io::integer(val, ptr + "/val");
        if (auto* lead = io::find(e[i], "lead")) x.lead = io::rational(*lead, ptr + "/lead");
        else if (x.val) io::fail(ptr + "/lead", "missing field");
        v.entries.push_back(std::move(x));
    }
    try {
        validate(v);
    } catch (const Error& err) {
        io::fail("/entries", err.what());
    }
    return v;
}

inline Json to_json(const CrimpingLimit& l) { return {{"b", l.b}, {"limit", to_json(l.limit)}}; }

inline Json to_json(const Verdict& v) {
    Json viol = Json::array();
    for (const auto& x : v.violations) viol.push_back({{"rule", x.rule}, {"witness", x.witness}});
    return {{"pass", v.pass}, {"violations", viol}};
}

inline Json to_json(const DegeneracyReport& r) {
    return {{"maximally_degenerate", to_string(r.verdict)}, {"reasons", r.reasons}};
}

inline Json to_json(const Decomposition& d) {
    Json apps = Json::array();
    for (const auto& a : d.appendages) {
        Json ends = Json::array(), core = Json::array(), comps = Json::array();
        for (const auto& p : a.ends) ends.push_back(io::emit(p));
        for (const auto& p : a.core_points) core.push_back(p ? io::emit(*p) : Json(nullptr));
        for (const auto& c : a.piece.components) comps.push_back(c.id);
        Json e{{"kind", a.is_tail ? "tail" : "link"}, {"components", comps}, {"ends", ends}, {"core_points", core}};
        if (a.is_tail) e["attaching"] = a.tail.attaching;
        else {
            e["length"] = a.bridge_count();
            e["attaching"] = {a.link.start_attaching(), a.link.finish_attaching()};
            e["closed"] = a.closed;
        }
        apps.push_back(std::move(e));
    }
    Json out{{"case", to_string(d.kind)}, {"k", d.k}, {"appendages", apps}};
    out["core"] = d.core.components.empty() ? Json(nullptr) : to_json(d.core);
    return out;
}

inline Json to_json(const LabeledWeightSystem& lws) {
    Json out = to_json(lws.system);
    Json labels = Json::object();
    for (std::size_t i = 0; i < lws.tags.size(); ++i) labels[lws.system.coords[i].label] = to_string(lws.tags[i]);
    out["labels"] = labels;
    out["case"] = to_string(lws.kind);
    return out;
}

inline Json to_json(const StrataDiff& d) { return {{"missing", d.missing}, {"extra", d.extra}}; }

inline Json to_json(const CrosscheckReport& r) {
    return {{"pass", r.pass},
            {"case", to_string(r.kind)},
            {"strata_diff", {{"minus", to_json(r.minus_diff)}, {"plus", to_json(r.plus_diff)}}}};
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::invalid_input, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::invalid_input, path + ": " + e.what());
    }
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace akvgit
