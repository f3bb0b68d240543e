#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crimping.hpp"
#include "error.hpp"
#include "rational.hpp"

namespace akvgit {

// A_k singularity bookkeeping. A_0 stands for a smooth (marked) point.
inline int branch_count(int k) { return k % 2 == 0 ? 1 : 2; }
inline int delta(int k) { return (k + 1) / 2; }
inline int conductor_per_branch(int k) { return k % 2 == 0 ? k : (k + 1) / 2; }
inline int singularity_m(int k) { return k / 2; }
inline Parity singularity_parity(int k) { return k % 2 == 0 ? Parity::even : Parity::odd; }
inline std::size_t crimping_length(int k) { return static_cast<std::size_t>(std::max(0, singularity_m(k) - 1)); }

struct PointRef {
    std::string comp;
    std::string pt;

    auto operator<=>(const PointRef&) const = default;
};

inline std::string to_string(const PointRef& p) { return p.comp + "." + p.pt; }

struct Component {
    std::string id;
    int genus = 0;
    std::vector<std::string> points;
    std::vector<std::string> weierstrass;

    bool operator==(const Component&) const = default;
};

struct Singularity {
    int k = 1;
    std::vector<PointRef> branches;
    std::vector<Rational> crimping;

    bool operator==(const Singularity&) const = default;
};

// Declared H_{m,1} (one point) or H_{m,2} (two points) structure.
struct HDeclaration {
    std::vector<PointRef> points;
    int m = 1;

    int pointed() const { return static_cast<int>(points.size()); }
    bool operator==(const HDeclaration&) const = default;
};

struct CurveGraph {
    std::vector<Component> components;
    std::vector<PointRef> marks;
    std::vector<Singularity> singularities;
    std::vector<HDeclaration> h_declarations;

    bool operator==(const CurveGraph&) const = default;
};

struct Violation {
    std::string rule;
    std::string witness;

    bool operator==(const Violation&) const = default;
};

struct Verdict {
    bool pass = true;
    std::vector<Violation> violations;

    void add(std::string rule, std::string witness) {
        pass = false;
        violations.push_back({std::move(rule), std::move(witness)});
    }
};

inline Verdict validate(const CurveGraph& c) {
    Verdict v;
    if (c.components.empty()) v.add("empty-curve", "no components");
    std::map<std::string, const Component*> comps;
    std::set<PointRef> points;
    for (const auto& comp : c.components) {
        if (!comps.emplace(comp.id, &comp).second) v.add("duplicate-component", comp.id);
        if (comp.genus < 0) v.add("negative-genus", comp.id);
        for (const auto& p : comp.points)
            if (!points.insert({comp.id, p}).second) v.add("duplicate-point", to_string({comp.id, p}));
        for (const auto& w : comp.weierstrass)
            if (!points.count({comp.id, w})) v.add("unknown-point", "weierstrass " + to_string({comp.id, w}));
    }
    std::map<PointRef, std::string> used;
    auto claim = [&](const PointRef& p, const std::string& what) {
        if (!points.count(p)) {
            v.add("unknown-point", what + " " + to_string(p));
            return;
        }
        auto [it, fresh] = used.emplace(p, what);
        if (!fresh) {
            bool mark_on_branch = (it->second == "mark") != (what == "mark");
            v.add(mark_on_branch ? "marked-singular-point" : "point-reused", to_string(p));
        }
    };
    for (const auto& m : c.marks) claim(m, "mark");
    for (std::size_t i = 0; i < c.singularities.size(); ++i) {
        const auto& s = c.singularities[i];
        std::string name = "A_" + std::to_string(s.k) + " #" + std::to_string(i);
        if (s.k < 1) v.add("bad-singularity-type", name);
        else if (static_cast<int>(s.branches.size()) != branch_count(s.k)) v.add("branch-count", name);
        if (s.k >= 1 && s.crimping.size() != crimping_length(s.k)) v.add("crimping-length", name);
        for (const auto& b : s.branches) claim(b, name);
    }
    for (const auto& d : c.h_declarations) {
        if (d.m < 1 || (d.pointed() != 1 && d.pointed() != 2)) v.add("bad-h-declaration", "type");
        for (const auto& p : d.points)
            if (!points.count(p)) v.add("unknown-point", "h-declaration " + to_string(p));
    }
    if (!v.pass) return v;

    std::map<std::string, std::string> parent;
    for (const auto& comp : c.components) parent[comp.id] = comp.id;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& s : c.singularities)
        for (std::size_t b = 1; b < s.branches.size(); ++b) parent[find(s.branches[b].comp)] = find(s.branches[0].comp);
    std::set<std::string> roots;
    for (const auto& comp : c.components) roots.insert(find(comp.id));
    if (roots.size() > 1) v.add("disconnected", std::to_string(roots.size()) + " connected pieces");
    return v;
}

inline void require_valid(const CurveGraph& c) {
    auto v = validate(c);
    if (!v.pass)
        throw Error(ErrorKind::invalid_input, "invalid curve: " + v.violations[0].rule + " (" + v.violations[0].witness + ")");
}

inline int arithmetic_genus(const CurveGraph& c) {
    int g = 1 - static_cast<int>(c.components.size());
    for (const auto& comp : c.components) g += comp.genus;
    for (const auto& s : c.singularities) g += delta(s.k);
    return g;
}

// Role of every point; built once per curve.
struct CurveIndex {
    enum class Kind { free, mark, branch };
    struct Role {
        Kind kind = Kind::free;
        std::size_t index = 0;   // mark or singularity index
        std::size_t branch = 0;  // branch slot within the singularity
    };

    const CurveGraph* curve = nullptr;
    std::map<std::string, std::size_t> comp;
    std::map<PointRef, Role> role;

    explicit CurveIndex(const CurveGraph& c) : curve(&c) {
        for (std::size_t i = 0; i < c.components.size(); ++i) {
            comp[c.components[i].id] = i;
            for (const auto& p : c.components[i].points) role[{c.components[i].id, p}] = {};
        }
        for (std::size_t i = 0; i < c.marks.size(); ++i) role[c.marks[i]] = {Kind::mark, i, 0};
        for (std::size_t i = 0; i < c.singularities.size(); ++i)
            for (std::size_t b = 0; b < c.singularities[i].branches.size(); ++b)
                role[c.singularities[i].branches[b]] = {Kind::branch, i, b};
    }

    std::size_t comp_of(const PointRef& p) const { return comp.at(p.comp); }
    const Role& role_of(const PointRef& p) const { return role.at(p); }

    // A_0 for marked points, the singularity type otherwise, -1 for a free smooth point.
    int attaching_k(const PointRef& p) const {
        const auto& r = role_of(p);
        if (r.kind == Kind::mark) return 0;
        if (r.kind == Kind::branch) return curve->singularities[r.index].k;
        return -1;
    }

    std::vector<PointRef> points_on(std::size_t ci) const {
        std::vector<PointRef> out;
        const auto& comp_ = curve->components[ci];
        for (const auto& p : comp_.points) out.push_back({comp_.id, p});
        return out;
    }

    bool is_weierstrass(const PointRef& p) const {
        const auto& w = curve->components[comp_of(p)].weierstrass;
        return std::find(w.begin(), w.end(), p.pt) != w.end();
    }

    int omega_degree(std::size_t ci) const {
        const auto& comp_ = curve->components[ci];
        int d = 2 * comp_.genus - 2;
        for (const auto& p : comp_.points) {
            const auto& r = role_of({comp_.id, p});
            if (r.kind == Kind::mark) d += 1;
            else if (r.kind == Kind::branch) d += conductor_per_branch(curve->singularities[r.index].k);
        }
        return d;
    }
};

inline int omega_degree(const CurveGraph& c, const std::string& component) {
    require_valid(c);
    CurveIndex idx(c);
    auto it = idx.comp.find(component);
    if (it == idx.comp.end()) throw Error(ErrorKind::invalid_input, "unknown component " + component);
    return idx.omega_degree(it->second);
}

inline bool is_ample(const CurveGraph& c) {
    require_valid(c);
    CurveIndex idx(c);
    for (std::size_t i = 0; i < c.components.size(); ++i)
        if (idx.omega_degree(i) <= 0) return false;
    return true;
}

// Components S glued to the rest of the curve through the boundary points only.
struct Subcurve {
    std::vector<std::size_t> comps;
    std::vector<PointRef> boundary;
};

struct SubcurveInfo {
    bool valid = false;
    int genus = 0;
    bool ample = false;
    std::vector<std::size_t> internal;  // singularities with every branch inside and off the boundary
    std::vector<int> attaching;         // per boundary point
};

inline SubcurveInfo evaluate(const CurveIndex& idx, const Subcurve& sub) {
    const auto& c = *idx.curve;
    SubcurveInfo info;
    std::set<std::size_t> in(sub.comps.begin(), sub.comps.end());
    std::set<PointRef> bnd(sub.boundary.begin(), sub.boundary.end());
    if (in.empty() || bnd.size() != sub.boundary.size()) return info;
    for (const auto& q : sub.boundary) {
        if (!in.count(idx.comp_of(q))) return info;
        int k = idx.attaching_k(q);
        if (k < 0) return info;
        info.attaching.push_back(k);
    }
    for (std::size_t ci : in)
        for (const auto& p : idx.points_on(ci)) {
            const auto& r = idx.role_of(p);
            if (r.kind == CurveIndex::Kind::mark && !bnd.count(p)) return info;
        }
    std::set<std::size_t> touched;
    for (std::size_t ci : in)
        for (const auto& p : idx.points_on(ci)) {
            const auto& r = idx.role_of(p);
            if (r.kind == CurveIndex::Kind::branch) touched.insert(r.index);
        }
    for (std::size_t si : touched) {
        const auto& s = c.singularities[si];
        int inside = 0, on_boundary = 0;
        for (const auto& b : s.branches) {
            if (in.count(idx.comp_of(b))) ++inside;
            if (bnd.count(b)) ++on_boundary;
        }
        if (on_boundary == 0) {
            if (inside != static_cast<int>(s.branches.size())) return info;
            info.internal.push_back(si);
        } else if (on_boundary != inside) {
            return info;
        }
    }
    std::map<std::size_t, std::size_t> parent;
    for (std::size_t ci : in) parent[ci] = ci;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t si : info.internal) {
        const auto& s = c.singularities[si];
        for (std::size_t b = 1; b < s.branches.size(); ++b)
            parent[find(idx.comp_of(s.branches[b]))] = find(idx.comp_of(s.branches[0]));
    }
    std::set<std::size_t> roots;
    for (std::size_t ci : in) roots.insert(find(ci));
    if (roots.size() != 1) return info;

    info.genus = 1 - static_cast<int>(in.size());
    std::map<std::size_t, int> deg;
    for (std::size_t ci : in) {
        info.genus += c.components[ci].genus;
        deg[ci] = 2 * c.components[ci].genus - 2;
    }
    for (std::size_t si : info.internal) {
        const auto& s = c.singularities[si];
        info.genus += delta(s.k);
        for (const auto& b : s.branches) deg[idx.comp_of(b)] += conductor_per_branch(s.k);
    }
    for (const auto& q : sub.boundary) deg[idx.comp_of(q)] += 1;
    info.ample = std::all_of(deg.begin(), deg.end(), [](const auto& kv) { return kv.second > 0; });
    info.valid = true;
    return info;
}

inline std::string attaching_name(int k) {
    switch (k) {
    case 0: return "marked";
    case 1: return "nodal";
    case 2: return "cuspidal";
    case 3: return "tacnodal";
    case 4: return "ramphoid";
    default: return "A_" + std::to_string(k);
    }
}

} // namespace akvgit
