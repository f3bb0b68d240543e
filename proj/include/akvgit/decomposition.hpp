#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "h_curves.hpp"

namespace akvgit {

enum class DecompositionCase { I, I_prime, I_double_prime, II, II_prime, II_double_prime };

inline std::string to_string(DecompositionCase c) {
    switch (c) {
    case DecompositionCase::I: return "I";
    case DecompositionCase::I_prime: return "I'";
    case DecompositionCase::I_double_prime: return "I''";
    case DecompositionCase::II: return "II";
    case DecompositionCase::II_prime: return "II'";
    case DecompositionCase::II_double_prime: return "II''";
    }
    return "I";
}

struct Appendage {
    bool is_tail = true;
    HStructure tail;             // even k
    HLink link;                  // odd k
    CurveGraph piece;            // the appendage's components and internal singularities
    std::vector<PointRef> ends;  // appendage-side boundary points, in order
    std::vector<std::optional<PointRef>> core_points;  // core-side branch of each end's node, if any
    bool closed = false;         // a link whose two ends meet at one node

    std::size_t length() const { return is_tail ? 1 : link.chains.size(); }

    std::size_t bridge_count() const {
        std::size_t n = 0;
        for (const auto& ch : link.chains) n += ch.bridges.size();
        return n;
    }
};

struct Decomposition {
    int k = 2;
    DecompositionCase kind = DecompositionCase::I;
    CurveGraph core;  // re-marked at the attaching points; may be empty or disconnected
    std::vector<Appendage> appendages;
    std::vector<Singularity> connections;  // nodes gluing pieces together
    std::vector<PointRef> marks;           // marks of the original curve
    std::vector<HDeclaration> declarations;
};

namespace detail {

inline CurveGraph piece_of(const CurveGraph& c, const CurveIndex& idx, const std::set<std::size_t>& comps,
                           const std::set<std::size_t>& excluded_sings) {
    CurveGraph g;
    for (std::size_t ci : comps) g.components.push_back(c.components[ci]);
    for (std::size_t si = 0; si < c.singularities.size(); ++si) {
        if (excluded_sings.count(si)) continue;
        const auto& s = c.singularities[si];
        if (std::all_of(s.branches.begin(), s.branches.end(), [&](const PointRef& b) { return comps.count(idx.comp_of(b)); }))
            g.singularities.push_back(s);
    }
    for (const auto& d : c.h_declarations)
        if (std::all_of(d.points.begin(), d.points.end(), [&](const PointRef& p) { return comps.count(idx.comp_of(p)); }))
            g.h_declarations.push_back(d);
    return g;
}

inline void require_disjoint(const std::vector<std::vector<std::size_t>>& sets) {
    std::set<std::size_t> seen;
    for (const auto& s : sets)
        for (auto x : s)
            if (!seen.insert(x).second)
                throw Error(ErrorKind::unsupported, "destabilizing appendages share a component");
}

} // namespace detail

inline Decomposition canonical_decomposition(const CurveGraph& c, int k) {
    require_supported_k(k);
    auto verdict = stability(c, k, Variant::plain);
    if (!verdict.pass)
        throw Error(ErrorKind::not_stable, "curve is not A_" + std::to_string(k) + "-stable: " + verdict.violations[0].witness);
    CurveIndex idx(c);
    const int m = k / 2;
    Decomposition d;
    d.k = k;
    d.marks = c.marks;
    d.declarations = c.h_declarations;

    std::vector<Appendage> apps;
    if (k % 2 == 0) {
        for (auto& t : find_h_tails(c, m)) {
            if (!is_destabilizing(t)) continue;
            Appendage a;
            a.is_tail = true;
            a.tail = t;
            a.ends = t.boundary;
            apps.push_back(std::move(a));
        }
    } else {
        std::vector<HChain> chains;
        for (auto& ch : find_h_chains(c, m))
            if (is_destabilizing(ch)) chains.push_back(std::move(ch));
        std::vector<std::vector<std::size_t>> sets;
        for (const auto& ch : chains) sets.push_back(ch.comps());
        detail::require_disjoint(sets);

        // Chain ends joined to another chain end by a node.
        std::map<PointRef, std::pair<std::size_t, int>> end_of;
        for (std::size_t i = 0; i < chains.size(); ++i) {
            end_of[chains[i].start()] = {i, 0};
            end_of[chains[i].finish()] = {i, 1};
        }
        auto across = [&](const PointRef& p) -> std::optional<std::pair<std::size_t, int>> {
            auto q = detail::partner(idx, p, 1);
            if (!q) return std::nullopt;
            auto it = end_of.find(*q);
            if (it == end_of.end()) return std::nullopt;
            return it->second;
        };
        std::vector<bool> used(chains.size(), false);
        auto walk = [&](std::size_t first, bool flip) {
            Appendage a;
            a.is_tail = false;
            a.link.m = m;
            std::size_t cur = first;
            bool rev = flip;
            for (;;) {
                used[cur] = true;
                a.link.chains.push_back(rev ? chains[cur].reversed() : chains[cur]);
                auto nxt = across(a.link.chains.back().finish());
                if (!nxt || used[nxt->first]) break;
                cur = nxt->first;
                rev = nxt->second == 1;
            }
            a.ends = {a.link.start(), a.link.finish()};
            auto back = detail::partner(idx, a.link.finish(), 1);
            a.closed = back && *back == a.link.start();
            return a;
        };
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i < chains.size(); ++i) {
                if (used[i]) continue;
                bool open_start = !across(chains[i].start()), open_finish = !across(chains[i].finish());
                if (!open_start && !open_finish) continue;
                bool start_marked = chains[i].start_attaching() == 0;
                bool finish_marked = chains[i].finish_attaching() == 0;
                // Walk from an open end; a marked open end goes first.
                bool flip = open_start ? (!start_marked && open_finish && finish_marked) : true;
                if (pass == 0 && !((open_start && start_marked) || (open_finish && finish_marked))) continue;
                apps.push_back(walk(i, flip));
            }
        for (std::size_t i = 0; i < chains.size(); ++i)
            if (!used[i]) apps.push_back(walk(i, false));
    }

    std::vector<std::vector<std::size_t>> sets;
    std::set<std::size_t> covered;
    for (const auto& a : apps) {
        auto cc = a.is_tail ? a.tail.comps : a.link.comps();
        sets.push_back(cc);
        covered.insert(cc.begin(), cc.end());
    }
    detail::require_disjoint(sets);

    std::set<std::size_t> connection_sings;
    for (auto& a : apps) {
        for (const auto& q : a.ends) {
            const auto& r = idx.role_of(q);
            if (r.kind == CurveIndex::Kind::branch) connection_sings.insert(r.index);
        }
    }
    for (std::size_t si : connection_sings) d.connections.push_back(c.singularities[si]);

    std::set<std::size_t> core_comps;
    for (std::size_t ci = 0; ci < c.components.size(); ++ci)
        if (!covered.count(ci)) core_comps.insert(ci);
    for (auto& a : apps) {
        auto cc = a.is_tail ? a.tail.comps : a.link.comps();
        a.piece = detail::piece_of(c, idx, {cc.begin(), cc.end()}, connection_sings);
        for (const auto& q : a.ends) {
            auto p = detail::partner(idx, q, 1);
            if (p && core_comps.count(idx.comp_of(*p))) a.core_points.push_back(*p);
            else a.core_points.push_back(std::nullopt);
        }
    }

    if (core_comps.empty()) {
        if (k % 2 == 0) {
            if (apps.size() == 1 && apps[0].tail.attaching[0] == 0) d.kind = DecompositionCase::I_double_prime;
            else if (apps.size() == 2 && detail::partner(idx, apps[0].ends[0], 1) == apps[1].ends[0])
                d.kind = DecompositionCase::I_prime;
            else throw Error(ErrorKind::unsupported, "tails cover the curve in an unexpected pattern");
        } else {
            if (apps.size() != 1) throw Error(ErrorKind::unsupported, "links cover the curve in an unexpected pattern");
            if (apps[0].closed) d.kind = DecompositionCase::II_double_prime;
            else if (apps[0].link.start_attaching() == 0 && apps[0].link.finish_attaching() == 0)
                d.kind = DecompositionCase::II_prime;
            else throw Error(ErrorKind::unsupported, "link covers the curve but is neither marked nor closed");
        }
    } else {
        d.kind = k % 2 == 0 ? DecompositionCase::I : DecompositionCase::II;
        for (const auto& a : apps)
            if (a.closed) throw Error(ErrorKind::unsupported, "closed link inside a curve with a core");
        d.core = detail::piece_of(c, idx, core_comps, connection_sings);
        for (const auto& p : c.marks)
            if (core_comps.count(idx.comp_of(p))) d.core.marks.push_back(p);
        for (const auto& a : apps)
            for (const auto& p : a.core_points)
                if (p) d.core.marks.push_back(*p);
    }
    d.appendages = std::move(apps);
    return d;
}

inline CurveGraph reassemble(const Decomposition& d) {
    CurveGraph g;
    auto add = [&](const CurveGraph& piece) {
        g.components.insert(g.components.end(), piece.components.begin(), piece.components.end());
        g.singularities.insert(g.singularities.end(), piece.singularities.begin(), piece.singularities.end());
    };
    add(d.core);
    for (const auto& a : d.appendages) add(a.piece);
    g.singularities.insert(g.singularities.end(), d.connections.begin(), d.connections.end());
    g.marks = d.marks;
    g.h_declarations = d.declarations;
    return g;
}

// Connected pieces as standalone curves (used for cores, which may fall apart in the odd case).
inline std::vector<CurveGraph> connected_pieces(const CurveGraph& c) {
    std::map<std::string, std::string> parent;
    for (const auto& comp : c.components) parent[comp.id] = comp.id;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& s : c.singularities)
        for (std::size_t b = 1; b < s.branches.size(); ++b) parent[find(s.branches[b].comp)] = find(s.branches[0].comp);
    std::map<std::string, CurveGraph> by_root;
    std::vector<std::string> order;
    for (const auto& comp : c.components) {
        auto r = find(comp.id);
        if (!by_root.count(r)) order.push_back(r);
        by_root[r].components.push_back(comp);
    }
    for (const auto& s : c.singularities) by_root[find(s.branches[0].comp)].singularities.push_back(s);
    for (const auto& p : c.marks) by_root[find(p.comp)].marks.push_back(p);
    for (const auto& h : c.h_declarations)
        if (!h.points.empty()) by_root[find(h.points[0].comp)].h_declarations.push_back(h);
    std::vector<CurveGraph> out;
    for (const auto& r : order) out.push_back(by_root[r]);
    return out;
}

} // namespace akvgit
