#pragma once

#include <set>
#include <string>
#include <vector>

#include "decomposition.hpp"

namespace akvgit {

enum class Tri { yes, no, unknown };

inline const char* to_string(Tri t) {
    switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown: return "unknown";
    }
    return "unknown";
}

struct DegeneracyReport {
    Tri verdict = Tri::yes;
    std::vector<std::string> reasons;
    bool structural = true;  // clauses (1) and (2) hold; only the core test can be inconclusive
};

namespace detail {

inline bool nodal(int k) { return k == 0 || k == 1; }

// Nodally attached H_{m,1}-tails (even k) or H_{m,2}-bridges (odd k).
inline std::vector<HStructure> nodal_h_pieces(const CurveGraph& c, int k) {
    std::vector<HStructure> out;
    int m = k / 2;
    auto pieces = k % 2 == 0 ? find_h_tails(c, m) : find_h_bridges(c, m);
    for (auto& h : pieces)
        if (std::all_of(h.attaching.begin(), h.attaching.end(), nodal)) out.push_back(std::move(h));
    return out;
}

inline void require_stable(const CurveGraph& c, int k) {
    require_supported_k(k);
    auto v = stability(c, k, Variant::plain);
    if (!v.pass)
        throw Error(ErrorKind::not_stable, "curve is not A_" + std::to_string(k) + "-stable: " + v.violations[0].witness);
}

} // namespace detail

inline DegeneracyReport is_maximally_degenerate(const CurveGraph& c, int k) {
    detail::require_stable(c, k);
    CurveIndex idx(c);
    DegeneracyReport r;
    auto pieces = detail::nodal_h_pieces(c, k);
    std::set<std::size_t> covered;
    for (const auto& h : pieces) {
        auto info = evaluate(idx, {h.comps, h.boundary});
        covered.insert(info.internal.begin(), info.internal.end());
    }
    for (std::size_t si = 0; si < c.singularities.size(); ++si) {
        const auto& s = c.singularities[si];
        if (s.k == k && !covered.count(si)) {
            r.structural = false;
            r.reasons.push_back("A_" + std::to_string(k) + " at " + to_string(s.branches[0]) +
                                " is not on a nodally attached H-" + (k % 2 == 0 ? "tail" : "bridge"));
        }
    }
    for (const auto& h : pieces)
        if (!h.monomial) {
            r.structural = false;
            r.reasons.push_back("nodally attached H-" + std::string(k % 2 == 0 ? "tail " : "bridge ") + describe(c, h) +
                                " is not monomial");
        }
    if (!r.structural) {
        r.verdict = Tri::no;
        return r;
    }
    if (k == 4) {
        auto d = canonical_decomposition(c, k);
        bool tacnodes = std::any_of(d.core.singularities.begin(), d.core.singularities.end(),
                                    [](const Singularity& s) { return s.k == 3; });
        if (tacnodes) {
            r.verdict = Tri::unknown;
            r.reasons.push_back("core has tacnodes; closed A_4^- cores with tacnodes are not characterized");
            return r;
        }
    }
    r.verdict = Tri::yes;
    return r;
}

namespace detail {

class Surgery {
public:
    explicit Surgery(CurveGraph c) : g_(std::move(c)) {
        for (const auto& comp : g_.components) ids_.insert(comp.id);
    }

    CurveGraph& graph() { return g_; }

    std::string fresh(const std::string& base) {
        for (int i = 1;; ++i) {
            auto id = base + std::to_string(i);
            if (ids_.insert(id).second) return id;
        }
    }

    void add_component(const std::string& id, int genus, std::vector<std::string> points) {
        ids_.insert(id);
        g_.components.push_back({id, genus, std::move(points), {}});
    }

    // Moves the singularity onto new rational components attached by nodes.
    void sprout(std::size_t si) {
        auto s = g_.singularities[si];
        std::vector<PointRef> new_branches;
        for (const auto& b : s.branches) {
            auto z = fresh("sprout");
            add_component(z, 0, {"q", "x"});
            g_.singularities.push_back({1, {b, {z, "q"}}, {}});
            new_branches.push_back({z, "x"});
        }
        g_.singularities[si].branches = new_branches;
        g_.singularities[si].crimping.assign(crimping_length(s.k), Rational(0));
    }

    // Rational components with exactly two special points, each a node to another component or a mark.
    bool contract_one() {
        if (g_.components.size() < 2) return false;
        CurveIndex idx(g_);
        for (std::size_t ci = 0; ci < g_.components.size(); ++ci) {
            const auto& comp = g_.components[ci];
            if (comp.genus != 0) continue;
            std::vector<PointRef> special;
            bool ok = true;
            for (const auto& p : idx.points_on(ci)) {
                const auto& r = idx.role_of(p);
                if (r.kind == CurveIndex::Kind::free) continue;
                special.push_back(p);
                if (r.kind == CurveIndex::Kind::branch) {
                    const auto& s = g_.singularities[r.index];
                    if (s.k != 1 || idx.comp_of(s.branches[1 - r.branch]) == ci) ok = false;
                }
            }
            if (!ok || special.size() != 2) continue;
            auto& ra = idx.role_of(special[0]);
            auto& rb = idx.role_of(special[1]);
            if (ra.kind == CurveIndex::Kind::mark && rb.kind == CurveIndex::Kind::mark) continue;
            auto other = [&](const CurveIndex::Role& r) {
                const auto& s = g_.singularities[r.index];
                return s.branches[1 - r.branch];
            };
            std::vector<std::size_t> drop_sings;
            if (ra.kind == CurveIndex::Kind::branch && rb.kind == CurveIndex::Kind::branch) {
                auto a = other(ra), b = other(rb);
                drop_sings = {ra.index, rb.index};
                g_.singularities.push_back({1, {a, b}, {}});
            } else {
                const auto& node = ra.kind == CurveIndex::Kind::branch ? ra : rb;
                const auto& mark = ra.kind == CurveIndex::Kind::mark ? ra : rb;
                g_.marks[mark.index] = other(node);
                drop_sings = {node.index};
            }
            remove_sings(drop_sings);
            remove_component(comp.id);
            return true;
        }
        return false;
    }

    // Replaces a nodally attached H-tail or H-bridge by the monomial one, keeping the boundary points.
    void monomialize(const HStructure& h, const std::vector<std::size_t>& internal) {
        std::vector<std::string> ids;
        for (auto ci : h.comps) ids.push_back(g_.components[ci].id);
        remove_sings(internal);
        for (const auto& id : ids) remove_component(id);
        if (h.pointed() == 1) {
            const auto& q = h.boundary[0];
            std::string x = q.pt == "x" ? "x1" : "x";
            add_component(q.comp, 0, {q.pt, x});
            g_.singularities.push_back({2 * h.m, {{q.comp, x}}, std::vector<Rational>(crimping_length(2 * h.m), 0)});
            return;
        }
        const auto& q1 = h.boundary[0];
        auto q2 = h.boundary[1];
        std::string second = q2.comp == q1.comp ? fresh(q1.comp + "'") : q2.comp;
        if (second != q2.comp) {
            PointRef moved{second, q2.pt};
            for (auto& s : g_.singularities)
                for (auto& b : s.branches)
                    if (b == q2) b = moved;
            for (auto& p : g_.marks)
                if (p == q2) p = moved;
            q2 = moved;
        }
        std::string t1 = q1.pt == "t" ? "t1" : "t", t2 = q2.pt == "t" ? "t1" : "t";
        add_component(q1.comp, 0, {q1.pt, t1});
        add_component(second, 0, {q2.pt, t2});
        g_.singularities.push_back({2 * h.m + 1, {{q1.comp, t1}, {second, t2}},
                                    std::vector<Rational>(crimping_length(2 * h.m + 1), 0)});
    }

private:
    void remove_sings(std::vector<std::size_t> which) {
        std::sort(which.rbegin(), which.rend());
        for (auto si : which) g_.singularities.erase(g_.singularities.begin() + static_cast<long>(si));
    }

    void remove_component(const std::string& id) {
        std::erase_if(g_.components, [&](const Component& c) { return c.id == id; });
        std::erase_if(g_.h_declarations, [&](const HDeclaration& d) {
            return std::any_of(d.points.begin(), d.points.end(), [&](const PointRef& p) { return p.comp == id; });
        });
        ids_.erase(id);
    }

    CurveGraph g_;
    std::set<std::string> ids_;
};

} // namespace detail

// Isotrivial specialization to a maximally degenerate curve: sprout the A_k-singularities, blow down the
// semistable rational components this creates, then make every nodally attached H-piece monomial.
inline CurveGraph maximal_degeneration(const CurveGraph& c, int k) {
    detail::require_stable(c, k);
    detail::Surgery s(c);
    auto& g = s.graph();
    for (std::size_t si = 0, n = g.singularities.size(); si < n; ++si)
        if (g.singularities[si].k == k) s.sprout(si);
    while (s.contract_one()) {
    }
    for (int round = 0; round < 64; ++round) {
        auto pieces = detail::nodal_h_pieces(g, k);
        auto it = std::find_if(pieces.begin(), pieces.end(), [](const HStructure& h) { return !h.monomial; });
        if (it == pieces.end()) break;
        CurveIndex idx(g);
        auto internal = evaluate(idx, {it->comps, it->boundary}).internal;
        s.monomialize(*it, internal);
    }
    return g;
}

} // namespace akvgit
