#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "curve.hpp"

namespace akvgit {

// An H_{m,1}-tail (one boundary point) or H_{m,2}-bridge (two), as found inside a curve.
struct HStructure {
    int m = 1;
    std::vector<std::size_t> comps;
    std::vector<PointRef> boundary;
    std::vector<int> attaching;
    std::string basis;      // why it carries an H-structure
    bool monomial = false;  // the rational monomial model with zero crimping

    int pointed() const { return static_cast<int>(boundary.size()); }

    HStructure reversed() const {
        HStructure r = *this;
        std::reverse(r.boundary.begin(), r.boundary.end());
        std::reverse(r.attaching.begin(), r.attaching.end());
        return r;
    }
};

// Bridges joined end to start at A_{2m+1}-singularities.
struct HChain {
    int m = 1;
    std::vector<HStructure> bridges;

    PointRef start() const { return bridges.front().boundary[0]; }
    PointRef finish() const { return bridges.back().boundary[1]; }
    int start_attaching() const { return bridges.front().attaching[0]; }
    int finish_attaching() const { return bridges.back().attaching[1]; }

    std::vector<std::size_t> comps() const {
        std::vector<std::size_t> out;
        for (const auto& b : bridges) out.insert(out.end(), b.comps.begin(), b.comps.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    HChain reversed() const {
        HChain r{m, {}};
        for (auto it = bridges.rbegin(); it != bridges.rend(); ++it) r.bridges.push_back(it->reversed());
        return r;
    }
};

// Chains joined end to start at nodes.
struct HLink {
    int m = 1;
    std::vector<HChain> chains;

    PointRef start() const { return chains.front().start(); }
    PointRef finish() const { return chains.back().finish(); }
    int start_attaching() const { return chains.front().start_attaching(); }
    int finish_attaching() const { return chains.back().finish_attaching(); }

    std::vector<std::size_t> comps() const {
        std::vector<std::size_t> out;
        for (const auto& ch : chains) {
            auto cc = ch.comps();
            out.insert(out.end(), cc.begin(), cc.end());
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

namespace detail {

inline bool declared(const CurveGraph& c, int m, std::vector<PointRef> pts) {
    std::sort(pts.begin(), pts.end());
    for (const auto& d : c.h_declarations) {
        auto q = d.points;
        std::sort(q.begin(), q.end());
        if (d.m == m && q == pts) return true;
    }
    return false;
}

inline bool smooth_rational(const CurveIndex& idx, std::size_t ci, const std::vector<std::size_t>& internal) {
    if (idx.curve->components[ci].genus != 0) return false;
    for (std::size_t si : internal) {
        const auto& s = idx.curve->singularities[si];
        bool all_here = std::all_of(s.branches.begin(), s.branches.end(),
                                    [&](const PointRef& b) { return idx.comp_of(b) == ci; });
        if (all_here) return false;
    }
    return true;
}

// H-structure on a one-pointed subcurve, by declaration or by the derivation rules.
inline std::optional<HStructure> tail_structure(const CurveIndex& idx, std::size_t ci, const PointRef& q, int m) {
    const auto& c = *idx.curve;
    auto info = evaluate(idx, {{ci}, {q}});
    if (!info.valid || info.genus != m || !info.ample) return std::nullopt;
    HStructure h{m, {ci}, {q}, info.attaching, "", false};
    const auto& comp = c.components[ci];
    if (comp.genus == 0 && info.internal.size() == 1) {
        const auto& s = c.singularities[info.internal[0]];
        if (s.k == 2 * m) {
            bool zero = std::all_of(s.crimping.begin(), s.crimping.end(), [](const Rational& x) { return x == 0; });
            if (zero) {
                h.basis = "monomial";
                h.monomial = true;
                return h;
            }
            if (!declared(c, m, {q})) return std::nullopt;
        }
    }
    if (declared(c, m, {q})) {
        h.basis = "declared";
        return h;
    }
    if (m == 1) {
        h.basis = "genus one";
        return h;
    }
    if (m == 2 && comp.genus == 2 && info.internal.empty() && idx.is_weierstrass(q)) {
        h.basis = "weierstrass point";
        return h;
    }
    return std::nullopt;
}

inline std::optional<HStructure> bridge_structure(const CurveIndex& idx, const std::vector<std::size_t>& comps,
                                                  const PointRef& q1, const PointRef& q2, int m) {
    const auto& c = *idx.curve;
    auto info = evaluate(idx, {comps, {q1, q2}});
    if (!info.valid || info.genus != m || !info.ample) return std::nullopt;
    HStructure h{m, comps, {q1, q2}, info.attaching, "", false};
    if (comps.size() == 2) {
        // One boundary point on each component, both components smooth rational.
        if (idx.comp_of(q1) == idx.comp_of(q2)) return std::nullopt;
        if (!smooth_rational(idx, comps[0], info.internal) || !smooth_rational(idx, comps[1], info.internal))
            return std::nullopt;
        if (info.internal.size() == 1) {
            const auto& s = c.singularities[info.internal[0]];
            bool zero = std::all_of(s.crimping.begin(), s.crimping.end(), [](const Rational& x) { return x == 0; });
            if (s.k == 2 * m + 1 && zero) {
                h.basis = "monomial";
                h.monomial = true;
                return h;
            }
        }
    }
    if (declared(c, m, {q1, q2})) {
        h.basis = "declared";
        return h;
    }
    if (m == 1) {
        h.basis = "genus one";
        return h;
    }
    return std::nullopt;
}

} // namespace detail

inline std::vector<HStructure> find_h_tails(const CurveGraph& c, int m) {
    require_valid(c);
    CurveIndex idx(c);
    std::vector<HStructure> out;
    for (std::size_t ci = 0; ci < c.components.size(); ++ci)
        for (const auto& q : idx.points_on(ci))
            if (auto h = detail::tail_structure(idx, ci, q, m)) out.push_back(*h);
    return out;
}

inline std::vector<HStructure> find_h_bridges(const CurveGraph& c, int m) {
    require_valid(c);
    CurveIndex idx(c);
    std::vector<HStructure> out;
    const std::size_t n = c.components.size();
    for (std::size_t a = 0; a < n; ++a) {
        auto pa = idx.points_on(a);
        for (std::size_t i = 0; i < pa.size(); ++i)
            for (std::size_t j = i + 1; j < pa.size(); ++j)
                if (auto h = detail::bridge_structure(idx, {a}, pa[i], pa[j], m)) out.push_back(*h);
        for (std::size_t b = a + 1; b < n; ++b) {
            auto pb = idx.points_on(b);
            for (const auto& q1 : pa)
                for (const auto& q2 : pb)
                    if (auto h = detail::bridge_structure(idx, {a, b}, q1, q2, m)) out.push_back(*h);
        }
    }
    return out;
}

namespace detail {

inline bool shares_component(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    for (auto x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) return true;
    return false;
}

// The other branch of a two-branch singularity of type k, if p is a branch of one.
inline std::optional<PointRef> partner(const CurveIndex& idx, const PointRef& p, int k) {
    const auto& r = idx.role_of(p);
    if (r.kind != CurveIndex::Kind::branch) return std::nullopt;
    const auto& s = idx.curve->singularities[r.index];
    if (s.k != k || s.branches.size() != 2) return std::nullopt;
    return s.branches[1 - r.branch];
}

template <class Piece, class Start, class Finish, class Comps>
std::vector<std::vector<Piece>> join_sequences(const CurveIndex& idx, const std::vector<Piece>& pieces, int joint_k,
                                               Start start, Finish finish, Comps comps, auto reversed) {
    std::vector<Piece> oriented;
    for (const auto& p : pieces) {
        oriented.push_back(p);
        oriented.push_back(reversed(p));
    }
    std::vector<std::vector<Piece>> out;
    std::set<std::vector<PointRef>> seen;
    std::function<void(std::vector<Piece>&, std::vector<std::size_t>&)> grow = [&](std::vector<Piece>& seq,
                                                                               std::vector<std::size_t>& used) {
        std::vector<PointRef> key, rkey;
        for (const auto& p : seq) {
            key.push_back(start(p));
            key.push_back(finish(p));
        }
        rkey.assign(key.rbegin(), key.rend());
        if (!seen.count(key) && !seen.count(rkey)) {
            seen.insert(key);
            out.push_back(seq);
        }
        auto next = partner(idx, finish(seq.back()), joint_k);
        if (!next) return;
        for (const auto& p : oriented) {
            if (!(start(p) == *next)) continue;
            auto cc = comps(p);
            if (shares_component(cc, used)) continue;
            seq.push_back(p);
            auto before = used.size();
            used.insert(used.end(), cc.begin(), cc.end());
            grow(seq, used);
            used.resize(before);
            seq.pop_back();
        }
    };
    for (const auto& p : oriented) {
        std::vector<Piece> seq{p};
        auto used = comps(p);
        grow(seq, used);
    }
    return out;
}

} // namespace detail

inline std::vector<HChain> find_h_chains(const CurveGraph& c, int m) {
    auto bridges = find_h_bridges(c, m);
    CurveIndex idx(c);
    auto seqs = detail::join_sequences(
        idx, bridges, 2 * m + 1, [](const HStructure& b) { return b.boundary[0]; },
        [](const HStructure& b) { return b.boundary[1]; }, [](const HStructure& b) { return b.comps; },
        [](const HStructure& b) { return b.reversed(); });
    std::vector<HChain> out;
    for (auto& s : seqs) out.push_back({m, std::move(s)});
    return out;
}

inline bool is_destabilizing(const HStructure& tail) {
    auto hit = [&](int k) { return k == 0 || k == 1 || k >= 2 * tail.m + 1; };
    if (tail.pointed() == 1) return hit(tail.attaching[0]);
    auto end = [&](int k) { return k == 0 || k == 1 || k >= 2 * tail.m + 2; };
    return end(tail.attaching[0]) && end(tail.attaching[1]);
}

inline bool is_destabilizing(const HChain& chain) {
    auto end = [&](int k) { return k == 0 || k == 1 || k >= 2 * chain.m + 2; };
    return end(chain.start_attaching()) && end(chain.finish_attaching());
}

inline std::vector<HLink> find_h_links(const CurveGraph& c, int m) {
    std::vector<HChain> chains;
    for (auto& ch : find_h_chains(c, m))
        if (is_destabilizing(ch)) chains.push_back(std::move(ch));
    CurveIndex idx(c);
    auto seqs = detail::join_sequences(
        idx, chains, 1, [](const HChain& ch) { return ch.start(); }, [](const HChain& ch) { return ch.finish(); },
        [](const HChain& ch) { return ch.comps(); }, [](const HChain& ch) { return ch.reversed(); });
    std::vector<HLink> out;
    for (auto& s : seqs) out.push_back({m, std::move(s)});
    return out;
}

enum class Variant { minus, plain, plus };

inline const char* to_string(Variant v) {
    switch (v) {
    case Variant::minus: return "minus";
    case Variant::plain: return "plain";
    case Variant::plus: return "plus";
    }
    return "plain";
}

inline Variant parse_variant(const std::string& s) {
    if (s == "minus") return Variant::minus;
    if (s == "plain") return Variant::plain;
    if (s == "plus") return Variant::plus;
    throw Error(ErrorKind::invalid_input, "unknown variant " + s + " (expected minus, plain or plus)");
}

inline void require_supported_k(int k) {
    if (k < 2 || k > 4) throw Error(ErrorKind::unsupported, "k must be 2, 3 or 4");
}

inline std::string describe(const CurveGraph& c, const HStructure& h) {
    std::string s;
    for (auto ci : h.comps) s += (s.empty() ? "" : "+") + c.components[ci].id;
    s += " at";
    for (const auto& q : h.boundary) s += " " + to_string(q);
    return s;
}

inline Verdict stability(const CurveGraph& c, int k, Variant variant) {
    require_supported_k(k);
    Verdict v = validate(c);
    if (!v.pass) return v;
    CurveIndex idx(c);
    for (std::size_t ci = 0; ci < c.components.size(); ++ci) {
        int d = idx.omega_degree(ci);
        if (d <= 0) v.add("omega-not-ample", c.components[ci].id + " has degree " + std::to_string(d));
    }
    int sing_bound = variant == Variant::minus ? k - 1 : k;
    for (std::size_t si = 0; si < c.singularities.size(); ++si) {
        const auto& s = c.singularities[si];
        if (s.k > sing_bound)
            v.add("singularity-too-severe", "A_" + std::to_string(s.k) + " at " + to_string(s.branches[0]));
    }
    int h_bound = variant == Variant::plus ? k : k - 1;
    for (int l = 2; l <= h_bound; ++l) {
        int m = l / 2;
        if (l % 2 == 0) {
            for (const auto& t : find_h_tails(c, m))
                if (is_destabilizing(t))
                    v.add("destabilizing-tail", "destabilizing H_{" + std::to_string(m) + ",1}-tail, " +
                                                    attaching_name(t.attaching[0]) + " attaching: " + describe(c, t));
        } else {
            for (const auto& ch : find_h_chains(c, m))
                if (is_destabilizing(ch)) {
                    std::string where;
                    for (const auto& b : ch.bridges) where += (where.empty() ? "" : "; ") + describe(c, b);
                    v.add("destabilizing-chain", "destabilizing H_{" + std::to_string(m) + ",2}-chain of length " +
                                                     std::to_string(ch.bridges.size()) + ", " +
                                                     attaching_name(ch.start_attaching()) + "/" +
                                                     attaching_name(ch.finish_attaching()) + " ends: " + where);
                }
        }
    }
    return v;
}

} // namespace akvgit
