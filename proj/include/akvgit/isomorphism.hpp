#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "curve.hpp"

namespace akvgit {

inline constexpr std::size_t max_isomorphism_components = 12;

namespace detail {

inline bool crimping_matches(const Singularity& a, const Singularity& b) {
    if (a.crimping.empty() && b.crimping.empty()) return true;
    CrimpingVector ca{singularity_parity(a.k), singularity_m(a.k), a.crimping};
    CrimpingVector cb{singularity_parity(b.k), singularity_m(b.k), b.crimping};
    return crimping_orbit_equal(ca, cb);
}

class Matcher {
public:
    Matcher(const CurveGraph& a, const CurveGraph& b) : a_(a), b_(b), ia_(a), ib_(b) {
        comp_map_.assign(a.components.size(), npos);
        comp_used_.assign(b.components.size(), false);
        sing_used_.assign(b.singularities.size(), false);
        order_ = sing_order();
    }

    bool run() { return place_sing(0); }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Singularities in breadth-first order over the dual graph, so component maps propagate early.
    std::vector<std::size_t> sing_order() const {
        std::vector<std::size_t> order;
        std::vector<bool> seen_sing(a_.singularities.size(), false), seen_comp(a_.components.size(), false);
        for (std::size_t root = 0; root < a_.components.size(); ++root) {
            if (seen_comp[root]) continue;
            std::vector<std::size_t> queue{root};
            seen_comp[root] = true;
            for (std::size_t h = 0; h < queue.size(); ++h) {
                for (const auto& p : ia_.points_on(queue[h])) {
                    const auto& r = ia_.role_of(p);
                    if (r.kind != CurveIndex::Kind::branch || seen_sing[r.index]) continue;
                    seen_sing[r.index] = true;
                    order.push_back(r.index);
                    for (const auto& br : a_.singularities[r.index].branches) {
                        auto ci = ia_.comp_of(br);
                        if (!seen_comp[ci]) {
                            seen_comp[ci] = true;
                            queue.push_back(ci);
                        }
                    }
                }
            }
        }
        return order;
    }

    struct Undo {
        std::vector<std::size_t> comps;
        std::vector<PointRef> points;
    };

    bool map_point(const PointRef& p, const PointRef& q, Undo& u) {
        auto it = point_map_.find(p);
        if (it != point_map_.end()) return it->second == q;
        if (point_used_.count(q)) return false;
        if (ia_.is_weierstrass(p) != ib_.is_weierstrass(q)) return false;
        const auto& rp = ia_.role_of(p);
        const auto& rq = ib_.role_of(q);
        if ((rp.kind == CurveIndex::Kind::mark) != (rq.kind == CurveIndex::Kind::mark)) return false;
        if (rp.kind == CurveIndex::Kind::mark && rp.index != rq.index) return false;
        std::size_t ca = ia_.comp_of(p), cb = ib_.comp_of(q);
        if (comp_map_[ca] == npos) {
            if (comp_used_[cb] || a_.components[ca].genus != b_.components[cb].genus) return false;
            if (special_count(ia_, ca) != special_count(ib_, cb)) return false;
            comp_map_[ca] = cb;
            comp_used_[cb] = true;
            u.comps.push_back(ca);
        } else if (comp_map_[ca] != cb) {
            return false;
        }
        point_map_[p] = q;
        point_used_.insert(q);
        u.points.push_back(p);
        return true;
    }

    void undo(const Undo& u) {
        for (const auto& p : u.points) {
            point_used_.erase(point_map_[p]);
            point_map_.erase(p);
        }
        for (auto ca : u.comps) {
            comp_used_[comp_map_[ca]] = false;
            comp_map_[ca] = npos;
        }
    }

    static std::size_t special_count(const CurveIndex& idx, std::size_t ci) {
        std::size_t n = 0;
        for (const auto& p : idx.points_on(ci))
            if (idx.role_of(p).kind != CurveIndex::Kind::free || idx.is_weierstrass(p)) ++n;
        return n;
    }

    bool place_sing(std::size_t pos) {
        if (pos == order_.size()) return place_marks();
        const auto& s = a_.singularities[order_[pos]];
        for (std::size_t j = 0; j < b_.singularities.size(); ++j) {
            const auto& t = b_.singularities[j];
            if (sing_used_[j] || t.k != s.k || !crimping_matches(s, t)) continue;
            std::vector<std::size_t> perm(s.branches.size());
            std::iota(perm.begin(), perm.end(), 0);
            do {
                Undo u;
                bool ok = true;
                for (std::size_t x = 0; ok && x < perm.size(); ++x) ok = map_point(s.branches[x], t.branches[perm[x]], u);
                if (ok) {
                    sing_used_[j] = true;
                    if (place_sing(pos + 1)) return true;
                    sing_used_[j] = false;
                }
                undo(u);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return false;
    }

    bool place_marks() {
        Undo u;
        for (std::size_t i = 0; i < a_.marks.size(); ++i)
            if (!map_point(a_.marks[i], b_.marks[i], u)) {
                undo(u);
                return false;
            }
        if (finish()) return true;
        undo(u);
        return false;
    }

    // Components without singular or marked points, then free Weierstrass points and declarations.
    bool finish() {
        std::vector<std::size_t> loose_a, loose_b;
        for (std::size_t i = 0; i < comp_map_.size(); ++i)
            if (comp_map_[i] == npos) loose_a.push_back(i);
        for (std::size_t j = 0; j < comp_used_.size(); ++j)
            if (!comp_used_[j]) loose_b.push_back(j);
        if (loose_a.size() != loose_b.size()) return false;
        std::vector<std::size_t> assigned;
        for (auto ca : loose_a) {
            bool found = false;
            for (auto cb : loose_b) {
                if (comp_used_[cb] || a_.components[ca].genus != b_.components[cb].genus) continue;
                comp_map_[ca] = cb;
                comp_used_[cb] = true;
                assigned.push_back(ca);
                found = true;
                break;
            }
            if (!found) break;
        }
        bool ok = assigned.size() == loose_a.size() && free_points_agree() && declarations_agree();
        if (!ok)
            for (auto ca : assigned) {
                comp_used_[comp_map_[ca]] = false;
                comp_map_[ca] = npos;
            }
        return ok;
    }

    bool free_points_agree() const {
        for (std::size_t ca = 0; ca < comp_map_.size(); ++ca) {
            auto count = [](const CurveIndex& idx, std::size_t ci) {
                std::size_t n = 0;
                for (const auto& p : idx.points_on(ci))
                    if (idx.role_of(p).kind == CurveIndex::Kind::free && idx.is_weierstrass(p)) ++n;
                return n;
            };
            if (count(ia_, ca) != count(ib_, comp_map_[ca])) return false;
        }
        return true;
    }

    std::string point_signature(const CurveIndex& idx, const PointRef& p, bool from_a) const {
        auto it = point_map_.find(p);
        if (from_a && it != point_map_.end()) return "p" + to_string(it->second);
        if (!from_a && point_used_.count(p)) return "p" + to_string(p);
        std::size_t ci = idx.comp_of(p);
        std::size_t image = from_a ? comp_map_[ci] : ci;
        return "f" + std::to_string(image) + (idx.is_weierstrass(p) ? "w" : "");
    }

    bool declarations_agree() const {
        auto sigs = [&](const CurveGraph& g, const CurveIndex& idx, bool from_a) {
            std::multiset<std::string> out;
            for (const auto& d : g.h_declarations) {
                std::vector<std::string> pts;
                for (const auto& p : d.points) pts.push_back(point_signature(idx, p, from_a));
                std::sort(pts.begin(), pts.end());
                std::string s = std::to_string(d.m) + ":";
                for (const auto& x : pts) s += x + ",";
                out.insert(s);
            }
            return out;
        };
        return sigs(a_, ia_, true) == sigs(b_, ib_, false);
    }

    const CurveGraph& a_;
    const CurveGraph& b_;
    CurveIndex ia_, ib_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> comp_map_;
    std::vector<bool> comp_used_;
    std::vector<bool> sing_used_;
    std::map<PointRef, PointRef> point_map_;
    std::set<PointRef> point_used_;
};

} // namespace detail

inline bool curves_isomorphic(const CurveGraph& a, const CurveGraph& b) {
    require_valid(a);
    require_valid(b);
    if (a.components.size() > max_isomorphism_components || b.components.size() > max_isomorphism_components)
        throw Error(ErrorKind::size_cap, "isomorphism test is limited to 12 components");
    if (a.components.size() != b.components.size() || a.singularities.size() != b.singularities.size() ||
        a.marks.size() != b.marks.size() || a.h_declarations.size() != b.h_declarations.size())
        return false;
    std::multiset<int> ga, gb, ka, kb;
    for (const auto& c : a.components) ga.insert(c.genus);
    for (const auto& c : b.components) gb.insert(c.genus);
    for (const auto& s : a.singularities) ka.insert(s.k);
    for (const auto& s : b.singularities) kb.insert(s.k);
    if (ga != gb || ka != kb) return false;
    return detail::Matcher(a, b).run();
}

namespace detail {

inline std::string crimp_class(const Singularity& s) {
    bool zero = std::all_of(s.crimping.begin(), s.crimping.end(), [](const Rational& x) { return x == 0; });
    if (zero) return "0";
    // A single weight-1 entry: every nonzero value lies in one orbit.
    if (s.crimping.size() == 1) return "1";
    std::string out;
    for (const auto& x : s.crimping) out += to_string(x) + ";";
    return out;
}

// Serialization of the curve under a fixed ordering of its components.
inline std::string encode(const CurveGraph& c, const CurveIndex& idx, const std::vector<std::size_t>& pos) {
    auto point_code = [&](const PointRef& p) {
        return std::to_string(pos[idx.comp_of(p)]) + (idx.is_weierstrass(p) ? "w" : "");
    };
    std::vector<std::string> sings;
    std::vector<std::string> sing_code(c.singularities.size());
    for (std::size_t si = 0; si < c.singularities.size(); ++si) {
        const auto& s = c.singularities[si];
        std::vector<std::string> br;
        for (const auto& b : s.branches) br.push_back(point_code(b));
        std::sort(br.begin(), br.end());
        std::string code = "A" + std::to_string(s.k) + "[" + crimp_class(s) + "](";
        for (const auto& b : br) code += b + ",";
        code += ")";
        sing_code[si] = code;
        sings.push_back(code);
    }
    std::sort(sings.begin(), sings.end());
    std::string out = "C";
    std::vector<std::string> genus(c.components.size());
    std::vector<std::size_t> free_w(c.components.size(), 0);
    for (std::size_t ci = 0; ci < c.components.size(); ++ci) {
        genus[pos[ci]] = std::to_string(c.components[ci].genus);
        for (const auto& p : idx.points_on(ci))
            if (idx.role_of(p).kind == CurveIndex::Kind::free && idx.is_weierstrass(p)) ++free_w[pos[ci]];
    }
    for (std::size_t i = 0; i < genus.size(); ++i) out += genus[i] + (free_w[i] ? "w" + std::to_string(free_w[i]) : "") + ",";
    out += "|S";
    for (const auto& s : sings) out += s;
    out += "|M";
    for (const auto& p : c.marks) out += point_code(p) + ",";
    std::vector<std::string> decls;
    for (const auto& d : c.h_declarations) {
        std::vector<std::string> pts;
        for (const auto& p : d.points) {
            const auto& r = idx.role_of(p);
            std::string role = r.kind == CurveIndex::Kind::mark ? "m" + std::to_string(r.index)
                               : r.kind == CurveIndex::Kind::branch ? "s" + sing_code[r.index]
                                                                    : "f";
            pts.push_back(point_code(p) + role);
        }
        std::sort(pts.begin(), pts.end());
        std::string s = "H" + std::to_string(d.m) + "(";
        for (const auto& x : pts) s += x + ",";
        decls.push_back(s + ")");
    }
    std::sort(decls.begin(), decls.end());
    out += "|D";
    for (const auto& s : decls) out += s;
    return out;
}

} // namespace detail

inline constexpr std::uint64_t canonical_form_budget = 500'000;

// Lexicographically least serialization over component orders compatible with a colour refinement.
inline std::string canonical_form(const CurveGraph& c) {
    require_valid(c);
    if (c.components.size() > max_isomorphism_components)
        throw Error(ErrorKind::size_cap, "canonical form is limited to 12 components");
    CurveIndex idx(c);
    const std::size_t n = c.components.size();
    std::vector<std::string> colour(n);
    for (std::size_t ci = 0; ci < n; ++ci) {
        std::vector<std::string> local;
        for (const auto& p : idx.points_on(ci)) {
            const auto& r = idx.role_of(p);
            std::string code = idx.is_weierstrass(p) ? "w" : "";
            if (r.kind == CurveIndex::Kind::mark) code += "m" + std::to_string(r.index);
            else if (r.kind == CurveIndex::Kind::branch)
                code += "A" + std::to_string(c.singularities[r.index].k) + detail::crimp_class(c.singularities[r.index]);
            else if (code.empty()) continue;
            local.push_back(code);
        }
        std::sort(local.begin(), local.end());
        colour[ci] = std::to_string(c.components[ci].genus) + "{";
        for (const auto& x : local) colour[ci] += x + ",";
        colour[ci] += "}";
    }
    auto compress = [&](std::vector<std::string>& col) {
        std::vector<std::string> sorted = col;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (auto& x : col) x = std::to_string(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
        return sorted.size();
    };
    std::size_t classes = compress(colour);
    for (;;) {
        std::vector<std::string> next(n);
        for (std::size_t ci = 0; ci < n; ++ci) {
            std::vector<std::string> nb;
            for (const auto& p : idx.points_on(ci)) {
                const auto& r = idx.role_of(p);
                if (r.kind != CurveIndex::Kind::branch) continue;
                const auto& s = c.singularities[r.index];
                for (std::size_t b = 0; b < s.branches.size(); ++b)
                    if (b != r.branch) nb.push_back(std::to_string(s.k) + ":" + colour[idx.comp_of(s.branches[b])]);
            }
            std::sort(nb.begin(), nb.end());
            next[ci] = colour[ci] + "(";
            for (const auto& x : nb) next[ci] += x + ",";
            next[ci] += ")";
        }
        std::size_t refined = compress(next);
        colour = next;
        if (refined == classes) break;
        classes = refined;
    }

    std::vector<std::vector<std::size_t>> groups(classes);
    for (std::size_t ci = 0; ci < n; ++ci) groups[std::stoul(colour[ci])].push_back(ci);
    std::uint64_t total = 1;
    for (const auto& g : groups)
        for (std::size_t i = 2; i <= g.size(); ++i) {
            total *= i;
            if (total > canonical_form_budget) throw Error(ErrorKind::size_cap, "too many symmetric components");
        }

    std::string best;
    bool have = false;
    std::vector<std::size_t> pos(n);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t g, std::size_t offset) {
        if (g == groups.size()) {
            auto e = detail::encode(c, idx, pos);
            if (!have || e < best) {
                best = e;
                have = true;
            }
            return;
        }
        auto members = groups[g];
        std::sort(members.begin(), members.end());
        do {
            for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = offset + i;
            rec(g + 1, offset + members.size());
        } while (std::next_permutation(members.begin(), members.end()));
    };
    rec(0, 0);
    return best;
}

} // namespace akvgit
