#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

#include "lp.hpp"
#include "weight_system.hpp"

namespace akvgit {

enum class Side { minus, plus };

struct Membership {
    bool member = false;
    std::optional<OneParamSubgroup> witness;
};

namespace detail {

inline void check_support(const WeightSystem& ws, const SupportPattern& s) {
    for (auto j : s.support)
        if (j >= ws.size()) throw Error(ErrorKind::dimension_mismatch, "support index out of range");
}

inline std::int64_t pairing(const IntVec& a, const IntVec& b) {
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

inline std::int64_t side_sign(Side side) { return side == Side::minus ? 1 : -1; }

inline std::vector<Constraint> hm_constraints(const WeightSystem& ws, const std::vector<std::size_t>& support, Side side) {
    std::vector<Constraint> cs;
    Constraint chi{ws.character, 1};
    for (auto& x : chi.coeffs) x *= side_sign(side);
    cs.push_back(std::move(chi));
    for (auto j : support) cs.push_back(Constraint{ws.coords[j].weights, 0});
    return cs;
}

inline OneParamSubgroup integer_witness(const std::vector<Rational>& point) {
    BigInt den = 1;
    for (const auto& q : point) den = lcm(den, denominator(q));
    OneParamSubgroup lambda;
    for (const auto& q : point) {
        BigInt v = numerator(q) * (den / denominator(q));
        if (abs(v) > BigInt(std::numeric_limits<std::int64_t>::max()))
            throw Error(ErrorKind::budget_exceeded, "witness does not fit in 64 bits");
        lambda.push_back(v.convert_to<std::int64_t>());
    }
    return lambda;
}

} // namespace detail

inline bool limit_exists(const WeightSystem& ws, const SupportPattern& s, const OneParamSubgroup& lambda) {
    if (lambda.size() != static_cast<std::size_t>(ws.rank))
        throw Error(ErrorKind::dimension_mismatch, "one-parameter subgroup length differs from rank");
    detail::check_support(ws, s);
    return std::all_of(s.support.begin(), s.support.end(),
                       [&](std::size_t j) { return detail::pairing(ws.coords[j].weights, lambda) >= 0; });
}

inline Membership in_chamber(const WeightSystem& ws, const SupportPattern& s, Side side) {
    validate(ws);
    detail::check_support(ws, s);
    auto res = lp_feasible(detail::hm_constraints(ws, s.support, side), static_cast<std::size_t>(ws.rank));
    Membership m;
    m.member = res.feasible;
    if (res.feasible) m.witness = detail::integer_witness(res.point);
    return m;
}

inline Membership in_minus(const WeightSystem& ws, const SupportPattern& s) { return in_chamber(ws, s, Side::minus); }
inline Membership in_plus(const WeightSystem& ws, const SupportPattern& s) { return in_chamber(ws, s, Side::plus); }

struct EnumerationOptions {
    // Counts coordinates of nonzero weight only; weight-zero coordinates never constrain.
    std::size_t cap = 24;
};

namespace detail {

// Maximal supports S with {<chi,l> >= 1, <w_j,l> >= 0 for j in S} feasible, found by branching on
// infeasible subsystems: every feasible subset of S misses some member of any infeasible T within S.
inline StratumUnion chamber_locus(const WeightSystem& ws, Side side, const EnumerationOptions& opt) {
    validate(ws);
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < ws.size(); ++j)
        if (std::any_of(ws.coords[j].weights.begin(), ws.coords[j].weights.end(), [](auto w) { return w != 0; }))
            active.push_back(j);
    if (active.size() > opt.cap)
        throw Error(ErrorKind::enumeration_too_large,
                    std::to_string(active.size()) + " coordinates of nonzero weight exceed the cap of " +
                        std::to_string(opt.cap));

    const std::size_t p = active.size();
    using Mask = std::uint32_t;
    auto support_of = [&](Mask mask) {
        std::vector<std::size_t> s;
        for (std::size_t b = 0; b < p; ++b)
            if (mask >> b & 1u) s.push_back(active[b]);
        return s;
    };
    auto rank = static_cast<std::size_t>(ws.rank);

    if (!lp_feasible(hm_constraints(ws, {}, side), rank).feasible) return StratumUnion{};

    std::vector<Mask> feasible;
    std::unordered_set<Mask> visited;
    std::vector<Mask> stack{p == 0 ? Mask(0) : static_cast<Mask>((std::uint64_t(1) << p) - 1)};
    while (!stack.empty()) {
        Mask s = stack.back();
        stack.pop_back();
        if (!visited.insert(s).second) continue;
        if (std::any_of(feasible.begin(), feasible.end(), [&](Mask f) { return (s & ~f) == 0; })) continue;
        auto support = support_of(s);
        auto res = lp_feasible(hm_constraints(ws, support, side), rank);
        if (res.feasible) {
            feasible.push_back(s);
            continue;
        }
        for (auto row : res.conflict) {
            if (row == 0) continue;
            std::size_t coord = support[row - 1];
            auto bit = static_cast<std::size_t>(std::find(active.begin(), active.end(), coord) - active.begin());
            stack.push_back(s & ~(Mask(1) << bit));
        }
    }

    StratumUnion u;
    for (Mask f : feasible) {
        std::vector<std::size_t> j;
        for (std::size_t b = 0; b < p; ++b)
            if (!(f >> b & 1u)) j.push_back(active[b]);
        u.strata.push_back(std::move(j));
    }
    u.normalize();
    return u;
}

} // namespace detail

inline StratumUnion minus_locus(const WeightSystem& ws, const EnumerationOptions& opt = {}) {
    return detail::chamber_locus(ws, Side::minus, opt);
}

inline StratumUnion plus_locus(const WeightSystem& ws, const EnumerationOptions& opt = {}) {
    return detail::chamber_locus(ws, Side::plus, opt);
}

inline std::int64_t certified_box_bound(const WeightSystem& ws) {
    return std::max<std::int64_t>(1, 4 * ws.rank * ws.max_abs_weight());
}

namespace detail {

template <class Visit>
void for_each_in_box(int rank, std::int64_t bound, std::uint64_t budget, Visit&& visit) {
    double count = static_cast<double>(rank);
    for (int i = 0; i < rank; ++i) count *= static_cast<double>(2 * bound + 1);
    if (count > static_cast<double>(budget))
        throw Error(ErrorKind::budget_exceeded, "box enumeration exceeds the budget");
    IntVec lambda(static_cast<std::size_t>(rank), -bound);
    for (;;) {
        if (visit(lambda)) return;
        std::size_t i = 0;
        while (i < lambda.size() && lambda[i] == bound) lambda[i++] = -bound;
        if (i == lambda.size()) return;
        ++lambda[i];
    }
}

} // namespace detail

inline constexpr std::uint64_t default_box_budget = 200'000'000;

// Direct search for a one-parameter subgroup in [-B, B]^r.
inline bool brute_force_in_chamber(const WeightSystem& ws, const SupportPattern& s, Side side, std::int64_t bound,
                                   std::uint64_t budget = default_box_budget) {
    validate(ws);
    detail::check_support(ws, s);
    bool found = false;
    detail::for_each_in_box(ws.rank, bound, budget, [&](const IntVec& lambda) {
        if (detail::side_sign(side) * detail::pairing(ws.character, lambda) <= 0) return false;
        found = limit_exists(ws, s, lambda);
        return found;
    });
    return found;
}

inline bool brute_force_in_minus(const WeightSystem& ws, const SupportPattern& s, std::int64_t bound,
                                 std::uint64_t budget = default_box_budget) {
    return brute_force_in_chamber(ws, s, Side::minus, bound, budget);
}

inline bool brute_force_in_plus(const WeightSystem& ws, const SupportPattern& s, std::int64_t bound,
                                std::uint64_t budget = default_box_budget) {
    return brute_force_in_chamber(ws, s, Side::plus, bound, budget);
}

// The whole chamber from one pass over the box: each admissible lambda contributes V(coords it pushes to infinity).
inline StratumUnion brute_force_locus(const WeightSystem& ws, Side side, std::int64_t bound,
                                      std::uint64_t budget = default_box_budget) {
    validate(ws);
    if (ws.size() > 64) throw Error(ErrorKind::enumeration_too_large, "box oracle handles at most 64 coordinates");
    std::unordered_set<std::uint64_t> found;
    std::vector<char> seen(ws.size() <= 20 ? std::size_t{1} << ws.size() : 0, 0);
    detail::for_each_in_box(ws.rank, bound, budget, [&](const IntVec& lambda) {
        if (detail::side_sign(side) * detail::pairing(ws.character, lambda) <= 0) return false;
        std::uint64_t j = 0;
        for (std::size_t i = 0; i < ws.size(); ++i)
            if (detail::pairing(ws.coords[i].weights, lambda) < 0) j |= std::uint64_t{1} << i;
        if (seen.empty()) found.insert(j);
        else if (!seen[j]) {
            seen[j] = 1;
            found.insert(j);
        }
        return false;
    });
    std::vector<std::vector<std::size_t>> strata;
    for (auto j : found) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < ws.size(); ++i)
            if (j >> i & 1u) idx.push_back(i);
        strata.push_back(std::move(idx));
    }
    return make_union(std::move(strata));
}

struct SemiInvariant {
    IntVec exponents;
    // W a = nu * chi. With a zero character every invariant qualifies for both signs; nu is then +-1.
    std::int64_t nu = 0;

    bool operator==(const SemiInvariant&) const = default;
};

inline std::vector<SemiInvariant> semi_invariant_monomials(const WeightSystem& ws, Side side, int degree_bound) {
    validate(ws);
    if (degree_bound < 1) throw Error(ErrorKind::invalid_input, "degree bound must be positive");
    const auto r = static_cast<std::size_t>(ws.rank);
    const bool zero_char = std::all_of(ws.character.begin(), ws.character.end(), [](auto x) { return x == 0; });
    std::vector<SemiInvariant> out;
    IntVec a(ws.size(), 0);
    IntVec total(r, 0);

    auto classify = [&]() -> std::optional<std::int64_t> {
        if (zero_char) {
            if (std::all_of(total.begin(), total.end(), [](auto x) { return x == 0; }))
                return side == Side::minus ? -1 : 1;
            return std::nullopt;
        }
        std::size_t lead = 0;
        while (ws.character[lead] == 0) ++lead;
        if (total[lead] % ws.character[lead] != 0) return std::nullopt;
        std::int64_t nu = total[lead] / ws.character[lead];
        for (std::size_t i = 0; i < r; ++i)
            if (total[i] != nu * ws.character[i]) return std::nullopt;
        if (side == Side::minus ? nu >= 0 : nu <= 0) return std::nullopt;
        return nu;
    };

    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
        if (j == ws.size()) {
            if (auto nu = classify()) out.push_back({a, *nu});
            return;
        }
        for (int e = 0; e <= left; ++e) {
            a[j] = e;
            rec(j + 1, left - e);
            for (std::size_t i = 0; i < r; ++i) total[i] += ws.coords[j].weights[i];
        }
        for (std::size_t i = 0; i < r; ++i) total[i] -= (left + 1) * ws.coords[j].weights[i];
        a[j] = 0;
    };
    rec(0, degree_bound);
    return out;
}

// Block-diagonal product; labels get "1:"/"2:" prefixes only if the factors share a label.
inline WeightSystem product_system(const WeightSystem& a, const WeightSystem& b) {
    validate(a);
    validate(b);
    bool clash = false;
    for (const auto& x : a.coords)
        for (const auto& y : b.coords) clash = clash || x.label == y.label;
    WeightSystem out;
    out.rank = a.rank + b.rank;
    out.character = a.character;
    out.character.insert(out.character.end(), b.character.begin(), b.character.end());
    for (const auto& c : a.coords) {
        Coord x{clash ? "1:" + c.label : c.label, c.weights};
        x.weights.resize(static_cast<std::size_t>(out.rank), 0);
        out.coords.push_back(std::move(x));
    }
    for (const auto& c : b.coords) {
        Coord x{clash ? "2:" + c.label : c.label, IntVec(static_cast<std::size_t>(a.rank), 0)};
        x.weights.insert(x.weights.end(), c.weights.begin(), c.weights.end());
        out.coords.push_back(std::move(x));
    }
    return out;
}

// The action on V(Z): coordinates in Z are dropped.
inline WeightSystem restrict_system(const WeightSystem& ws, const std::vector<std::size_t>& vanishing) {
    validate(ws);
    WeightSystem out{ws.rank, {}, ws.character};
    for (std::size_t j = 0; j < ws.size(); ++j)
        if (std::find(vanishing.begin(), vanishing.end(), j) == vanishing.end()) out.coords.push_back(ws.coords[j]);
    return out;
}

inline bool unique_closed_point(const WeightSystem& ws) {
    validate(ws);
    if (ws.rank != 1) throw Error(ErrorKind::unsupported, "closed-point test is implemented for rank 1 only");
    bool pos = std::all_of(ws.coords.begin(), ws.coords.end(), [](const Coord& c) { return c.weights[0] > 0; });
    bool neg = std::all_of(ws.coords.begin(), ws.coords.end(), [](const Coord& c) { return c.weights[0] < 0; });
    return pos || neg;
}

inline WeightSystem ramphoid_system() {
    WeightSystem ws;
    ws.rank = 1;
    ws.character = {1};
    for (int i = 0; i < 4; ++i) ws.coords.push_back({"s_" + std::to_string(i), {-(10 - 2 * i)}});
    ws.coords.push_back({"n", {1}});
    ws.coords.push_back({"c", {1}});
    return ws;
}

} // namespace akvgit
