#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace akvgit {

struct Coord {
    std::string label;
    IntVec weights;

    bool operator==(const Coord&) const = default;
};

// Diagonal action of a rank-r torus on labeled coordinates, together with a character.
struct WeightSystem {
    int rank = 1;
    std::vector<Coord> coords;
    IntVec character;

    std::size_t size() const { return coords.size(); }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i].label == label) return i;
        throw Error(ErrorKind::invalid_input, "unknown coordinate label " + label);
    }

    std::int64_t max_abs_weight() const {
        std::int64_t w = 0;
        for (const auto& c : coords)
            for (auto x : c.weights) w = std::max(w, x < 0 ? -x : x);
        return w;
    }

    bool operator==(const WeightSystem&) const = default;
};

inline void validate(const WeightSystem& ws) {
    if (ws.rank < 1) throw Error(ErrorKind::invalid_input, "torus rank must be at least 1");
    if (ws.character.size() != static_cast<std::size_t>(ws.rank))
        throw Error(ErrorKind::dimension_mismatch, "character length differs from rank");
    std::map<std::string, int> seen;
    for (const auto& c : ws.coords) {
        if (c.weights.size() != static_cast<std::size_t>(ws.rank))
            throw Error(ErrorKind::dimension_mismatch, "weight of " + c.label + " has wrong length");
        if (seen[c.label]++) throw Error(ErrorKind::invalid_input, "duplicate coordinate label " + c.label);
    }
}

using OneParamSubgroup = IntVec;

// Coordinates that are nonzero at a point.
struct SupportPattern {
    std::vector<std::size_t> support;

    static SupportPattern of(const WeightSystem& ws, const std::vector<std::string>& labels) {
        SupportPattern s;
        for (const auto& l : labels) s.support.push_back(ws.index_of(l));
        std::sort(s.support.begin(), s.support.end());
        return s;
    }

    static SupportPattern full(std::size_t n) {
        SupportPattern s;
        for (std::size_t i = 0; i < n; ++i) s.support.push_back(i);
        return s;
    }
};

// Union of coordinate subspaces V(J); an empty list is the empty set, a list holding {} is everything.
struct StratumUnion {
    std::vector<std::vector<std::size_t>> strata;

    // Drops non-minimal vanishing sets and sorts.
    void normalize() {
        for (auto& j : strata) {
            std::sort(j.begin(), j.end());
            j.erase(std::unique(j.begin(), j.end()), j.end());
        }
        std::sort(strata.begin(), strata.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        strata.erase(std::unique(strata.begin(), strata.end()), strata.end());
        std::vector<std::vector<std::size_t>> kept;
        for (const auto& j : strata) {
            bool redundant = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
                return std::includes(j.begin(), j.end(), k.begin(), k.end());
            });
            if (!redundant) kept.push_back(j);
        }
        std::sort(kept.begin(), kept.end());
        strata = std::move(kept);
    }

    // Whether a point with the given support lies on the union.
    bool contains(const SupportPattern& s) const {
        return std::any_of(strata.begin(), strata.end(), [&](const auto& j) {
            return std::none_of(j.begin(), j.end(), [&](std::size_t x) {
                return std::binary_search(s.support.begin(), s.support.end(), x);
            });
        });
    }

    bool operator==(const StratumUnion&) const = default;
};

inline StratumUnion make_union(std::vector<std::vector<std::size_t>> strata) {
    StratumUnion u{std::move(strata)};
    u.normalize();
    return u;
}

inline StratumUnion make_union(const WeightSystem& ws, const std::vector<std::vector<std::string>>& strata) {
    StratumUnion u;
    for (const auto& j : strata) {
        std::vector<std::size_t> idx;
        for (const auto& l : j) idx.push_back(ws.index_of(l));
        u.strata.push_back(std::move(idx));
    }
    u.normalize();
    return u;
}

// Label form, each stratum and the list sorted lexicographically.
inline std::vector<std::vector<std::string>> labeled(const WeightSystem& ws, const StratumUnion& u) {
    std::vector<std::vector<std::string>> out;
    for (const auto& j : u.strata) {
        std::vector<std::string> names;
        for (auto i : j) names.push_back(ws.coords.at(i).label);
        std::sort(names.begin(), names.end());
        out.push_back(std::move(names));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace akvgit
