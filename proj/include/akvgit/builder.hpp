#pragma once

#include <string>
#include <vector>

#include "curve.hpp"

namespace akvgit {

// Incremental construction; points are created on first mention.
class CurveBuilder {
public:
    CurveBuilder& component(const std::string& id, int genus = 0) {
        g_.components.push_back({id, genus, {}, {}});
        return *this;
    }

    CurveBuilder& mark(const std::string& comp, const std::string& pt) {
        g_.marks.push_back(point(comp, pt));
        return *this;
    }

    CurveBuilder& singularity(int k, std::vector<PointRef> branches, std::vector<Rational> crimping = {}) {
        for (const auto& b : branches) point(b.comp, b.pt);
        if (crimping.empty()) crimping.assign(crimping_length(k), Rational(0));
        g_.singularities.push_back({k, std::move(branches), std::move(crimping)});
        return *this;
    }

    CurveBuilder& node(const PointRef& a, const PointRef& b) { return singularity(1, {a, b}); }

    CurveBuilder& weierstrass(const std::string& comp, const std::string& pt) {
        point(comp, pt);
        find(comp).weierstrass.push_back(pt);
        return *this;
    }

    CurveBuilder& declare(int m, std::vector<PointRef> points) {
        for (const auto& p : points) point(p.comp, p.pt);
        g_.h_declarations.push_back({std::move(points), m});
        return *this;
    }

    PointRef point(const std::string& comp, const std::string& pt) {
        auto& c = find(comp);
        if (std::find(c.points.begin(), c.points.end(), pt) == c.points.end()) c.points.push_back(pt);
        return {comp, pt};
    }

    const CurveGraph& graph() const { return g_; }
    CurveGraph build() const { return g_; }

private:
    Component& find(const std::string& id) {
        for (auto& c : g_.components)
            if (c.id == id) return c;
        throw Error(ErrorKind::invalid_input, "unknown component " + id);
    }

    CurveGraph g_;
};

} // namespace akvgit
