#pragma once

#include <string>
#include <vector>

#include <akvgit/builder.hpp>

namespace fixtures {

using akvgit::CurveBuilder;
using akvgit::CurveGraph;
using akvgit::PointRef;
using akvgit::Rational;

inline void cusp_tail(CurveBuilder& b, PointRef at, const std::string& z) {
    b.component(z, 0).node(at, {z, "q"}).singularity(2, {{z, "x"}});
}

inline void ramphoid_tail(CurveBuilder& b, PointRef at, const std::string& z, Rational crimp = 0) {
    b.component(z, 0).node(at, {z, "q"}).singularity(4, {{z, "x"}}, {crimp});
}

// Two rational components joined by a tacnode; ends z+"a".q and z+"b".q.
inline std::pair<PointRef, PointRef> bridge(CurveBuilder& b, const std::string& z) {
    b.component(z + "a", 0).component(z + "b", 0).singularity(3, {{z + "a", "t"}, {z + "b", "t"}});
    return {b.point(z + "a", "q"), b.point(z + "b", "q")};
}

// Monomial bridges joined end to start by nodes.
inline std::pair<PointRef, PointRef> link(CurveBuilder& b, const std::string& z, int length) {
    auto [first, last] = bridge(b, z + "1");
    for (int j = 2; j <= length; ++j) {
        auto [s, e] = bridge(b, z + std::to_string(j));
        b.node(last, s);
        last = e;
    }
    return {first, last};
}

inline CurveGraph smooth(int genus, int marks = 0) {
    CurveBuilder b;
    b.component("X", genus);
    for (int i = 0; i < marks; ++i) b.mark("X", "p" + std::to_string(i + 1));
    return b.build();
}

inline CurveGraph cuspidal_11() {
    CurveBuilder b;
    b.component("X", 0).singularity(2, {{"X", "x"}}).mark("X", "p");
    return b.build();
}

inline CurveGraph nodal_11() {
    CurveBuilder b;
    b.component("X", 0).node({"X", "a"}, {"X", "b"}).mark("X", "p");
    return b.build();
}

inline CurveGraph elliptic_11() { return smooth(1, 1); }

inline CurveGraph ramphoid_21(Rational crimp = 0) {
    CurveBuilder b;
    b.component("X", 0).singularity(4, {{"X", "x"}}, {crimp}).mark("X", "p");
    return b.build();
}

// Genus-2 core with nodal elliptic tail (genus 3).
inline CurveGraph elliptic_tail() {
    CurveBuilder b;
    b.component("K", 2).component("E", 1).node({"K", "a"}, {"E", "q"});
    return b.build();
}

inline CurveGraph tacnodal_elliptic_tail() {
    CurveBuilder b;
    b.component("K", 2).component("E", 1).singularity(3, {{"K", "a"}, {"E", "q"}});
    return b.build();
}

inline CurveGraph elliptic_bridge() {
    CurveBuilder b;
    b.component("K", 2).component("E", 1).node({"K", "a"}, {"E", "q1"}).node({"K", "b"}, {"E", "q2"});
    return b.build();
}

inline CurveGraph weierstrass_tail() {
    CurveBuilder b;
    b.component("K", 2).component("W", 2).node({"K", "a"}, {"W", "q"}).weierstrass("W", "q");
    return b.build();
}

// Irreducible: elliptic normalization with a cusp (genus 2).
inline CurveGraph cusp_attached_elliptic() {
    CurveBuilder b;
    b.component("X", 1).singularity(2, {{"X", "c"}});
    return b.build();
}

// Genus-2 core K plus r nodal monomial cuspidal (m=1) or ramphoid (m=2) tails.
inline CurveGraph core_with_tails(int m, int r) {
    CurveBuilder b;
    b.component("K", 2);
    for (int i = 1; i <= r; ++i) {
        auto z = "Z" + std::to_string(i);
        if (m == 1) cusp_tail(b, {"K", "a" + std::to_string(i)}, z);
        else ramphoid_tail(b, {"K", "a" + std::to_string(i)}, z);
    }
    return b.build();
}

inline CurveGraph two_tails(int m) {
    CurveBuilder b;
    b.component("Z1", 0).component("Z2", 0).node({"Z1", "q"}, {"Z2", "q"});
    b.singularity(2 * m, {{"Z1", "x"}}).singularity(2 * m, {{"Z2", "x"}});
    return b.build();
}

// Case II: genus-2 core with a two-ended link of the given length.
inline CurveGraph core_with_link(int length) {
    CurveBuilder b;
    b.component("K", 2);
    auto [s, e] = link(b, "B", length);
    b.node({"K", "a"}, s).node({"K", "b"}, e);
    return b.build();
}

// Case II: genus-2 core with a link whose far end is marked.
inline CurveGraph core_with_marked_link(int length) {
    CurveBuilder b;
    b.component("K", 2);
    auto [s, e] = link(b, "B", length);
    b.node({"K", "a"}, s);
    b.mark(e.comp, e.pt);
    return b.build();
}

// Case II': a link with both ends marked.
inline CurveGraph marked_link(int length) {
    CurveBuilder b;
    auto [s, e] = link(b, "B", length);
    b.mark(s.comp, s.pt).mark(e.comp, e.pt);
    return b.build();
}

// Case II'': a link closed up by a node.
inline CurveGraph closed_link(int length) {
    CurveBuilder b;
    auto [s, e] = link(b, "B", length);
    b.node(e, s);
    return b.build();
}

// Genus-2 component with a self-tacnode (genus 4).
inline CurveGraph internal_tacnode() {
    CurveBuilder b;
    b.component("X", 2).singularity(3, {{"X", "a"}, {"X", "b"}});
    return b.build();
}

inline CurveGraph internal_ramphoid(Rational crimp) {
    CurveBuilder b;
    b.component("K", 2).singularity(4, {{"K", "r"}}, {crimp});
    return b.build();
}

} // namespace fixtures
