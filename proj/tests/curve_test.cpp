#include <gtest/gtest.h>

#include <akvgit/degeneration.hpp>
#include <akvgit/isomorphism.hpp>

#include "fixtures.hpp"

using namespace akvgit;
using namespace fixtures;

namespace {

bool has_rule(const Verdict& v, const std::string& rule) {
    return std::any_of(v.violations.begin(), v.violations.end(), [&](const Violation& x) { return x.rule == rule; });
}

bool stable(const CurveGraph& c, int k, Variant v) { return stability(c, k, v).pass; }

} // namespace

TEST(Validate, Examples) {
    CurveBuilder a;
    a.component("P", 0).component("Q", 0).node({"P", "a"}, {"Q", "a"});
    auto two = a.build();
    EXPECT_TRUE(validate(two).pass);
    EXPECT_EQ(arithmetic_genus(two), 0);
    EXPECT_FALSE(is_ample(two));

    CurveBuilder b;
    b.component("X", 0).node({"X", "a"}, {"X", "b"}).mark("X", "a");
    auto v = validate(b.build());
    EXPECT_FALSE(v.pass);
    EXPECT_TRUE(has_rule(v, "marked-singular-point"));

    CurveBuilder c;
    c.component("X", 1).component("Y", 1);
    EXPECT_TRUE(has_rule(validate(c.build()), "disconnected"));

    auto bad = cuspidal_11();
    bad.singularities[0].crimping.push_back(1);
    EXPECT_TRUE(has_rule(validate(bad), "crimping-length"));
    auto bad2 = ramphoid_21();
    bad2.singularities[0].branches.push_back({"X", "p"});
    EXPECT_FALSE(validate(bad2).pass);
}

TEST(Genus, Examples) {
    EXPECT_EQ(arithmetic_genus(cuspidal_11()), 1);
    CurveBuilder b;
    b.component("X", 0).component("Y", 0).singularity(3, {{"X", "t"}, {"Y", "t"}});
    EXPECT_EQ(arithmetic_genus(b.build()), 1);
    EXPECT_EQ(arithmetic_genus(ramphoid_21()), 2);
    EXPECT_EQ(arithmetic_genus(core_with_link(3)), 2 + 3 + 1);
    EXPECT_EQ(arithmetic_genus(closed_link(3)), 4);
}

TEST(Omega, Examples) {
    CurveBuilder b;
    b.component("K", 2).component("T", 0).node({"K", "a"}, {"T", "q"});
    auto c = b.build();
    EXPECT_EQ(omega_degree(c, "T"), -1);
    EXPECT_FALSE(is_ample(c));
    EXPECT_EQ(omega_degree(cuspidal_11(), "X"), 1);
    EXPECT_EQ(omega_degree(smooth(2, 1), "X"), 3);
    EXPECT_TRUE(is_ample(ramphoid_21()));
}

TEST(HCurves, EllipticTailAtNode) {
    auto t = find_h_tails(elliptic_tail(), 1);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].attaching, std::vector<int>{1});
    EXPECT_TRUE(is_destabilizing(t[0]));
    EXPECT_FALSE(t[0].monomial);
}

TEST(HCurves, TwoBridgesAtTacnode) {
    CurveBuilder b;
    b.component("K", 2).component("E1", 1).component("E2", 1);
    b.node({"K", "a"}, {"E1", "q1"}).singularity(3, {{"E1", "q2"}, {"E2", "q1"}}).node({"E2", "q2"}, {"K", "b"});
    auto c = b.build();
    EXPECT_EQ(find_h_bridges(c, 1).size(), 2u);
    auto chains = find_h_chains(c, 1);
    auto longest = std::max_element(chains.begin(), chains.end(),
                                    [](const HChain& x, const HChain& y) { return x.bridges.size() < y.bridges.size(); });
    ASSERT_NE(longest, chains.end());
    EXPECT_EQ(longest->bridges.size(), 2u);
    EXPECT_EQ(std::count_if(chains.begin(), chains.end(), [](const HChain& ch) { return ch.bridges.size() == 2; }), 1);
    EXPECT_TRUE(is_destabilizing(*longest));
}

TEST(HCurves, MonomialRamphoidTail) {
    auto t = find_h_tails(core_with_tails(2, 1), 2);
    ASSERT_EQ(t.size(), 1u);
    EXPECT_TRUE(t[0].monomial);
    EXPECT_EQ(t[0].comps.size(), 1u);
    CurveBuilder b;
    b.component("K", 2);
    ramphoid_tail(b, {"K", "a"}, "Z", 3);
    EXPECT_TRUE(find_h_tails(b.build(), 2).empty());
}

TEST(HCurves, Destabilizing) {
    HStructure h{1, {0}, {{"E", "q"}}, {1}, "", false};
    EXPECT_TRUE(is_destabilizing(h));
    h.attaching = {2};
    EXPECT_FALSE(is_destabilizing(h));
    h.attaching = {3};
    EXPECT_TRUE(is_destabilizing(h));
    h.attaching = {0};
    EXPECT_TRUE(is_destabilizing(h));
    HStructure br{1, {0}, {{"E", "a"}, {"E", "b"}}, {1, 3}, "", false};
    EXPECT_FALSE(is_destabilizing(br));
    br.attaching = {0, 4};
    EXPECT_TRUE(is_destabilizing(br));
}

TEST(HCurves, SubcurveShapes) {
    for (const auto& c : {core_with_link(3), closed_link(2), marked_link(4), elliptic_bridge()}) {
        for (const auto& b : find_h_bridges(c, 1)) EXPECT_LE(b.comps.size(), 2u);
        for (const auto& t : find_h_tails(c, 1)) EXPECT_EQ(t.comps.size(), 1u);
    }
}

TEST(Stability, Examples) {
    for (int k = 2; k <= 4; ++k)
        for (Variant v : {Variant::minus, Variant::plain, Variant::plus}) EXPECT_TRUE(stable(smooth(3), k, v));
    EXPECT_TRUE(stable(elliptic_tail(), 2, Variant::plain));
    auto plus = stability(elliptic_tail(), 2, Variant::plus);
    EXPECT_FALSE(plus.pass);
    EXPECT_TRUE(has_rule(plus, "destabilizing-tail"));
    EXPECT_NE(plus.violations[0].witness.find("destabilizing H_{1,1}-tail, nodal attaching"), std::string::npos);
    EXPECT_FALSE(stable(tacnodal_elliptic_tail(), 3, Variant::plain));
    EXPECT_THROW(stability(smooth(3), 5, Variant::plain), Error);
}

TEST(Stability, TruthTable) {
    EXPECT_TRUE(stable(elliptic_tail(), 2, Variant::plain));
    EXPECT_FALSE(stable(elliptic_tail(), 2, Variant::plus));
    EXPECT_FALSE(stable(tacnodal_elliptic_tail(), 3, Variant::plain));
    EXPECT_TRUE(stable(elliptic_bridge(), 3, Variant::plain));
    EXPECT_FALSE(stable(elliptic_bridge(), 3, Variant::plus));
    EXPECT_TRUE(stable(weierstrass_tail(), 4, Variant::plain));
    EXPECT_FALSE(stable(weierstrass_tail(), 4, Variant::plus));
    EXPECT_TRUE(stable(cusp_attached_elliptic(), 3, Variant::plain));
}

TEST(Stability, PlusIsNextMinus) {
    std::vector<CurveGraph> curves{elliptic_tail(), tacnodal_elliptic_tail(), elliptic_bridge(), weierstrass_tail(),
                                   cusp_attached_elliptic(), core_with_tails(1, 2), core_with_link(2),
                                   internal_tacnode(), cuspidal_11(), ramphoid_21(), closed_link(2)};
    for (const auto& c : curves) {
        for (int k = 2; k <= 3; ++k)
            EXPECT_EQ(stable(c, k, Variant::plus), stable(c, k + 1, Variant::minus));
        for (int k = 2; k <= 4; ++k) {
            if (stable(c, k, Variant::plus)) EXPECT_TRUE(stable(c, k, Variant::plain));
        }
    }
}

TEST(Decomposition, Examples) {
    auto d = canonical_decomposition(core_with_tails(1, 1), 2);
    EXPECT_EQ(d.kind, DecompositionCase::I);
    EXPECT_EQ(d.appendages.size(), 1u);
    EXPECT_EQ(d.core.components.size(), 1u);
    EXPECT_EQ(d.core.marks.size(), 1u);

    auto e = canonical_decomposition(ramphoid_21(), 4);
    EXPECT_EQ(e.kind, DecompositionCase::I_double_prime);

    auto f = canonical_decomposition(marked_link(2), 3);
    EXPECT_EQ(f.kind, DecompositionCase::II_prime);
    ASSERT_EQ(f.appendages.size(), 1u);
    EXPECT_EQ(f.appendages[0].length(), 2u);

    EXPECT_EQ(canonical_decomposition(two_tails(1), 2).kind, DecompositionCase::I_prime);
    EXPECT_EQ(canonical_decomposition(closed_link(3), 3).kind, DecompositionCase::II_double_prime);
    EXPECT_EQ(canonical_decomposition(closed_link(1), 3).kind, DecompositionCase::II_double_prime);
    auto g = canonical_decomposition(core_with_marked_link(4), 3);
    EXPECT_EQ(g.kind, DecompositionCase::II);
    EXPECT_EQ(g.appendages[0].link.start_attaching(), 0);
    EXPECT_THROW(canonical_decomposition(tacnodal_elliptic_tail(), 3), Error);
}

TEST(Decomposition, RoundTripAndCore) {
    std::vector<std::pair<CurveGraph, int>> cases{
        {core_with_tails(1, 2), 2}, {core_with_tails(2, 2), 4}, {two_tails(2), 4},      {cuspidal_11(), 2},
        {core_with_link(3), 3},     {core_with_marked_link(2), 3}, {marked_link(3), 3}, {closed_link(2), 3},
        {elliptic_tail(), 2},       {elliptic_bridge(), 3},      {weierstrass_tail(), 4}};
    for (const auto& [c, k] : cases) {
        auto d = canonical_decomposition(c, k);
        EXPECT_TRUE(curves_isomorphic(reassemble(d), c)) << to_string(d.kind);
        std::set<std::string> seen;
        for (const auto& a : d.appendages)
            for (const auto& comp : a.piece.components) EXPECT_TRUE(seen.insert(comp.id).second);
        for (const auto& piece : connected_pieces(d.core)) {
            EXPECT_TRUE(stable(piece, k, Variant::plain));
            if (k % 2 == 0)
                for (const auto& t : find_h_tails(piece, k / 2)) EXPECT_FALSE(is_destabilizing(t));
            else
                for (const auto& ch : find_h_chains(piece, k / 2)) EXPECT_FALSE(is_destabilizing(ch));
        }
    }
}

TEST(MaximallyDegenerate, Examples) {
    EXPECT_EQ(is_maximally_degenerate(cuspidal_11(), 2).verdict, Tri::yes);
    EXPECT_EQ(is_maximally_degenerate(smooth(2), 2).verdict, Tri::yes);
    auto r = is_maximally_degenerate(cusp_attached_elliptic(), 2);
    EXPECT_EQ(r.verdict, Tri::no);
    EXPECT_FALSE(r.reasons.empty());
    EXPECT_EQ(is_maximally_degenerate(elliptic_11(), 2).verdict, Tri::no);
    EXPECT_EQ(is_maximally_degenerate(nodal_11(), 2).verdict, Tri::no);
    EXPECT_EQ(is_maximally_degenerate(core_with_link(3), 3).verdict, Tri::yes);
    EXPECT_EQ(is_maximally_degenerate(elliptic_bridge(), 3).verdict, Tri::no);
    EXPECT_EQ(is_maximally_degenerate(core_with_tails(2, 1), 4).verdict, Tri::yes);
    EXPECT_EQ(is_maximally_degenerate(weierstrass_tail(), 4).verdict, Tri::no);
    EXPECT_EQ(is_maximally_degenerate(internal_tacnode(), 4).verdict, Tri::unknown);
    EXPECT_THROW(is_maximally_degenerate(tacnodal_elliptic_tail(), 3), Error);
}

TEST(Degeneration, Examples) {
    auto d1 = maximal_degeneration(cusp_attached_elliptic(), 2);
    EXPECT_TRUE(curves_isomorphic(d1, two_tails(1)));

    auto d2 = maximal_degeneration(internal_ramphoid(5), 4);
    EXPECT_TRUE(curves_isomorphic(d2, core_with_tails(2, 1)));
    EXPECT_EQ(is_maximally_degenerate(d2, 4).verdict, Tri::yes);

    EXPECT_TRUE(curves_isomorphic(maximal_degeneration(elliptic_11(), 2), cuspidal_11()));
    EXPECT_TRUE(curves_isomorphic(maximal_degeneration(nodal_11(), 2), cuspidal_11()));
    EXPECT_TRUE(curves_isomorphic(maximal_degeneration(elliptic_tail(), 2), core_with_tails(1, 1)));
    EXPECT_TRUE(curves_isomorphic(maximal_degeneration(elliptic_bridge(), 3), core_with_link(1)));
    EXPECT_TRUE(curves_isomorphic(maximal_degeneration(internal_tacnode(), 3), core_with_link(1)));
    EXPECT_TRUE(curves_isomorphic(maximal_degeneration(weierstrass_tail(), 4), core_with_tails(2, 1)));

    auto already = core_with_link(3);
    EXPECT_TRUE(curves_isomorphic(maximal_degeneration(already, 3), already));
}

TEST(Degeneration, Properties) {
    std::vector<CurveGraph> curves{elliptic_tail(),   tacnodal_elliptic_tail(), elliptic_bridge(),     weierstrass_tail(),
                                   cusp_attached_elliptic(), core_with_tails(1, 2), core_with_tails(2, 2),
                                   core_with_link(2), internal_tacnode(),   internal_ramphoid(2), cuspidal_11(),
                                   nodal_11(),        elliptic_11(),        ramphoid_21(3),        closed_link(2),
                                   marked_link(2),    smooth(3),            smooth(2, 1)};
    int checked = 0;
    for (const auto& c : curves)
        for (int k = 2; k <= 4; ++k) {
            if (!stable(c, k, Variant::plain)) continue;
            ++checked;
            auto d = maximal_degeneration(c, k);
            EXPECT_TRUE(stable(d, k, Variant::plain));
            EXPECT_EQ(arithmetic_genus(d), arithmetic_genus(c));
            EXPECT_EQ(d.marks.size(), c.marks.size());
            EXPECT_NE(is_maximally_degenerate(d, k).verdict, Tri::no);
            EXPECT_TRUE(curves_isomorphic(maximal_degeneration(d, k), d));
        }
    EXPECT_GT(checked, 20);
}

TEST(Isomorphism, Examples) {
    auto c = core_with_link(2);
    auto relabeled = c;
    for (auto& comp : relabeled.components) comp.id = "r_" + comp.id;
    auto fix = [](PointRef& p) { p.comp = "r_" + p.comp; };
    for (auto& s : relabeled.singularities)
        for (auto& b : s.branches) fix(b);
    for (auto& m : relabeled.marks) fix(m);
    std::reverse(relabeled.components.begin(), relabeled.components.end());
    std::reverse(relabeled.singularities.begin(), relabeled.singularities.end());
    EXPECT_TRUE(curves_isomorphic(c, relabeled));
    EXPECT_EQ(canonical_form(c), canonical_form(relabeled));

    CurveBuilder a, b;
    for (auto* x : {&a, &b}) {
        x->component("K", 2).mark("K", "p1").mark("K", "p2");
        cusp_tail(*x, {"K", "a"}, "Z");
    }
    a.weierstrass("K", "p1");
    b.weierstrass("K", "p2");
    EXPECT_FALSE(curves_isomorphic(a.build(), b.build()));
    EXPECT_NE(canonical_form(a.build()), canonical_form(b.build()));

    EXPECT_TRUE(curves_isomorphic(ramphoid_21(1), ramphoid_21(3)));
    EXPECT_FALSE(curves_isomorphic(ramphoid_21(0), ramphoid_21(3)));
    EXPECT_FALSE(curves_isomorphic(core_with_link(2), core_with_link(3)));
    EXPECT_FALSE(curves_isomorphic(core_with_tails(1, 1), elliptic_tail()));
}
