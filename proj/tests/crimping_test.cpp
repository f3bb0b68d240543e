#include <random>

#include <gtest/gtest.h>

#include <akvgit/chambers.hpp>
#include <akvgit/crimping.hpp>

using namespace akvgit;

namespace {

CrimpingVector even(std::vector<Rational> c) {
    return {Parity::even, static_cast<int>(c.size()) + 1, std::move(c)};
}

BranchSeries single(int order, std::vector<std::pair<int, Rational>> terms) {
    auto s = TruncatedSeries::monomial(order, order);
    for (auto& [e, c] : terms) s.coeffs[static_cast<std::size_t>(e)] += c;
    return {s};
}

} // namespace

TEST(Tables, Examples) {
    EXPECT_EQ(crimping_weights(2, Parity::even), IntVec{1});
    EXPECT_EQ(crimping_weights(4, Parity::even), (IntVec{1, 3, 5}));
    EXPECT_EQ(crimping_weights(4, Parity::odd), (IntVec{1, 2, 3}));
    EXPECT_TRUE(crimping_weights(1, Parity::even).empty());
    EXPECT_EQ(h_weight_table(1, Parity::odd), (IntVec{-2, -3, -4}));
    EXPECT_EQ(h_weight_table(2, Parity::even), (IntVec{-4, -6, -8, -10}));
}

TEST(Equivalence, Examples) {
    auto a = crimping_equivalent(even({1}), even({3}));
    ASSERT_TRUE(a);
    EXPECT_EQ(*a, 3);
    auto b = crimping_equivalent(even({1, 1}), even({2, 8}));
    ASSERT_TRUE(b);
    EXPECT_EQ(*b, 2);
    EXPECT_FALSE(crimping_equivalent(even({0}), even({1})));
    EXPECT_FALSE(crimping_equivalent(even({1, 1}), even({2, 7})));
    EXPECT_EQ(*crimping_equivalent(even({0, 0}), even({0, 0})), 1);
}

TEST(Equivalence, IrrationalScale) {
    // lambda^3 = 2 has no rational solution, but the orbits agree over the closure.
    auto c = even({0, 1});
    auto d = even({0, 2});
    EXPECT_FALSE(crimping_equivalent(c, d));
    EXPECT_TRUE(crimping_orbit_equal(c, d));
    EXPECT_FALSE(crimping_orbit_equal(even({1, 1}), even({2, 7})));
}

TEST(Equivalence, NegativeAndFractional) {
    auto c = even({Rational(2, 3), Rational(-1, 5)});
    auto d = scale_crimping(c, Rational(-3, 2));
    auto l = crimping_equivalent(c, d);
    ASSERT_TRUE(l);
    EXPECT_EQ(*l, Rational(-3, 2));
    CrimpingVector odd{Parity::odd, 3, {0, 5}};
    auto e = scale_crimping(odd, Rational(3));
    auto l2 = crimping_equivalent(odd, e);
    ASSERT_TRUE(l2);
    EXPECT_EQ(scale_crimping(odd, *l2), e);
}

TEST(Subalgebra, MonomialM2) {
    auto gens = subalgebra_generators(even({0}));
    ASSERT_EQ(gens.size(), 5u);
    EXPECT_EQ(gens[0], single(8, {{2, 1}}));
    for (int e = 4; e <= 7; ++e) EXPECT_EQ(gens[static_cast<std::size_t>(e - 3)], single(8, {{e, 1}}));
    EXPECT_TRUE(subalgebra_contains(gens, single(8, {{2, 1}})));
    EXPECT_FALSE(subalgebra_contains(gens, single(8, {{3, 1}})));
    EXPECT_TRUE(subalgebra_contains(gens, single(8, {})));
}

TEST(Subalgebra, CrimpedM2) {
    auto gens = subalgebra_generators(even({1}));
    EXPECT_EQ(gens[0], single(8, {{2, 1}, {3, 2}, {4, 1}}));
    EXPECT_FALSE(subalgebra_contains(gens, single(8, {{3, 1}})));
    EXPECT_FALSE(subalgebra_contains(gens, single(8, {{2, 1}})));
    EXPECT_TRUE(subalgebra_contains(gens, single(8, {{2, 1}, {3, 2}})));
    EXPECT_TRUE(subalgebra_contains(gens, single(8, {{0, 5}, {5, -1}})));
}

TEST(Subalgebra, GeneratorCount) {
    for (int m = 1; m <= 4; ++m) {
        auto c = monomial_crimping(Parity::even, m);
        EXPECT_EQ(subalgebra_generators(c).size(), static_cast<std::size_t>(1 + 2 * m));
    }
    EXPECT_THROW(subalgebra_generators(even({0}), 7), Error);
}

TEST(Subalgebra, OddPair) {
    CrimpingVector c{Parity::odd, 2, {0}};
    auto gens = subalgebra_generators(c);
    ASSERT_EQ(gens.size(), 7u);
    auto s1 = TruncatedSeries::monomial(6, 1);
    auto z = TruncatedSeries::monomial(6, 6);
    EXPECT_TRUE(subalgebra_contains(gens, {s1, s1}));
    EXPECT_FALSE(subalgebra_contains(gens, {s1, z}));
    EXPECT_TRUE(subalgebra_contains(gens, {TruncatedSeries::monomial(6, 3), z}));
    EXPECT_FALSE(subalgebra_contains(gens, {TruncatedSeries::monomial(6, 2), z}));
    EXPECT_TRUE(subalgebra_contains(gens, {TruncatedSeries::monomial(6, 2), TruncatedSeries::monomial(6, 2)}));
}

TEST(Subalgebra, ScalingInvariance) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-3, 3), expo(0, 11);
    for (int t = 0; t < 30; ++t) {
        auto c = even({coef(rng), coef(rng)});
        Rational lambda(coef(rng) == 0 ? 2 : coef(rng) + 4, 3);
        auto d = scale_crimping(c, lambda);
        auto gc = subalgebra_generators(c), gd = subalgebra_generators(d);
        std::vector<std::pair<int, Rational>> terms;
        for (int i = 0; i < 3; ++i) terms.push_back({expo(rng), coef(rng)});
        auto f = single(12, terms);
        EXPECT_EQ(subalgebra_contains(gc, f), subalgebra_contains(gd, rescale(f, lambda)));
        auto g = gc[0];
        g[0].coeffs[5] += coef(rng);
        EXPECT_EQ(subalgebra_contains(gc, g), subalgebra_contains(gd, rescale(g, lambda)));
    }
}

TEST(Limit, Examples) {
    Rational u(5, 7), u1(2), u2(-3);
    auto a = limit_crimping({Parity::even, 2, {{-3, u}}});
    EXPECT_EQ(a.b, 3);
    EXPECT_EQ(a.limit.entries, std::vector<Rational>{u});

    auto b = limit_crimping({Parity::even, 3, {{-1, u1}, {-6, u2}}});
    EXPECT_EQ(b.b, 2);
    EXPECT_EQ(b.limit.entries, (std::vector<Rational>{0, u2}));

    auto c = limit_crimping({Parity::even, 3, {{std::nullopt, 0}, {std::nullopt, 0}}});
    EXPECT_EQ(c.b, 0);
    EXPECT_TRUE(c.limit.monomial());

    auto d = limit_crimping({Parity::odd, 3, {{-3, u1}, {-5, u2}}});
    EXPECT_EQ(d.b, 3);
    EXPECT_EQ(d.limit.entries, (std::vector<Rational>{u1, 0}));

    EXPECT_THROW(limit_crimping({Parity::even, 2, {{-1, 0}}}), Error);
}

TEST(Limit, ClosedOrbitOfCrimpingSpace) {
    for (int m = 1; m <= 6; ++m)
        for (Parity p : {Parity::even, Parity::odd}) {
            WeightSystem ws{1, {}, {1}};
            auto w = crimping_weights(m, p);
            for (std::size_t l = 0; l < w.size(); ++l) ws.coords.push_back({"c_" + std::to_string(l + 1), {w[l]}});
            EXPECT_TRUE(unique_closed_point(ws));
        }
}
