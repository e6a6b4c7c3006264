#include <gtest/gtest.h>

#include <complex>
#include <numeric>
#include <random>
#include <set>

#include "spectra_forge/algebra.hpp"
#include "spectra_forge/number_theory.hpp"

using namespace spectra_forge;

namespace {

void expect_group_axioms(const FiniteGroup& g) {
    const Element e = g.identity();
    for (Element x = 0; x < g.order(); ++x) {
        EXPECT_EQ(g.combine(e, x), x);
        EXPECT_EQ(g.combine(x, e), x);
        EXPECT_EQ(g.combine(x, g.invert(x)), e);
        EXPECT_EQ(g.combine(g.invert(x), x), e);
        for (Element y = 0; y < g.order(); ++y)
            for (Element z = 0; z < g.order(); ++z)
                ASSERT_EQ(g.combine(g.combine(x, y), z), g.combine(x, g.combine(y, z)));
    }
}

bool commutative(const FiniteGroup& g) {
    for (Element x = 0; x < g.order(); ++x)
        for (Element y = 0; y < g.order(); ++y)
            if (g.combine(x, y) != g.combine(y, x)) return false;
    return true;
}

// Möbius/totient closed form of the Ramanujan sum.
i64 ramanujan_oracle(i64 r, i64 n) {
    const i64 g = std::gcd(r, n), q = n / g;
    return mobius(q) * totient(n) / totient(q);
}

}  // namespace

TEST(Groups, ConstructedGroupsSatisfyAxioms) {
    for (const char* d : {"cyclic:1", "cyclic:4", "cyclic:7", "prod:(cyclic:4,cyclic:3)", "prod:(cyclic:2,cyclic:2,cyclic:2)", "dihedral:2",
                          "dihedral:5", "dicyclic:2", "dicyclic:3", "sym:3", "sym:4"}) {
        SCOPED_TRACE(d);
        expect_group_axioms(make_group(d));
    }
}

TEST(Groups, AbelianStructureMatchesCommutativity) {
    for (const char* d : {"cyclic:12", "prod:(cyclic:4,cyclic:3)", "prod:(cyclic:2,cyclic:4)", "prod:(cyclic:6,cyclic:4)", "dihedral:4",
                          "dicyclic:3", "sym:3", "prod:(cyclic:2,cyclic:2,cyclic:2)"}) {
        SCOPED_TRACE(d);
        const FiniteGroup g = make_group(d);
        EXPECT_EQ(g.is_abelian(), commutative(g));
        if (!g.is_abelian()) {
            EXPECT_TRUE(g.invariant_factors().empty());
            continue;
        }
        const auto& f = g.invariant_factors();
        EXPECT_EQ(std::accumulate(f.begin(), f.end(), std::size_t{1}, std::multiplies<>()), g.order());
        for (std::size_t i = 1; i < f.size(); ++i) EXPECT_EQ(f[i] % f[i - 1], 0u);
        // Coordinates are a bijection onto the product of Z_{d_j}.
        std::set<std::vector<std::uint32_t>> seen;
        for (Element x = 0; x < g.order(); ++x) seen.insert(g.coordinates(x));
        EXPECT_EQ(seen.size(), g.order());
    }
}

TEST(Groups, NamedExamples) {
    const FiniteGroup z4 = cyclic(4);
    EXPECT_EQ(z4.invariant_factors(), std::vector<std::uint32_t>{4});
    EXPECT_EQ(z4.combine(1, 3), 0u);
    EXPECT_EQ(z4.invert(1), 3u);

    const FiniteGroup z4z3 = direct_product(cyclic(4), cyclic(3));
    EXPECT_EQ(z4z3.order(), 12u);
    EXPECT_TRUE(z4z3.is_abelian());
    EXPECT_EQ(z4z3.invariant_factors(), std::vector<std::uint32_t>{12});
    EXPECT_EQ(z4z3.element_label(5), "(1,2)");

    const FiniteGroup dic = dicyclic(3);
    EXPECT_EQ(dic.order(), 12u);
    EXPECT_FALSE(dic.is_abelian());
    const Element a = 2, b = 1;
    EXPECT_EQ(dic.element_label(b), "a^0b");
    EXPECT_EQ(dic.combine(b, b), dic.power(a, 3));
    EXPECT_EQ(dic.element_order(dic.combine(b, b)), 2u);
    // b^{-1} a b = a^{-1}
    EXPECT_EQ(dic.combine(dic.combine(dic.invert(b), a), b), dic.invert(a));

    const FiniteGroup d4 = dihedral(4);
    EXPECT_EQ(d4.order(), 8u);
    EXPECT_EQ(d4.element_order(1), 2u);
    EXPECT_EQ(symmetric(3).order(), 6u);
}

TEST(Groups, DescriptorErrors) {
    auto kind_of = [](auto f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::check_failed;
    };
    EXPECT_EQ(kind_of([] { make_group("cyclic"); }), ErrorKind::parse);
    EXPECT_EQ(kind_of([] { make_group("prod:(cyclic:2,"); }), ErrorKind::parse);
    EXPECT_EQ(kind_of([] { make_group("torus:3"); }), ErrorKind::parse);
    EXPECT_EQ(kind_of([] { make_group("cyclic:4 x"); }), ErrorKind::parse);
    EXPECT_EQ(kind_of([] { dihedral(1); }), ErrorKind::invalid_argument);
    EXPECT_EQ(kind_of([] { cyclic(10001); }), ErrorKind::size_limit);
    EXPECT_EQ(kind_of([] { symmetric(7); }), ErrorKind::size_limit);
    EXPECT_EQ(kind_of([] { cyclic(4).combine(4, 0); }), ErrorKind::invalid_argument);
    EXPECT_EQ(kind_of([] { GroupSubset(cyclic(4), {9}); }), ErrorKind::invalid_argument);
    EXPECT_EQ(kind_of([] { characters(symmetric(3)); }), ErrorKind::hypothesis);
}

TEST(Groups, InvalidTablesAreRejected) {
    // Latin square without associativity: x*y = x - y mod 3.
    std::vector<std::uint16_t> t(9);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) t[3 * x + y] = static_cast<std::uint16_t>(((x - y) % 3 + 3) % 3);
    EXPECT_THROW(FiniteGroup("bad", 3, t), Error);
}

TEST(Subsets, SortedDistinctMembers) {
    const GroupSubset s(cyclic(6), {5, 1, 5, 3});
    EXPECT_EQ(s.members(), (std::vector<Element>{1, 3, 5}));
    EXPECT_TRUE(s.contains(3));
    EXPECT_FALSE(s.contains(2));
    EXPECT_EQ(with_identity(s).size(), 4u);
    EXPECT_THROW(subset_union(s, GroupSubset(cyclic(5), {1})), Error);
}

TEST(Characters, OrthogonalityOnSmallAbelianGroups) {
    for (const char* d : {"cyclic:1", "cyclic:2", "cyclic:12", "prod:(cyclic:4,cyclic:4)", "prod:(cyclic:2,cyclic:6)", "prod:(cyclic:2,cyclic:2,cyclic:4)",
                          "cyclic:64"}) {
        SCOPED_TRACE(d);
        const FiniteGroup g = make_group(d);
        const auto chars = characters(g);
        ASSERT_EQ(chars.size(), g.order());
        for (const auto& c1 : chars)
            for (const auto& c2 : chars) {
                std::complex<double> sum = 0;
                for (Element x = 0; x < g.order(); ++x) sum += c1(x) * std::conj(c2(x));
                const double expected = c1.exponents == c2.exponents ? static_cast<double>(g.order()) : 0.0;
                ASSERT_LT(std::abs(sum - expected), 1e-9);
            }
        // Homomorphism property.
        for (const auto& c : chars)
            for (Element x = 0; x < g.order(); ++x)
                for (Element y = 0; y < g.order(); y += 3) ASSERT_LT(std::abs(c(g.combine(x, y)) - c(x) * c(y)), 1e-9);
    }
}

TEST(Characters, Examples) {
    const auto z2 = characters(cyclic(2));
    EXPECT_LT(std::abs(z2[0](1) - 1.0), 1e-12);
    EXPECT_LT(std::abs(z2[1](1) + 1.0), 1e-12);

    const FiniteGroup z4 = cyclic(4);
    const auto c4 = characters(z4);
    EXPECT_LT(std::abs(c4[1](1) - std::complex<double>(0, 1)), 1e-12);
    EXPECT_LT(std::abs(character_sum(c4[1], GroupSubset(z4, {1, 3}))), 1e-12);
    EXPECT_LT(std::abs(character_sum(c4[0], GroupSubset(z4, {1, 3})) - 2.0), 1e-12);

    const FiniteGroup z16 = cyclic(16);
    const GroupSubset s1(z16, {1, 2, 4, 5, 9, 10, 12, 13});
    EXPECT_LT(std::abs(character_sum(characters(z16)[0], s1) - 8.0), 1e-12);

    // On Z4 x Z4 (index 4x + y) each character is (x,y) -> i^{ax+by} for a distinct (a,b).
    const FiniteGroup z44 = make_group("prod:(cyclic:4,cyclic:4)");
    std::set<std::pair<int, int>> found;
    for (const auto& chi : characters(z44))
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                bool all = true;
                for (Element y = 0; y < 16 && all; ++y) {
                    const auto v = std::polar(1.0, 2 * std::numbers::pi * (a * int(y / 4) + b * int(y % 4)) / 4.0);
                    all = std::abs(chi(y) - v) < 1e-9;
                }
                if (all) found.insert({a, b});
            }
    EXPECT_EQ(found.size(), 16u);
}

TEST(Predicates, Examples) {
    const FiniteGroup z4 = cyclic(4);
    const auto p = subset_predicates(GroupSubset(z4, {1, 3}));
    EXPECT_TRUE(p.symmetric);
    EXPECT_TRUE(p.normal);
    EXPECT_TRUE(p.eulerian);
    EXPECT_FALSE(p.contains_identity);
    EXPECT_FALSE(p.antisymmetric);

    const auto q = subset_predicates(GroupSubset(cyclic(16), {1, 2, 4, 5, 9, 10, 12, 13}));
    EXPECT_FALSE(q.symmetric);
    EXPECT_TRUE(q.normal);

    const auto r = subset_predicates(GroupSubset(cyclic(5), {0, 1}));
    EXPECT_TRUE(r.contains_identity);
    EXPECT_FALSE(r.antisymmetric);

    EXPECT_TRUE(subset_predicates(GroupSubset(cyclic(5), {1, 2})).antisymmetric);

    // In S3 the transposition {(0 1)} is not normal; all transpositions are.
    const FiniteGroup s3 = symmetric(3);
    std::vector<Element> transpositions;
    for (Element x = 0; x < 6; ++x)
        if (s3.element_order(x) == 2) transpositions.push_back(x);
    EXPECT_FALSE(subset_predicates(GroupSubset(s3, {transpositions[0]})).normal);
    EXPECT_TRUE(subset_predicates(GroupSubset(s3, transpositions)).normal);
}

TEST(Predicates, AntinormalMeansDisjointFromNormalizer) {
    std::mt19937_64 rng(11);
    const FiniteGroup g = dihedral(4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Element> m;
        for (Element x = 0; x < g.order(); ++x)
            if (rng() % 3 == 0) m.push_back(x);
        const GroupSubset s(g, m);
        bool disjoint = true;
        for (Element h : s.members()) {
            bool normalizes = true;
            for (Element x : s.members())
                normalizes = normalizes && s.contains(g.combine(g.combine(h, x), g.invert(h)));
            disjoint = disjoint && !normalizes;
        }
        EXPECT_EQ(subset_predicates(s).antinormal, disjoint);
    }
}

TEST(GcdClasses, Examples) {
    EXPECT_EQ(gcd_class(4, 1).members(), (std::vector<Element>{1, 3}));
    EXPECT_EQ(gcd_class(12, 4).members(), (std::vector<Element>{4, 8}));
    EXPECT_THROW(gcd_class(12, 5), Error);
    EXPECT_THROW(gcd_class(12, 12), Error);

    const auto r = is_union_of_gcd_classes(GroupSubset(cyclic(16), {1, 2, 4, 5, 9, 10, 12, 13}));
    EXPECT_FALSE(r.is_union);
    ASSERT_TRUE(r.counterexample);
    EXPECT_EQ((std::gcd<i64, i64>(r.counterexample->first, 16)), (std::gcd<i64, i64>(r.counterexample->second, 16)));

    const auto u = is_union_of_gcd_classes(subset_union(gcd_class(12, 1), gcd_class(12, 4)));
    EXPECT_TRUE(u.is_union);
    EXPECT_EQ(u.divisors, (std::vector<i64>{1, 4}));
}

TEST(GcdClasses, UnionIffEulerianOnCyclicGroups) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 2 + rng() % 39;
        const FiniteGroup g = cyclic(n);
        std::vector<Element> m;
        if (trial % 2) {
            for (i64 d : divisors(static_cast<i64>(n)))
                if (d < static_cast<i64>(n) && rng() % 2) {
                    const GroupSubset cls = gcd_class(g, d);
                    m.insert(m.end(), cls.members().begin(), cls.members().end());
                }
        } else {
            for (Element x = 1; x < n; ++x)
                if (rng() % 2) m.push_back(x);
        }
        const GroupSubset s(g, m);
        EXPECT_EQ(is_union_of_gcd_classes(s).is_union, subset_predicates(s).eulerian) << n;
    }
}

TEST(BooleanAlgebra, Examples) {
    const FiniteGroup z4 = cyclic(4);
    EXPECT_TRUE(boolean_algebra_member(z4, GroupSubset(z4, {1, 3})));
    EXPECT_FALSE(boolean_algebra_member(z4, GroupSubset(z4, {1})));
    const FiniteGroup z4z3 = direct_product(cyclic(4), cyclic(3));
    // units {1,3} x {1,2} in mixed radix (a,b) -> 3a + b
    EXPECT_TRUE(boolean_algebra_member(z4z3, GroupSubset(z4z3, {4, 5, 10, 11})));
    EXPECT_THROW(boolean_algebra_member(symmetric(3), GroupSubset(symmetric(3), {1})), Error);
}

TEST(BooleanAlgebra, MemberIffEulerianOnAbelianGroups) {
    std::mt19937_64 rng(7);
    const char* groups[] = {"cyclic:48", "prod:(cyclic:2,cyclic:4)", "prod:(cyclic:4,cyclic:12)", "prod:(cyclic:2,cyclic:2,cyclic:6)",
                            "prod:(cyclic:3,cyclic:3)", "prod:(cyclic:2,cyclic:24)"};
    for (const char* d : groups) {
        const FiniteGroup g = make_group(d);
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<Element> m;
            const int density = 2 + trial % 5;
            for (Element x = 0; x < g.order(); ++x)
                if (rng() % density == 0) m.push_back(x);
            const GroupSubset s(g, m);
            EXPECT_EQ(boolean_algebra_member(g, s), subset_predicates(s).eulerian) << d;
        }
        // Closing a random set under co-generation always yields a member.
        std::vector<Element> m;
        for (Element x = 0; x < g.order(); ++x)
            if (rng() % 4 == 0)
                for (std::size_t k = 1; k <= g.element_order(x); ++k)
                    if (std::gcd(k, g.element_order(x)) == 1) m.push_back(g.power(x, static_cast<i64>(k)));
        EXPECT_TRUE(boolean_algebra_member(g, GroupSubset(g, m)));
    }
}

TEST(Ramanujan, Examples) {
    EXPECT_EQ(ramanujan_sum(0, 12), 4);
    EXPECT_EQ(ramanujan_sum(1, 4), 0);
    EXPECT_EQ(ramanujan_sum(2, 4), -2);
}

TEST(Ramanujan, MatchesMobiusTotientFormula) {
    for (i64 n = 1; n <= 60; ++n)
        for (i64 r = 1; r <= 60; ++r) ASSERT_EQ(ramanujan_sum(r, n), ramanujan_oracle(r, n)) << r << " " << n;
}

TEST(NumberTheory, Basics) {
    EXPECT_EQ(totient(12), 4);
    EXPECT_EQ(mobius(30), -1);
    EXPECT_EQ(mobius(12), 0);
    EXPECT_EQ(divisors(12), (std::vector<i64>{1, 2, 3, 4, 6, 12}));
    EXPECT_EQ(prime_power(81), (std::optional<std::pair<i64, int>>{{3, 4}}));
    EXPECT_FALSE(prime_power(12));
    EXPECT_EQ(binomial(6, 2), 15);
    EXPECT_THROW(ipow(10, 40), Error);
}
