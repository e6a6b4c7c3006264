#include <gtest/gtest.h>

#include <set>

#include "spectra_forge/finring.hpp"

using namespace spectra_forge;

namespace {

using Poly = std::vector<i64>;

// Remainder of a by a monic b over Z_p, written out independently of the library.
Poly remainder(Poly a, const Poly& b, i64 p) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const i64 c = a.back() % p;
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly monic_from_code(i64 code, i64 p, int degree) {
    Poly f(static_cast<std::size_t>(degree) + 1, 0);
    f.back() = 1;
    for (int i = 0; i < degree; ++i, code /= p) f[static_cast<std::size_t>(i)] = code % p;
    return f;
}

// Irreducible iff no monic polynomial of degree 1..deg/2 divides it.
bool irreducible_by_search(const Poly& f, i64 p) {
    const int m = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= m; ++d)
        for (i64 code = 0; code < ipow(p, d); ++code)
            if (remainder(f, monic_from_code(code, p, d), p).empty()) return false;
    return true;
}

std::vector<LocalRing> sample_rings() {
    using K = LocalRingKind;
    return {local_ring(K::integers_mod_prime_power, 2, 1), local_ring(K::integers_mod_prime_power, 2, 3),
            local_ring(K::integers_mod_prime_power, 3, 2), local_ring(K::integers_mod_prime_power, 5, 1),
            local_ring(K::finite_field, 2, 3),             local_ring(K::finite_field, 3, 2),
            local_ring(K::galois_ring, 2, 2, 2),           local_ring(K::galois_ring, 3, 2, 1),
            local_ring(K::truncated_polynomial, 3, 1, 2),  local_ring(K::truncated_polynomial, 2, 2, 2)};
}

}  // namespace

TEST(LocalRings, ArithmeticAxiomsByBruteForce) {
    for (const LocalRing& r : sample_rings()) {
        SCOPED_TRACE(r.label());
        const auto n = static_cast<std::uint32_t>(r.size());
        for (std::uint32_t a = 0; a < n; ++a) {
            ASSERT_EQ(r.mul(a, 1), a);
            ASSERT_EQ(r.add(a, r.neg(a)), 0u);
            for (std::uint32_t b = 0; b < n; ++b) {
                ASSERT_EQ(r.mul(a, b), r.mul(b, a));
                ASSERT_EQ(r.add(a, b), r.add(b, a));
                for (std::uint32_t c = 0; c < n; c += 3) {
                    ASSERT_EQ(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
                    ASSERT_EQ(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
                }
            }
        }
    }
}

TEST(LocalRings, NonUnitsFormTheMaximalIdeal) {
    for (const LocalRing& r : sample_rings()) {
        SCOPED_TRACE(r.label());
        const auto n = static_cast<std::uint32_t>(r.size());
        std::set<std::uint32_t> nonunits;
        for (std::uint32_t a = 0; a < n; ++a) {
            bool invertible = false;
            for (std::uint32_t b = 0; b < n && !invertible; ++b) invertible = r.mul(a, b) == 1;
            EXPECT_EQ(r.is_unit(a), invertible);
            if (!invertible) nonunits.insert(a);
        }
        EXPECT_EQ(nonunits.size(), r.maximal_ideal_size());
        const auto ideal = r.maximal_ideal();
        EXPECT_EQ(std::set<std::uint32_t>(ideal.begin(), ideal.end()), nonunits);
        for (std::uint32_t x : nonunits)
            for (std::uint32_t y = 0; y < n; ++y) {
                EXPECT_TRUE(nonunits.count(r.mul(x, y)));
                if (nonunits.count(y)) {
                    EXPECT_TRUE(nonunits.count(r.add(x, y)));
                }
            }
        EXPECT_EQ(r.units().size() + nonunits.size(), r.size());
        EXPECT_EQ(r.is_field(), nonunits.size() == 1);
    }
}

TEST(LocalRings, Examples) {
    const LocalRing z4 = local_ring(LocalRingKind::integers_mod_prime_power, 2, 2);
    EXPECT_EQ(z4.size(), 4u);
    EXPECT_EQ(z4.maximal_ideal_size(), 2u);
    EXPECT_EQ(z4.units(), (std::vector<std::uint32_t>{1, 3}));

    const LocalRing f3 = local_ring(LocalRingKind::finite_field, 3, 1);
    EXPECT_TRUE(f3.is_field());
    EXPECT_EQ(f3.units(), (std::vector<std::uint32_t>{1, 2}));

    const LocalRing gr = local_ring(LocalRingKind::galois_ring, 2, 2, 2);
    EXPECT_EQ(gr.size(), 16u);
    EXPECT_EQ(gr.maximal_ideal_size(), 4u);
    EXPECT_EQ(gr.units().size(), 12u);
}

TEST(LocalRings, GaloisRingUnitCount) {
    for (i64 p : {2, 3, 5, 7, 11, 13})
        for (int s = 1; s <= 12; ++s)
            for (int t = 1; s * t <= 12; ++t) {
                if (ipow(p, s * t) > 4096) continue;
                const LocalRing r = local_ring(LocalRingKind::galois_ring, p, s, t);
                EXPECT_EQ(r.size(), static_cast<std::size_t>(ipow(p, s * t)));
                EXPECT_EQ(static_cast<i64>(r.units().size()), ipow(p, (s - 1) * t) * (ipow(p, t) - 1)) << p << " " << s << " " << t;
            }
}

TEST(LocalRings, TruncatedPolynomialUnitCount) {
    for (auto [p, m, t] : std::vector<std::tuple<i64, int, int>>{{2, 1, 3}, {2, 2, 2}, {3, 1, 2}, {3, 2, 2}, {5, 1, 3}}) {
        const LocalRing r = local_ring(LocalRingKind::truncated_polynomial, p, m, t);
        EXPECT_EQ(static_cast<i64>(r.units().size()), ipow(p, m * (t - 1)) * (ipow(p, m) - 1));
    }
}

TEST(LocalRings, Errors) {
    EXPECT_THROW(local_ring(LocalRingKind::finite_field, 4, 1), Error);
    EXPECT_THROW(local_ring(LocalRingKind::finite_field, 2, 13), Error);
    EXPECT_THROW(local_ring(LocalRingKind::galois_ring, 17, 2, 2), Error);
    EXPECT_THROW(make_ring("zpk:6"), Error);
    EXPECT_THROW(make_ring("gf:3*"), Error);
    EXPECT_THROW(make_ring("field:3"), Error);
    EXPECT_THROW(FiniteRing({}), Error);
}

TEST(Polynomials, ChosenModulusIsSmallestIrreducible) {
    for (i64 p : {2, 3, 5, 7, 11, 13})
        for (int m = 1; ipow(p, m) <= 4096; ++m) {
            const Poly f = poly::smallest_irreducible(p, m);
            ASSERT_EQ(f.size(), static_cast<std::size_t>(m) + 1);
            EXPECT_TRUE(irreducible_by_search(f, p)) << p << "^" << m;
            if (ipow(p, m) > 256) continue;
            i64 code = 0;
            for (int i = m - 1; i >= 0; --i) code = code * p + f[static_cast<std::size_t>(i)];
            for (i64 smaller = 0; smaller < code; ++smaller) EXPECT_FALSE(irreducible_by_search(monic_from_code(smaller, p, m), p));
        }
}

TEST(Polynomials, IrreducibilityTestMatchesSearch) {
    for (i64 p : {2, 3})
        for (int m = 1; m <= 5; ++m)
            for (i64 code = 0; code < ipow(p, m); ++code) {
                const Poly f = monic_from_code(code, p, m);
                EXPECT_EQ(poly::is_irreducible(f, p), irreducible_by_search(f, p));
            }
}

TEST(ArtinProducts, UnitsAreProductOfFactorUnits) {
    for (const char* d : {"zpk:2^2*gf:3", "zpk:2^2*gf:3*gf:2", "gf:3*gf:3", "gr:2^2:2*gf:5", "quot:3:2*zpk:2^3"}) {
        SCOPED_TRACE(d);
        const FiniteRing r = make_ring(d);
        std::size_t expected_size = 1, expected_units = 1;
        for (const auto& f : r.factors()) {
            expected_size *= f.size();
            expected_units *= f.units().size();
        }
        EXPECT_EQ(r.size(), expected_size);
        const GroupSubset u = units(r);
        EXPECT_EQ(u.size(), expected_units);
        for (std::uint32_t a = 0; a < r.size(); ++a) {
            const auto parts = r.split(a);
            bool all = true;
            for (std::size_t i = 0; i < parts.size(); ++i) all = all && r.factors()[i].is_unit(parts[i]);
            EXPECT_EQ(u.contains(a), all);
            EXPECT_EQ(r.join(parts), a);
        }
        EXPECT_TRUE(r.additive_group().is_abelian());
    }
}

TEST(ArtinProducts, Examples) {
    const FiniteRing z4z3 = make_ring("zpk:2^2*gf:3");
    EXPECT_EQ(z4z3.size(), 12u);
    EXPECT_EQ(z4z3.additive_group().invariant_factors(), std::vector<std::uint32_t>{12});
    const GroupSubset u = units(z4z3);
    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (Element a : u.members()) {
        const auto parts = z4z3.split(a);
        pairs.insert({parts[0], parts[1]});
    }
    EXPECT_EQ(pairs, (std::set<std::pair<std::uint32_t, std::uint32_t>>{{1, 1}, {1, 2}, {3, 1}, {3, 2}}));

    const FiniteRing z4z3z2 = make_ring("zpk:2^2*gf:3*gf:2");
    EXPECT_EQ(z4z3z2.size(), 24u);
    EXPECT_EQ(units(z4z3z2).size(), 4u);

    EXPECT_EQ(units(make_ring("zpk:2^2")).members(), (std::vector<Element>{1, 3}));
    EXPECT_EQ(units(make_ring("gf:9")).size(), 8u);
    EXPECT_EQ(make_ring("gf:3").size(), 3u);
}

TEST(PowerResidues, SizeAndClosure) {
    for (i64 q : {3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64}) {
        const FiniteRing f = make_ring("gf:" + std::to_string(q));
        for (i64 k : divisors(q - 1)) {
            const GroupSubset pk = power_residues(f, k);
            std::set<std::uint32_t> brute;
            for (std::uint32_t x = 1; x < q; ++x) {
                std::uint32_t y = 1;
                for (i64 i = 0; i < k; ++i) y = f.mul(y, x);
                brute.insert(y);
            }
            EXPECT_EQ(std::set<Element>(pk.members().begin(), pk.members().end()), brute);
            EXPECT_EQ(static_cast<i64>(pk.size()), (q - 1) / k);
            for (Element a : pk.members())
                for (Element b : pk.members()) EXPECT_TRUE(pk.contains(f.mul(a, b)));
        }
    }
    EXPECT_EQ(power_residues(make_ring("gf:9"), 2).size(), 4u);
    EXPECT_EQ(power_residues(make_ring("gf:5"), 1).size(), 4u);
    EXPECT_EQ(power_residues(make_ring("gf:16"), 3).size(), 5u);
    EXPECT_THROW(power_residues(make_ring("zpk:3^2"), 2), Error);
    EXPECT_THROW(power_residues(make_ring("gf:9"), 3), Error);
}

TEST(GeneralizedPaley, Integrality) {
    EXPECT_TRUE(gp_integrality(3, 16));
    EXPECT_TRUE(gp_integrality(2, 9));
    EXPECT_TRUE(gp_integrality(5, 16));
    EXPECT_FALSE(gp_integrality(3, 7));
    EXPECT_THROW(gp_integrality(4, 7), Error);
}

TEST(GeneralizedPaley, Semiprimitive) {
    const auto a = semiprimitive_check(3, 16);
    EXPECT_TRUE(a.semiprimitive);
    EXPECT_EQ(a.t, 1);
    EXPECT_TRUE(semiprimitive_check(2, 9).semiprimitive);
    EXPECT_FALSE(semiprimitive_check(3, 7).semiprimitive);
    EXPECT_FALSE(semiprimitive_check(2, 7).semiprimitive);
}

TEST(GeneralizedPaley, HammingParameters) {
    EXPECT_EQ(hamming_gp_parameters(2, 3, 1), std::optional<i64>(2));
    EXPECT_EQ(hamming_gp_parameters(3, 2, 1), std::nullopt);
    EXPECT_EQ(hamming_gp_parameters(1, 5, 2), std::optional<i64>(1));
}
