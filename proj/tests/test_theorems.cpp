#include <gtest/gtest.h>

#include <set>

#include "spectra_forge/theorems.hpp"

using namespace spectra_forge;

namespace {

Spectrum spec(std::initializer_list<std::pair<double, std::size_t>> entries) {
    std::vector<SpectrumEntry> e;
    for (auto [v, m] : entries) e.push_back({v, m});
    return Spectrum(e);
}

std::set<std::string> failing_identities(const VerificationReport& r) {
    std::set<std::string> out;
    if (r.witness.is_array())
        for (const auto& w : r.witness) out.insert(w.at("kind").get<std::string>() + " " + w.at("identity").get<std::string>());
    return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::check_failed;
}

}  // namespace

TEST(Products, ExponentTwoGroupsSatisfyAllIdentities) {
    const FiniteGroup g = make_group("prod:(cyclic:2,cyclic:2,cyclic:2)");
    for (std::vector<Element> m : {std::vector<Element>{1}, {1, 2, 4}, {0, 3, 5, 6}, {1, 2, 3, 4, 5, 6, 7}}) {
        const auto r = check_product_decompositions(g, GroupSubset(g, m));
        EXPECT_EQ(r.outcome, Outcome::pass) << r.witness.dump();
        EXPECT_EQ(r.claim_id, "thm:prods");
        EXPECT_EQ(r.details["identities"], 12);
    }
}

TEST(Products, SumKindFailuresOnZ4AreExactlyTheIdentityCrossings) {
    const FiniteGroup z4 = cyclic(4);
    const auto r = check_product_decompositions(z4, GroupSubset(z4, {1, 3}));
    EXPECT_EQ(r.outcome, Outcome::fail);
    EXPECT_EQ(failing_identities(r), (std::set<std::string>{"sum prod:e", "sum prod:Se", "sum strong-sum:left"}));
}

TEST(Products, DifferenceKindNeverFails) {
    for (const auto& r : run_suite("products")) {
        for (const auto& w : r.witness) EXPECT_EQ(w.at("kind"), "sum") << r.instance.dump();
        EXPECT_NE(r.outcome, Outcome::skipped);
    }
}

TEST(Structure, SuitePasses) {
    const auto reports = run_suite("structure");
    EXPECT_EQ(reports.size(), 100u);
    for (const auto& r : reports) EXPECT_EQ(r.outcome, Outcome::pass) << r.witness.dump();
}

TEST(Formulas, Z6Example) {
    EXPECT_EQ(check_spectrum_formulas(cyclic(4), GroupSubset(cyclic(4), {1, 3})).outcome, Outcome::pass);
    const FiniteGroup z6 = cyclic(6);
    const auto r = check_spectrum_formulas(z6, GroupSubset(z6, {1, 5}));
    ASSERT_EQ(r.outcome, Outcome::fail);
    ASSERT_EQ(r.witness.size(), 1u);
    EXPECT_EQ(r.witness[0]["kind"], "sum");
    EXPECT_EQ(r.witness[0]["T"], "Se");
    EXPECT_EQ(r.witness[0]["direct"], "{[5]^1, [3]^1, [1]^3, [-1]^5, [-3]^2}");
    EXPECT_EQ(r.witness[0]["direct"], to_table(spectrum_dense_symmetric(mirror_dicayley(z6, GroupSubset(z6, {1, 5}), GroupSubset(z6, {0, 1, 5}), CayleyKind::sum))));
}

TEST(Formulas, FailuresAreConfinedToTheSumKind) {
    for (const auto& r : run_suite("formulas")) {
        for (const auto& w : r.witness) {
            EXPECT_EQ(w.at("kind"), "sum");
            EXPECT_NE(w.at("T"), "S");
        }
        EXPECT_EQ(r.outcome == Outcome::skipped, false);
    }
}

TEST(Crossed, SuitePassesAndHypothesisIsEnforced) {
    for (const auto& r : run_suite("crossed")) EXPECT_NE(r.outcome, Outcome::fail) << r.witness.dump();
    const FiniteGroup z4 = cyclic(4);
    EXPECT_EQ(check_crossed_nonisospectrality(z4, GroupSubset(z4, {1, 3})).outcome, Outcome::pass);
    EXPECT_EQ(check_crossed_nonisospectrality(z4, GroupSubset(z4, {0, 1})).outcome, Outcome::skipped);
    EXPECT_EQ(kind_of([&] { check_crossed_nonisospectrality(z4, GroupSubset(z4, {1})); }), ErrorKind::hypothesis);
}

TEST(Isospectrality, DecisionMethods) {
    const Graph c4 = cayley(cyclic(4), GroupSubset(cyclic(4), {1, 3}), CayleyKind::difference);
    const Graph c5 = cayley(cyclic(5), GroupSubset(cyclic(5), {1, 4}), CayleyKind::difference);
    const Graph k4 = cayley(cyclic(4), GroupSubset(cyclic(4), {1, 2, 3}), CayleyKind::difference);
    auto none = [] { return std::optional<Spectrum>(); };
    EXPECT_EQ(decide_isospectral(c4, c5, none, none).method, "order");
    EXPECT_EQ(decide_isospectral(c4, k4, none, none).method, "degree");
    EXPECT_FALSE(decide_isospectral(c4, k4, none, none).isospectral.value());
    EXPECT_FALSE(decide_isospectral(c4, c4, none, none).isospectral.has_value());
    const auto d = decide_isospectral(c4, c4, [&] { return base_spectrum(cyclic(4), GroupSubset(cyclic(4), {1, 3}), CayleyKind::difference); },
                                      [&] { return base_spectrum(cyclic(4), GroupSubset(cyclic(4), {1, 3}), CayleyKind::sum); });
    EXPECT_EQ(d.method, "spectrum");
    EXPECT_TRUE(d.isospectral.value());
}

TEST(Isospectrality, TransferExamples) {
    const FiniteGroup z3 = cyclic(3);
    EXPECT_EQ(check_isosp_transfer(z3, GroupSubset(z3, {1, 2})).outcome, Outcome::pass);
    const GroupSubset s1(cyclic(16), {1, 2, 4, 5, 9, 10, 12, 13});
    EXPECT_EQ(check_isosp_transfer(s1.group(), s1).outcome, Outcome::pass);

    // Over Z4 x Z3 the bases are isospectral but the S∪{e} mirrors are not.
    const FiniteRing r = make_ring("zpk:2^2*gf:3");
    const auto t = check_isosp_transfer(r.additive_group(), units(r));
    ASSERT_EQ(t.outcome, Outcome::fail);
    ASSERT_EQ(t.witness.size(), 1u);
    EXPECT_EQ(t.witness[0]["T"], "Se");
}

TEST(Isospectrality, CyclicVersusProductExample) {
    const GroupSubset s1(cyclic(16), {1, 2, 4, 5, 9, 10, 12, 13});
    const FiniteGroup z44 = make_group("prod:(cyclic:4,cyclic:4)");
    std::vector<Element> m;
    for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 1}, {2, 2}, {3, 1}, {3, 3}}) m.push_back(static_cast<Element>(4 * a + b));
    const GroupSubset s2(z44, m);
    const auto r = check_gen_isosp(s1.group(), s1, z44, s2);
    EXPECT_EQ(r.outcome, Outcome::pass) << r.witness.dump();
    EXPECT_EQ(r.details[0]["kind"], "difference");
    EXPECT_EQ(r.details[0]["twin_classes"], json::array({8, 0}));
    for (const auto& mirror : r.details[0]["mirrors"]) EXPECT_EQ(mirror["decision"]["isospectral"], true);

    const FiniteGroup z4 = cyclic(4), z6 = cyclic(6);
    EXPECT_EQ(check_gen_isosp(z4, GroupSubset(z4, {1, 3}), z6, GroupSubset(z6, {1, 5})).outcome, Outcome::pass);
}

TEST(Parity, Examples) {
    const FiniteGroup z4 = cyclic(4), z5 = cyclic(5);
    for (const auto& r : {check_parity_and_symmetry(z4, GroupSubset(z4, {1, 3})), check_parity_and_symmetry(z5, GroupSubset(z5, {1, 4})),
                          check_parity_and_symmetry(dihedral(4), GroupSubset(dihedral(4), {1, 3, 5, 7}))})
        EXPECT_EQ(r.outcome, Outcome::pass) << r.witness.dump();
    const auto r = check_parity_and_symmetry(z4, GroupSubset(z4, {1, 3}));
    EXPECT_EQ(r.details[0]["S"]["spectrum"], "{[4]^1, [0]^6, [-4]^1}");
    EXPECT_EQ(r.details[0]["Se"]["spectrum"], "{[5]^1, [1]^2, [-1]^4, [-3]^1}");
}

TEST(Parity, CayleyEvenOdd) {
    const FiniteGroup z4 = cyclic(4);
    EXPECT_EQ(check_cayley_even_odd(z4, GroupSubset(z4, {1, 3})).outcome, Outcome::pass);
    const GroupSubset dic(dicyclic(3), {2, 4, 8, 10, 3, 9});
    const auto r = check_cayley_even_odd(dic.group(), dic);
    EXPECT_EQ(r.outcome, Outcome::pass) << r.witness.dump();
    EXPECT_EQ(kind_of([&] { check_cayley_even_odd(z4, GroupSubset(z4, {0, 1, 3})); }), ErrorKind::hypothesis);
    EXPECT_EQ(kind_of([&] { check_cayley_even_odd(cyclic(5), GroupSubset(cyclic(5), {1, 4})); }), ErrorKind::hypothesis);
}

TEST(Integrality, ConjugacyClasses) {
    const auto classes = conjugacy_classes(symmetric(3));
    std::multiset<std::size_t> sizes;
    for (const auto& c : classes) sizes.insert(c.size());
    EXPECT_EQ(sizes, (std::multiset<std::size_t>{1, 2, 3}));
    std::size_t total = 0;
    for (const auto& c : conjugacy_classes(dicyclic(3))) total += c.size();
    EXPECT_EQ(total, 12u);
    EXPECT_EQ(conjugacy_classes(cyclic(6)).size(), 6u);
}

TEST(Integrality, CriterionSuitePasses) {
    const auto reports = run_suite("integrality");
    EXPECT_EQ(reports.size(), 260u);
    std::set<std::string> criteria;
    for (const auto& r : reports) {
        EXPECT_EQ(r.outcome, Outcome::pass) << r.witness.dump();
        criteria.insert(r.details["criterion"].get<std::string>());
    }
    EXPECT_EQ(criteria, (std::set<std::string>{"gcd classes", "boolean algebra", "eulerian"}));
    EXPECT_EQ(kind_of([] { check_integrality_criterion(symmetric(3), GroupSubset(symmetric(3), {1})); }), ErrorKind::hypothesis);
}

TEST(RingPairs, Z4TimesZ3) {
    const FiniteRing r = make_ring("zpk:2^2*gf:3");
    ASSERT_TRUE(has_even_odd_factors(r));
    const EvenOddPair p = build_even_odd_pair(r);

    EXPECT_TRUE(p.zero_pair.isospectral);
    EXPECT_TRUE(p.even_pair.isospectral);
    EXPECT_TRUE(isospectral(spectrum_dense_symmetric(p.even_pair.first), spec({{8, 1}, {4, 2}, {0, 18}, {-4, 2}, {-8, 1}})));
    EXPECT_TRUE(isospectral(spectrum_dense_symmetric(p.even_pair.second), p.even_pair.spectrum));
    EXPECT_TRUE(is_bipartite(p.even_pair.first));

    const Spectrum odd_diff = spec({{9, 1}, {5, 2}, {1, 6}, {-1, 12}, {-3, 2}, {-7, 1}});
    const Spectrum odd_sum = spec({{9, 1}, {5, 1}, {3, 1}, {1, 8}, {-1, 10}, {-3, 1}, {-5, 1}, {-7, 1}});
    EXPECT_TRUE(isospectral(spectrum_dense_symmetric(p.odd_pair.first), odd_diff));
    EXPECT_TRUE(isospectral(spectrum_dense_symmetric(p.odd_pair.second), odd_sum));
    EXPECT_TRUE(isospectral(p.odd_pair.spectrum, odd_diff));
    EXPECT_TRUE(isospectral(p.odd_pair.partner_spectrum, odd_sum));
    EXPECT_FALSE(p.odd_pair.isospectral);

    ASSERT_EQ(p.certification.outcome, Outcome::fail);
    ASSERT_EQ(p.certification.witness.size(), 1u);
    EXPECT_EQ(p.certification.witness[0]["assertion"], "odd pair isospectral");
}

TEST(RingPairs, Hypotheses) {
    EXPECT_FALSE(has_even_odd_factors(make_ring("gf:3")));
    EXPECT_FALSE(has_even_odd_factors(make_ring("zpk:2^2*gf:4")));
    EXPECT_EQ(kind_of([] { build_even_odd_pair(make_ring("gf:3")); }), ErrorKind::hypothesis);
    EXPECT_EQ(kind_of([] { iterated_pairs(make_ring("gf:5"), 1); }), ErrorKind::hypothesis);
    EXPECT_EQ(kind_of([] { iterated_pairs(make_ring("zpk:2^2*gf:3"), 8); }), ErrorKind::size_limit);
}

TEST(RingPairs, IteratedPairs) {
    const auto reports = iterated_pairs(make_ring("zpk:2^2*gf:3"), 3);
    ASSERT_EQ(reports.size(), 3u);
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto& r = reports[n - 1];
        EXPECT_EQ(r.outcome, Outcome::pass) << r.witness.dump();
        EXPECT_EQ(r.instance["vertices"], 24u << n);
    }
    // The even pair over R x Z2 is the starting point of the iteration.
    const FiniteRing ring = make_ring("zpk:2^2*gf:3");
    const GroupSubset ru = units(ring);
    const FiniteGroup g = direct_product(ring.additive_group(), cyclic(2));
    EXPECT_EQ(cayley(g, mirror_connection_set(g, ru, ru), CayleyKind::difference), build_even_odd_pair(ring).even_pair.first);

    // n = 1 against the dense eigensolver on the explicit 48-vertex graphs.
    const FiniteGroup g1 = direct_product(g, cyclic(2));
    std::vector<Element> m;
    for (Element x : ru.members())
        for (Element z = 0; z < 4; ++z) m.push_back(4 * x + z);
    const GroupSubset s(g1, m);
    const Spectrum a = spectrum_dense_symmetric(cayley(g1, s, CayleyKind::difference));
    EXPECT_TRUE(isospectral(a, spectrum_dense_symmetric(cayley(g1, s, CayleyKind::sum))));
    EXPECT_EQ(reports[0].details["spectrum"], to_table(a));
}

TEST(Suites, DeterministicAndSorted) {
    const auto a = run_suite("structure", 7), b = run_suite("structure", 7);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
    const auto c = run_suite("structure", 8);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) differs = differs || to_json(a[i]).dump() != to_json(c[i]).dump();
    EXPECT_TRUE(differs);
    const auto ex = run_suite("examples");
    EXPECT_TRUE(std::is_sorted(ex.begin(), ex.end(), [](const auto& x, const auto& y) { return x.claim_id < y.claim_id; }));
    for (const auto& r : ex) {
        if (r.outcome == Outcome::fail) {
            EXPECT_FALSE(r.witness.empty());
        }
        EXPECT_EQ(to_json(r)["seed"], default_seed);
    }
    EXPECT_EQ(kind_of([] { run_suite("nonsense"); }), ErrorKind::parse);
}
