#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "spectra_forge/algebra.hpp"
#include "spectra_forge/error.hpp"
#include "spectra_forge/finring.hpp"
#include "spectra_forge/graphs.hpp"
#include "spectra_forge/products.hpp"
#include "spectra_forge/spectra.hpp"

namespace spectra_forge {

using nlohmann::json;

enum class Outcome { pass, fail, skipped };

inline const char* to_string(Outcome o) {
    switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::skipped: return "skipped";
    }
    return "?";
}

inline constexpr std::uint64_t default_seed = 20240229;

/// Result of checking one claim on one instance. A failing report always
/// carries a witness; `details` holds supporting data either way.
struct VerificationReport {
    std::string claim_id;
    json instance;
    Outcome outcome = Outcome::pass;
    json witness;
    json details;
    std::uint64_t seed = default_seed;

    bool passed() const { return outcome == Outcome::pass; }
};

inline json to_json(const VerificationReport& r) {
    return {{"claim_id", r.claim_id}, {"instance", r.instance}, {"outcome", to_string(r.outcome)},
            {"witness", r.witness},   {"details", r.details},   {"seed", r.seed}};
}

inline json describe(const GroupSubset& s) {
    json members = json::array();
    for (Element x : s.members()) members.push_back(s.group().element_label(x));
    return members;
}

inline json describe(const FiniteGroup& g, const GroupSubset& s) { return {{"group", g.label()}, {"set", describe(s)}}; }

namespace detail {

/// Outcome from collected failures and the number of sub-checks actually run.
inline VerificationReport finish(std::string claim, json instance, json failures, json details, std::size_t checked,
                                 std::uint64_t seed) {
    VerificationReport r;
    r.claim_id = std::move(claim);
    r.instance = std::move(instance);
    r.details = std::move(details);
    r.seed = seed;
    if (!failures.empty()) {
        r.outcome = Outcome::fail;
        r.witness = std::move(failures);
    } else {
        r.outcome = checked > 0 ? Outcome::pass : Outcome::skipped;
    }
    return r;
}

inline std::optional<json> first_mismatch(const Graph& a, const Graph& b) {
    if (a.size() != b.size()) return json{{"reason", "vertex counts differ"}, {"lhs", a.size()}, {"rhs", b.size()}};
    for (std::size_t u = 0; u < a.size(); ++u)
        for (std::size_t v = 0; v < a.size(); ++v)
            if (a(u, v) != b(u, v))
                return json{{"u", u}, {"v", v}, {"u_label", a.labels()[u]}, {"v_label", a.labels()[v]}, {"lhs", a(u, v)}, {"rhs", b(u, v)}};
    return std::nullopt;
}

/// Checks a claimed spectrum against the graph it belongs to.
inline void validate_spectrum(const Graph& g, const Spectrum& s) {
    if (g.size() > self_validation_limit) return;
    if (g.is_undirected()) {
        if (!isospectral(s, spectrum_dense_symmetric(g)))
            fail(ErrorKind::check_failed, "character spectrum disagrees with the dense spectrum of the graph");
    } else {
        auto check = moment_check(s, moments(g, std::min<std::size_t>(g.size(), 12)), static_cast<double>(g.max_degree()));
        if (!check.pass) fail(ErrorKind::check_failed, "character spectrum fails the power-trace check");
    }
}

}  // namespace detail

/// Spectrum of X*(G,S) when a route exists: characters (abelian) or the dense
/// solver (undirected).
inline std::optional<Spectrum> base_spectrum(const FiniteGroup& g, const GroupSubset& s, CayleyKind kind) {
    if (g.is_abelian()) return spectrum_exact_abelian(g, s, kind);
    const Graph graph = cayley(g, s, kind);
    if (graph.is_undirected()) return spectrum_dense_symmetric(graph);
    return std::nullopt;
}

/// Spectrum of MX*(G;S,T) computed without the mirror formula: characters of
/// G x Z2 checked against the mirror graph itself, or the dense solver.
inline std::optional<Spectrum> mirror_spectrum(const FiniteGroup& g, const GroupSubset& s, const GroupSubset& t, CayleyKind kind) {
    const Graph graph = mirror_dicayley(g, s, t, kind);
    if (g.is_abelian()) {
        const FiniteGroup gz2 = direct_product(g, cyclic(2));
        Spectrum spec = spectrum_exact_abelian(gz2, mirror_connection_set(gz2, s, t), kind, false);
        detail::validate_spectrum(graph, spec);
        return spec;
    }
    if (graph.is_undirected()) return spectrum_dense_symmetric(graph);
    return std::nullopt;
}

struct IsoDecision {
    std::optional<bool> isospectral;
    std::string method;
};

/**
 * Decides isospectrality of two graphs. Differing orders or regular degrees
 * (the degree of a regular graph is its spectral radius) and differing power
 * traces certify non-isospectrality without spectra; otherwise the spectra
 * are compared when both are available.
 */
inline IsoDecision decide_isospectral(const Graph& a, const Graph& b, const std::function<std::optional<Spectrum>()>& spec_a,
                                      const std::function<std::optional<Spectrum>()>& spec_b) {
    if (a.size() != b.size()) return {false, "order"};
    if (a.regular_degree() && b.regular_degree() && *a.regular_degree() != *b.regular_degree()) return {false, "degree"};
    auto sa = spec_a(), sb = spec_b();
    if (sa && sb) return {isospectral(*sa, *sb), "spectrum"};
    const std::size_t K = std::min<std::size_t>(a.size(), 8);
    const auto ma = moments(a, K), mb = moments(b, K);
    for (std::size_t k = 0; k < K; ++k)
        if (ma[k] != mb[k]) return {false, "trace k=" + std::to_string(k + 1)};
    return {std::nullopt, "undetermined"};
}

inline json to_json(const IsoDecision& d) {
    json j{{"method", d.method}};
    j["isospectral"] = d.isospectral ? json(*d.isospectral) : json(nullptr);
    return j;
}

inline constexpr CayleyKind both_kinds[] = {CayleyKind::difference, CayleyKind::sum};
inline constexpr CrossSet cross_sets[] = {CrossSet::identity, CrossSet::connection, CrossSet::connection_with_identity};

// ---------------------------------------------------------------------------
// Structure

/**
 * Exact adjacency equality of the product decompositions of the mirror
 * graphs, for both kinds:
 *   MX(S,{e}) = X □ P2,  MX(S,S) = X × P2°,  MX(S,S∪{e}) = X ⊠ P2,
 *   X ⊕ P2 = MX(S,S),  P2 ⊕ X = MX(∅,S∪{e}),  X × P2° = X ⊕ P2.
 */
inline VerificationReport check_product_decompositions(const FiniteGroup& g, const GroupSubset& s, std::uint64_t seed = default_seed) {
    require_same_group(g, s.group());
    const GroupSubset e = identity_subset(g), se = with_identity(s), none(g, {});
    const Graph p2 = path2(false), p2l = path2(true);
    const std::size_t n = g.order();
    json failures = json::array();
    std::size_t checked = 0;
    for (CayleyKind kind : both_kinds) {
        const Graph x = cayley(g, s, kind);
        const Graph mx_s = mirror_dicayley(g, s, s, kind);
        const Graph x_direct_looped = named_product(x, p2l, ProductKind::direct);
        const Graph x_strong_sum = named_product(x, p2, ProductKind::strong_sum);
        const std::pair<const char*, std::pair<Graph, Graph>> identities[] = {
            {"prod:e", {mirror_dicayley(g, s, e, kind), named_product(x, p2, ProductKind::cartesian)}},
            {"prod:S", {mx_s, x_direct_looped}},
            {"prod:Se", {mirror_dicayley(g, s, se, kind), named_product(x, p2, ProductKind::strong)}},
            {"strong-sum:right", {x_strong_sum, mx_s}},
            {"strong-sum:left", {swap_factors(named_product(p2, x, ProductKind::strong_sum), 2, n), mirror_dicayley(g, none, se, kind)}},
            {"direct-looped", {x_direct_looped, x_strong_sum}},
        };
        for (const auto& [name, sides] : identities) {
            ++checked;
            if (auto m = detail::first_mismatch(sides.first, sides.second))
                failures.push_back({{"kind", to_string(kind)}, {"identity", name}, {"mismatch", *m}});
        }
    }
    return detail::finish("thm:prods", describe(g, s), std::move(failures), {{"identities", checked}}, checked, seed);
}

/// MX*(G;S,T) equals the Cayley (sum) graph over G x Z2 on (S x {0}) ∪ (T x {1}).
inline VerificationReport check_cayley_structure(const FiniteGroup& g, const GroupSubset& s, const GroupSubset& t,
                                                 std::uint64_t seed = default_seed) {
    require_same_group(g, s.group());
    require_same_group(g, t.group());
    const FiniteGroup gz2 = direct_product(g, cyclic(2));
    const GroupSubset joined = mirror_connection_set(gz2, s, t);
    json failures = json::array();
    for (CayleyKind kind : both_kinds)
        if (auto m = detail::first_mismatch(mirror_dicayley(g, s, t, kind), cayley(gz2, joined, kind)))
            failures.push_back({{"kind", to_string(kind)}, {"mismatch", *m}});
    json instance = describe(g, s);
    instance["T"] = describe(t);
    return detail::finish("prop:cayley-structure", std::move(instance), std::move(failures), json::object(), 2, seed);
}

// ---------------------------------------------------------------------------
// Spectra

/// The mirror formula against the directly computed mirror spectrum, for the
/// three choices of T and both kinds.
inline VerificationReport check_spectrum_formulas(const FiniteGroup& g, const GroupSubset& s, std::uint64_t seed = default_seed) {
    require_same_group(g, s.group());
    json failures = json::array(), details = json::array();
    std::size_t checked = 0;
    for (CayleyKind kind : both_kinds) {
        const auto base = base_spectrum(g, s, kind);
        for (CrossSet t : cross_sets) {
            const auto direct = base ? mirror_spectrum(g, s, cross_set(s, t), kind) : std::nullopt;
            json entry{{"kind", to_string(kind)}, {"T", to_string(t)}};
            if (!base || !direct) {
                entry["status"] = "no spectral route";
                details.push_back(entry);
                continue;
            }
            ++checked;
            const Spectrum formula = mdcg_spectrum_formula(*base, t, g.order());
            entry["formula"] = to_table(formula);
            entry["direct"] = to_table(*direct);
            if (!isospectral(formula, *direct, merge_tolerance)) failures.push_back(entry);
            details.push_back(entry);
        }
    }
    return detail::finish("prop:spec-bicayleys", describe(g, s), std::move(failures), std::move(details), checked, seed);
}

/// The three mirror graphs of (G,S) are pairwise non-isospectral (|S| >= 2).
/// Pairs involving S ∪ {e} are skipped when e ∈ S.
inline VerificationReport check_crossed_nonisospectrality(const FiniteGroup& g, const GroupSubset& s, std::uint64_t seed = default_seed) {
    require_same_group(g, s.group());
    if (s.size() < 2) fail(ErrorKind::hypothesis, "crossed non-isospectrality needs |S| >= 2");
    const bool identity_in_s = s.contains(g.identity());
    json failures = json::array(), details = json::array();
    std::size_t checked = 0, skipped = 0;
    for (CayleyKind kind : both_kinds) {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) {
                const CrossSet a = cross_sets[i], b = cross_sets[j];
                json entry{{"kind", to_string(kind)}, {"pair", std::string(to_string(a)) + "/" + to_string(b)}};
                if (identity_in_s && b == CrossSet::connection_with_identity) {
                    ++skipped;
                    entry["status"] = "skipped: e in S";
                    details.push_back(entry);
                    continue;
                }
                const GroupSubset ta = cross_set(s, a), tb = cross_set(s, b);
                const auto d = decide_isospectral(
                    mirror_dicayley(g, s, ta, kind), mirror_dicayley(g, s, tb, kind),
                    [&] { return mirror_spectrum(g, s, ta, kind); }, [&] { return mirror_spectrum(g, s, tb, kind); });
                entry["decision"] = to_json(d);
                if (d.isospectral == false) ++checked;
                else failures.push_back(entry);
                details.push_back(entry);
            }
    }
    auto r = detail::finish("prop:isospec-T-T'", describe(g, s), std::move(failures), std::move(details), checked, seed);
    if (r.outcome == Outcome::pass && skipped > 0) r.outcome = Outcome::skipped;
    return r;
}

/// For each T, MX(G;S,T) and MX+(G;S,T) are isospectral iff X(G,S) and X+(G,S) are.
inline VerificationReport check_isosp_transfer(const FiniteGroup& g, const GroupSubset& s, std::uint64_t seed = default_seed) {
    require_same_group(g, s.group());
    const auto base = decide_isospectral(
        cayley(g, s, CayleyKind::difference), cayley(g, s, CayleyKind::sum),
        [&] { return base_spectrum(g, s, CayleyKind::difference); }, [&] { return base_spectrum(g, s, CayleyKind::sum); });
    json failures = json::array(), details{{"base", to_json(base)}, {"mirrors", json::array()}};
    std::size_t checked = 0;
    for (CrossSet t : cross_sets) {
        const GroupSubset tt = cross_set(s, t);
        const auto d = decide_isospectral(
            mirror_dicayley(g, s, tt, CayleyKind::difference), mirror_dicayley(g, s, tt, CayleyKind::sum),
            [&] { return mirror_spectrum(g, s, tt, CayleyKind::difference); },
            [&] { return mirror_spectrum(g, s, tt, CayleyKind::sum); });
        json entry{{"T", to_string(t)}, {"decision", to_json(d)}};
        details["mirrors"].push_back(entry);
        if (!base.isospectral || !d.isospectral) continue;
        ++checked;
        if (*base.isospectral != *d.isospectral) {
            entry["base_isospectral"] = *base.isospectral;
            if (auto a = mirror_spectrum(g, s, tt, CayleyKind::difference)) entry["difference"] = to_table(*a);
            if (auto b = mirror_spectrum(g, s, tt, CayleyKind::sum)) entry["sum"] = to_table(*b);
            failures.push_back(entry);
        }
    }
    return detail::finish("thm:isosp-X-X+", describe(g, s), std::move(failures), std::move(details), checked, seed);
}

/// Same-kind, same-T mirror graphs over (G1,S1) and (G2,S2) are isospectral
/// iff the bases are; isospectral bases have |G1| = |G2| and |S1| = |S2|.
inline VerificationReport check_gen_isosp(const FiniteGroup& g1, const GroupSubset& s1, const FiniteGroup& g2, const GroupSubset& s2,
                                          std::uint64_t seed = default_seed) {
    require_same_group(g1, s1.group());
    require_same_group(g2, s2.group());
    json failures = json::array(), details = json::array();
    std::size_t checked = 0;
    for (CayleyKind kind : both_kinds) {
        const Graph x1 = cayley(g1, s1, kind), x2 = cayley(g2, s2, kind);
        const auto base = decide_isospectral(x1, x2, [&] { return base_spectrum(g1, s1, kind); }, [&] { return base_spectrum(g2, s2, kind); });
        json entry{{"kind", to_string(kind)},
                   {"base", to_json(base)},
                   {"twin_classes", {twin_classes(x1).size(), twin_classes(x2).size()}},
                   {"mirrors", json::array()}};
        if (base.isospectral == true) {
            ++checked;
            if (g1.order() != g2.order() || s1.size() != s2.size())
                failures.push_back({{"kind", to_string(kind)}, {"reason", "isospectral bases with different |G| or |S|"}});
        }
        for (CrossSet t : cross_sets) {
            const GroupSubset t1 = cross_set(s1, t), t2 = cross_set(s2, t);
            const auto d = decide_isospectral(
                mirror_dicayley(g1, s1, t1, kind), mirror_dicayley(g2, s2, t2, kind),
                [&] { return mirror_spectrum(g1, s1, t1, kind); }, [&] { return mirror_spectrum(g2, s2, t2, kind); });
            json m{{"T", to_string(t)}, {"decision", to_json(d)}};
            entry["mirrors"].push_back(m);
            if (!base.isospectral || !d.isospectral) continue;
            ++checked;
            if (*base.isospectral != *d.isospectral) {
                m["kind"] = to_string(kind);
                m["base_isospectral"] = *base.isospectral;
                if (auto a = mirror_spectrum(g1, s1, t1, kind)) m["first"] = to_table(*a);
                if (auto b = mirror_spectrum(g2, s2, t2, kind)) m["second"] = to_table(*b);
                failures.push_back(m);
            }
        }
        details.push_back(entry);
    }
    json instance{{"first", describe(g1, s1)}, {"second", describe(g2, s2)}};
    return detail::finish("thm:gen-isosp", std::move(instance), std::move(failures), std::move(details), checked, seed);
}

// ---------------------------------------------------------------------------
// Parity and symmetry

/**
 * Integrality transfer, the {e}-case parity flip, even S-case and odd
 * S∪{e}-case over an integral base, non-symmetry of the S∪{e}-case over a
 * symmetric base with e ∉ S, and symmetry of the {e}- and S-cases iff the
 * base is symmetric. Both kinds, whenever spectra are available.
 */
inline VerificationReport check_parity_and_symmetry(const FiniteGroup& g, const GroupSubset& s, std::uint64_t seed = default_seed) {
    require_same_group(g, s.group());
    const bool e_in_s = s.contains(g.identity());
    json failures = json::array(), details = json::array();
    std::size_t checked = 0;
    for (CayleyKind kind : both_kinds) {
        const auto base = base_spectrum(g, s, kind);
        if (!base) {
            details.push_back({{"kind", to_string(kind)}, {"status", "no spectral route"}});
            continue;
        }
        const SpectrumClass bc = classify(*base);
        std::vector<SpectrumClass> mc;
        json entry{{"kind", to_string(kind)}, {"base", to_json(*base)["class"]}};
        bool routed = true;
        for (CrossSet t : cross_sets) {
            const auto m = mirror_spectrum(g, s, cross_set(s, t), kind);
            if (!m) {
                routed = false;
                break;
            }
            mc.push_back(classify(*m));
            entry[to_string(t)] = {{"spectrum", to_table(*m)}, {"class", to_json(*m)["class"]}};
        }
        if (!routed) {
            entry["status"] = "no spectral route";
            details.push_back(entry);
            continue;
        }
        ++checked;
        auto require = [&](bool ok, const std::string& what) {
            if (!ok) failures.push_back({{"kind", to_string(kind)}, {"assertion", what}, {"data", entry}});
        };
        const SpectrumClass &ce = mc[0], &cs = mc[1], &cse = mc[2];
        for (std::size_t i = 0; i < 3; ++i)
            require(mc[i].integral == bc.integral, std::string("integrality transfer for T = ") + to_string(cross_sets[i]));
        if (bc.integral) {
            require((ce.parity == Parity::even) == (bc.parity == Parity::odd), "{e}-case even iff base odd");
            require((ce.parity == Parity::odd) == (bc.parity == Parity::even), "{e}-case odd iff base even");
            require(cs.parity == Parity::even, "S-case even");
            if (!e_in_s) require(cse.parity == Parity::odd, "S∪{e}-case odd");
        }
        if (bc.symmetric && !e_in_s) require(!cse.symmetric, "S∪{e}-case not symmetric");
        require(bc.symmetric == ce.symmetric, "{e}-case symmetric iff base symmetric");
        require(bc.symmetric == cs.symmetric, "S-case symmetric iff base symmetric");
        details.push_back(entry);
    }
    return detail::finish("cor:integral-symmetric", describe(g, s), std::move(failures), std::move(details), checked, seed);
}

/**
 * Even and odd Cayley graphs over G x Z2 from an integral base: MX(G;S,S)
 * and MX(G;S,S∪{e}) must equal Cayley graphs over G x Z2 and have even and
 * odd spectrum respectively (difference kind).
 */
inline VerificationReport check_cayley_even_odd(const FiniteGroup& g, const GroupSubset& s, std::uint64_t seed = default_seed) {
    require_same_group(g, s.group());
    if (s.contains(g.identity())) fail(ErrorKind::hypothesis, "even/odd construction needs e not in S");
    const auto base = base_spectrum(g, s, CayleyKind::difference);
    if (!base || !classify(*base).integral) fail(ErrorKind::hypothesis, "even/odd construction needs an integral base with a spectral route");
    const FiniteGroup gz2 = direct_product(g, cyclic(2));
    json failures = json::array(), details = json::object();
    const std::pair<CrossSet, Parity> wanted[] = {{CrossSet::connection, Parity::even}, {CrossSet::connection_with_identity, Parity::odd}};
    for (const auto& [t, parity] : wanted) {
        const GroupSubset tt = cross_set(s, t);
        const Graph mx = mirror_dicayley(g, s, tt, CayleyKind::difference);
        if (auto m = detail::first_mismatch(mx, cayley(gz2, mirror_connection_set(gz2, s, tt), CayleyKind::difference)))
            failures.push_back({{"T", to_string(t)}, {"mismatch", *m}});
        const auto spec = mirror_spectrum(g, s, tt, CayleyKind::difference);
        if (!spec) {
            failures.push_back({{"T", to_string(t)}, {"reason", "no spectral route"}});
            continue;
        }
        details[to_string(t)] = to_table(*spec);
        if (classify(*spec).parity != parity)
            failures.push_back({{"T", to_string(t)}, {"expected", to_string(parity)}, {"spectrum", to_table(*spec)}});
    }
    return detail::finish("thm:cayley-even-odd", describe(g, s), std::move(failures), std::move(details), 2, seed);
}

// ---------------------------------------------------------------------------
// Integrality criteria

inline std::vector<std::vector<Element>> conjugacy_classes(const FiniteGroup& g) {
    std::vector<std::vector<Element>> out;
    std::vector<char> seen(g.order(), 0);
    for (Element x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        std::vector<Element> cls;
        for (Element y = 0; y < g.order(); ++y) {
            const Element c = g.combine(g.combine(y, x), g.invert(y));
            if (!seen[c]) {
                seen[c] = 1;
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        out.push_back(std::move(cls));
    }
    return out;
}

/**
 * Integrality of X(G,S) against the structural criterion: union of gcd classes
 * on Z_n, membership in the Boolean algebra of cyclic subgroups on abelian
 * groups, and the Eulerian (power-closed) property for normal symmetric S.
 * The mirror graph MX(G;S,S) is checked to be integral exactly as well.
 */
inline VerificationReport check_integrality_criterion(const FiniteGroup& g, const GroupSubset& s, std::uint64_t seed = default_seed) {
    require_same_group(g, s.group());
    std::string criterion;
    bool predicted = false;
    if (is_standard_cyclic(g)) {
        criterion = "gcd classes";
        predicted = is_union_of_gcd_classes(s).is_union;
    } else if (g.is_abelian()) {
        criterion = "boolean algebra";
        predicted = boolean_algebra_member(g, s);
    } else {
        const auto p = subset_predicates(s);
        if (!p.normal || !p.symmetric) fail(ErrorKind::hypothesis, "non-abelian integrality criterion needs a normal symmetric set");
        criterion = "eulerian";
        predicted = p.eulerian;
    }
    const auto base = base_spectrum(g, s, CayleyKind::difference);
    const auto mirror = mirror_spectrum(g, s, s, CayleyKind::difference);
    if (!base || !mirror) fail(ErrorKind::hypothesis, "no spectral route for the integrality check");
    const bool integral = classify(*base).integral, mirror_integral = classify(*mirror).integral;
    json failures = json::array();
    if (integral != predicted || mirror_integral != predicted)
        failures.push_back({{"criterion", criterion},
                            {"predicted", predicted},
                            {"base_integral", integral},
                            {"mirror_integral", mirror_integral},
                            {"spectrum", to_table(*base)}});
    json details{{"criterion", criterion}, {"integral", integral}};
    return detail::finish("prop:integral-mdcgs", describe(g, s), std::move(failures), std::move(details), 1, seed);
}

// ---------------------------------------------------------------------------
// Rings: even/odd isospectral pairs

struct CertifiedPair {
    Graph first;   // MX(R;R*,T)
    Graph second;  // MX+(R;R*,T)
    Spectrum spectrum;
    Spectrum partner_spectrum;
    bool isospectral = false;
};

struct EvenOddPair {
    CertifiedPair zero_pair;
    CertifiedPair even_pair;
    CertifiedPair odd_pair;
    VerificationReport certification;
};

inline bool has_even_odd_factors(const FiniteRing& r) {
    bool even = false, odd = false;
    for (const auto& f : r.factors()) {
        even = even || f.size() == 2 * f.maximal_ideal_size();
        odd = odd || f.size() % 2 == 1;
    }
    return even && odd;
}

namespace detail {

inline bool safe_bipartite(const Graph& g) {
    if (!g.is_undirected() || g.has_loops()) return false;
    return is_bipartite(g);
}

inline CertifiedPair certified_pair(const FiniteRing& r, const GroupSubset& units, CrossSet t) {
    const FiniteGroup& g = r.additive_group();
    const GroupSubset tt = cross_set(units, t);
    CertifiedPair p{mirror_dicayley(g, units, tt, CayleyKind::difference), mirror_dicayley(g, units, tt, CayleyKind::sum),
                    *mirror_spectrum(g, units, tt, CayleyKind::difference), *mirror_spectrum(g, units, tt, CayleyKind::sum), false};
    p.isospectral = isospectral(p.spectrum, p.partner_spectrum);
    return p;
}

}  // namespace detail

/**
 * Builds the pairs {MX(R;R*,T), MX+(R;R*,T)} for T = {0}, R*, R* ∪ {0} and
 * certifies: the {0}-pair isospectral; the R*-pair isospectral, integral,
 * even, symmetric and bipartite; the R* ∪ {0}-pair isospectral, integral,
 * odd, non-symmetric and non-bipartite.
 */
inline EvenOddPair build_even_odd_pair(const FiniteRing& r, std::uint64_t seed = default_seed) {
    if (!has_even_odd_factors(r))
        fail(ErrorKind::hypothesis, "ring " + r.label() + " needs a local factor with |R_i| = 2|m_i| and a factor of odd size");
    const GroupSubset u = units(r);
    EvenOddPair out{detail::certified_pair(r, u, CrossSet::identity), detail::certified_pair(r, u, CrossSet::connection),
                    detail::certified_pair(r, u, CrossSet::connection_with_identity), {}};
    json failures = json::array(), details = json::object();
    auto require = [&](bool ok, const std::string& what, const CertifiedPair& p) {
        if (!ok) failures.push_back({{"assertion", what}, {"difference", to_table(p.spectrum)}, {"sum", to_table(p.partner_spectrum)}});
    };
    const std::pair<const char*, const CertifiedPair*> named[] = {{"zero", &out.zero_pair}, {"even", &out.even_pair}, {"odd", &out.odd_pair}};
    for (const auto& [name, p] : named) {
        const auto c1 = classify(p->spectrum), c2 = classify(p->partner_spectrum);
        details[name] = {{"difference", to_json(p->spectrum)},
                         {"sum", to_json(p->partner_spectrum)},
                         {"isospectral", p->isospectral},
                         {"bipartite", {detail::safe_bipartite(p->first), detail::safe_bipartite(p->second)}},
                         {"loops", {structure_report(p->first).loop_vertices.size(), structure_report(p->second).loop_vertices.size()}}};
        require(p->isospectral, std::string(name) + " pair isospectral", *p);
        require(c1.integral && c2.integral, std::string(name) + " pair integral", *p);
    }
    const auto& ev = out.even_pair;
    const auto e1 = classify(ev.spectrum), e2 = classify(ev.partner_spectrum);
    require(e1.parity == Parity::even && e2.parity == Parity::even, "even pair has even spectrum", ev);
    require(e1.symmetric && e2.symmetric, "even pair has symmetric spectrum", ev);
    require(detail::safe_bipartite(ev.first) && detail::safe_bipartite(ev.second), "even pair bipartite", ev);
    const auto& od = out.odd_pair;
    const auto o1 = classify(od.spectrum), o2 = classify(od.partner_spectrum);
    require(o1.parity == Parity::odd && o2.parity == Parity::odd, "odd pair has odd spectrum", od);
    require(!o1.symmetric && !o2.symmetric, "odd pair has non-symmetric spectrum", od);
    require(!detail::safe_bipartite(od.first) && !detail::safe_bipartite(od.second), "odd pair non-bipartite", od);
    out.certification = detail::finish("thm:main", {{"ring", r.label()}}, std::move(failures), std::move(details), 1, seed);
    return out;
}

inline constexpr std::size_t iterated_vertex_cap = 2048;

/**
 * For n = 1..n_max, X(G x Z2^n, S x Z2^n) and its sum graph are isospectral
 * with integral even spectrum. Here G = R x Z2 and S = R* x Z2 give the even
 * pair MX*(R; R*, R*) itself, so the graphs have 2|R| 2^n vertices.
 */
inline std::vector<VerificationReport> iterated_pairs(const FiniteRing& r, std::size_t n_max, std::uint64_t seed = default_seed) {
    if (!has_even_odd_factors(r))
        fail(ErrorKind::hypothesis, "ring " + r.label() + " needs a local factor with |R_i| = 2|m_i| and a factor of odd size");
    if (n_max > 16 || (r.size() << (n_max + 1)) > iterated_vertex_cap)
        fail(ErrorKind::size_limit, "iterated pair exceeds " + std::to_string(iterated_vertex_cap) + " vertices");
    const GroupSubset u = units(r);
    std::vector<VerificationReport> out;
    std::vector<FiniteGroup> factors{r.additive_group(), cyclic(2)};
    for (std::size_t n = 1; n <= n_max; ++n) {
        factors.push_back(cyclic(2));
        const FiniteGroup g = direct_product(factors);
        const std::size_t block = std::size_t{1} << (n + 1);
        std::vector<Element> members;
        for (Element x : u.members())
            for (std::size_t z = 0; z < block; ++z) members.push_back(static_cast<Element>(x * block + z));
        const GroupSubset s(g, members);
        const Spectrum a = spectrum_exact_abelian(g, s, CayleyKind::difference);
        const Spectrum b = spectrum_exact_abelian(g, s, CayleyKind::sum);
        const auto ca = classify(a), cb = classify(b);
        json failures = json::array();
        if (!isospectral(a, b)) failures.push_back({{"assertion", "isospectral"}, {"difference", to_table(a)}, {"sum", to_table(b)}});
        if (!(ca.integral && cb.integral && ca.parity == Parity::even && cb.parity == Parity::even))
            failures.push_back({{"assertion", "integral even"}, {"difference", to_table(a)}, {"sum", to_table(b)}});
        out.push_back(detail::finish("cor:iterated-pairs", {{"ring", r.label()}, {"n", n}, {"vertices", g.order()}},
                                     std::move(failures), {{"spectrum", to_table(a)}}, 1, seed));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Randomized suites

namespace detail {

inline FiniteGroup random_group(std::mt19937_64& rng, std::size_t max_order, bool abelian_only) {
    std::vector<std::string> pool;
    for (std::size_t n = 2; n <= max_order; ++n) pool.push_back("cyclic:" + std::to_string(n));
    const char* products[] = {"prod:(cyclic:2,cyclic:2)", "prod:(cyclic:2,cyclic:4)", "prod:(cyclic:3,cyclic:3)",
                              "prod:(cyclic:2,cyclic:6)", "prod:(cyclic:2,cyclic:2,cyclic:2)", "prod:(cyclic:4,cyclic:4)",
                              "prod:(cyclic:2,cyclic:8)", "prod:(cyclic:2,cyclic:10)", "prod:(cyclic:2,cyclic:2,cyclic:4)",
                              "prod:(cyclic:3,cyclic:6)", "prod:(cyclic:2,cyclic:2,cyclic:2,cyclic:2)", "prod:(cyclic:4,cyclic:8)",
                              "prod:(cyclic:2,cyclic:12)", "prod:(cyclic:6,cyclic:6)", "prod:(cyclic:2,cyclic:4,cyclic:4)"};
    for (const char* p : products) pool.push_back(p);
    if (!abelian_only) {
        for (std::size_t n = 3; 2 * n <= max_order; ++n) pool.push_back("dihedral:" + std::to_string(n));
        for (std::size_t n = 2; 4 * n <= max_order; ++n) pool.push_back("dicyclic:" + std::to_string(n));
        for (std::size_t n = 3; n <= 5; ++n)
            if (n == 3 ? 6 <= max_order : n == 4 ? 24 <= max_order : 120 <= max_order) pool.push_back("sym:" + std::to_string(n));
    }
    for (;;) {
        const auto& d = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        FiniteGroup g = make_group(d);
        if (g.order() <= max_order) return g;
    }
}

/// Random subset of size in [min_size, n - 1 or n], optionally avoiding e.
inline GroupSubset random_subset(std::mt19937_64& rng, const FiniteGroup& g, std::size_t min_size, bool avoid_identity) {
    std::vector<Element> pool;
    for (Element x = 0; x < g.order(); ++x)
        if (!(avoid_identity && x == g.identity())) pool.push_back(x);
    const std::size_t hi = std::max(min_size, pool.size() - (avoid_identity ? 0 : 1));
    const std::size_t k = std::uniform_int_distribution<std::size_t>(min_size, std::min(hi, pool.size()))(rng);
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(k);
    return {g, pool};
}

/// Random union of blocks drawn from a partition, each block with probability 1/2, non-empty.
inline GroupSubset random_union(std::mt19937_64& rng, const FiniteGroup& g, const std::vector<std::vector<Element>>& blocks) {
    std::vector<Element> m;
    while (m.empty()) {
        for (const auto& b : blocks)
            if (rng() & 1) m.insert(m.end(), b.begin(), b.end());
    }
    return {g, m};
}

/// Blocks of non-identity elements generating the same cyclic subgroup.
inline std::vector<std::vector<Element>> cyclic_generator_blocks(const FiniteGroup& g) {
    std::vector<std::vector<Element>> blocks;
    std::vector<char> seen(g.order(), 0);
    for (Element x = 0; x < g.order(); ++x) {
        if (seen[x] || x == g.identity()) continue;
        const std::size_t o = g.element_order(x);
        std::vector<Element> b;
        for (std::size_t k = 1; k < o; ++k)
            if (std::gcd(k, o) == 1) {
                const Element y = g.power(x, static_cast<i64>(k));
                if (!seen[y]) {
                    seen[y] = 1;
                    b.push_back(y);
                }
            }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

/// Non-identity classes merged with their inverse classes.
inline std::vector<std::vector<Element>> symmetric_class_blocks(const FiniteGroup& g) {
    std::vector<std::vector<Element>> blocks;
    std::vector<char> seen(g.order(), 0);
    for (const auto& c : conjugacy_classes(g)) {
        if (seen[c.front()] || (c.size() == 1 && c.front() == g.identity())) continue;
        std::vector<Element> b = c;
        for (Element x : c) seen[x] = 1;
        const Element inv = g.invert(c.front());
        if (!seen[inv])
            for (const auto& d : conjugacy_classes(g))
                if (std::binary_search(d.begin(), d.end(), inv)) {
                    for (Element x : d) seen[x] = 1;
                    b.insert(b.end(), d.begin(), d.end());
                }
        blocks.push_back(std::move(b));
    }
    return blocks;
}

inline FiniteGroup random_nonabelian(std::mt19937_64& rng, std::size_t max_order) {
    std::vector<std::string> pool;
    for (std::size_t n = 3; 2 * n <= max_order; ++n) pool.push_back("dihedral:" + std::to_string(n));
    for (std::size_t n = 2; 4 * n <= max_order; ++n) pool.push_back("dicyclic:" + std::to_string(n));
    pool.push_back("sym:3");
    if (max_order >= 24) pool.push_back("sym:4");
    if (max_order >= 120) pool.push_back("sym:5");
    return make_group(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
}

}  // namespace detail

inline constexpr std::string_view suite_names[] = {"products", "structure", "formulas", "crossed", "integrality", "examples"};

namespace detail {

inline void append(std::vector<VerificationReport>& out, VerificationReport r, std::size_t index) {
    r.instance["index"] = index;
    out.push_back(std::move(r));
}

inline std::vector<VerificationReport> examples_suite(std::uint64_t seed);

}  // namespace detail

/**
 * Runs a named suite with the given seed. Suites: products (100 random
 * (G,S)), structure (100 random (G,S,T)), formulas (100 random abelian (G,S)),
 * crossed (200 random (G,S) with |S| >= 2, e ∉ S), integrality (cyclic,
 * abelian and non-abelian normal sets), examples (named instances), all.
 * Reports are sorted by claim_id.
 */
inline std::vector<VerificationReport> run_suite(std::string_view name, std::uint64_t seed = default_seed) {
    std::vector<VerificationReport> out;
    if (name == "all") {
        for (auto s : suite_names) {
            auto part = run_suite(s, seed);
            out.insert(out.end(), part.begin(), part.end());
        }
    } else if (name == "products") {
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < 100; ++i) {
            const FiniteGroup g = detail::random_group(rng, 20, false);
            detail::append(out, check_product_decompositions(g, detail::random_subset(rng, g, 1, false), seed), i);
        }
    } else if (name == "structure") {
        std::mt19937_64 rng(seed + 1);
        for (std::size_t i = 0; i < 100; ++i) {
            const FiniteGroup g = detail::random_group(rng, 20, false);
            const GroupSubset s = detail::random_subset(rng, g, 1, false);
            const GroupSubset t = detail::random_subset(rng, g, 1, false);
            detail::append(out, check_cayley_structure(g, s, t, seed), i);
        }
    } else if (name == "formulas") {
        std::mt19937_64 rng(seed + 2);
        for (std::size_t i = 0; i < 100; ++i) {
            const FiniteGroup g = detail::random_group(rng, 20, true);
            detail::append(out, check_spectrum_formulas(g, detail::random_subset(rng, g, 1, true), seed), i);
        }
    } else if (name == "crossed") {
        std::mt19937_64 rng(seed + 3);
        for (std::size_t i = 0; i < 200; ++i) {
            FiniteGroup g = detail::random_group(rng, 20, false);
            while (g.order() < 3) g = detail::random_group(rng, 20, false);
            detail::append(out, check_crossed_nonisospectrality(g, detail::random_subset(rng, g, 2, true), seed), i);
        }
    } else if (name == "integrality") {
        std::mt19937_64 rng(seed + 4);
        std::size_t index = 0;
        for (std::size_t i = 0; i < 100; ++i) {
            const FiniteGroup g = cyclic(std::uniform_int_distribution<std::size_t>(2, 40)(rng));
            const GroupSubset s = i % 2 ? detail::random_union(rng, g, detail::cyclic_generator_blocks(g))
                                        : detail::random_subset(rng, g, 1, true);
            detail::append(out, check_integrality_criterion(g, s, seed), index++);
        }
        for (std::size_t i = 0; i < 100; ++i) {
            const FiniteGroup g = detail::random_group(rng, 48, true);
            const GroupSubset s = i % 2 ? detail::random_union(rng, g, detail::cyclic_generator_blocks(g))
                                        : detail::random_subset(rng, g, 1, true);
            detail::append(out, check_integrality_criterion(g, s, seed), index++);
        }
        for (std::size_t i = 0; i < 60; ++i) {
            const FiniteGroup g = detail::random_nonabelian(rng, 120);
            GroupSubset s = detail::random_union(rng, g, detail::symmetric_class_blocks(g));
            if (i % 2) {
                // Close under generators of each cyclic subgroup; stays normal and symmetric.
                std::vector<Element> m;
                for (const auto& b : detail::cyclic_generator_blocks(g))
                    if (std::any_of(b.begin(), b.end(), [&](Element x) { return s.contains(x); })) m.insert(m.end(), b.begin(), b.end());
                s = GroupSubset(g, m);
            }
            detail::append(out, check_integrality_criterion(g, s, seed), index++);
        }
    } else if (name == "examples") {
        out = detail::examples_suite(seed);
    } else {
        fail(ErrorKind::parse, "unknown suite '" + std::string(name) + "'");
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.claim_id < b.claim_id; });
    return out;
}

namespace detail {

inline GroupSubset subset_from(const FiniteGroup& g, std::initializer_list<Element> m) { return {g, std::vector<Element>(m)}; }

/// The connection set of the dicyclic example: a^k (k ≠ 0, n) together with ab and a^{n+1}b.
inline GroupSubset dicyclic_example_set(std::size_t n) {
    const FiniteGroup g = dicyclic(n);
    std::vector<Element> m;
    for (std::size_t k = 1; k < 2 * n; ++k)
        if (k != n) m.push_back(static_cast<Element>(2 * k));
    m.push_back(static_cast<Element>(2 * 1 + 1));
    m.push_back(static_cast<Element>(2 * (n + 1) + 1));
    return {g, m};
}

inline GroupSubset z16_example_set() { return subset_from(cyclic(16), {1, 2, 4, 5, 9, 10, 12, 13}); }

inline GroupSubset z4z4_example_set() {
    const FiniteGroup g = make_group("prod:(cyclic:4,cyclic:4)");
    std::vector<Element> m;
    for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 1}, {2, 2}, {3, 1}, {3, 3}})
        m.push_back(static_cast<Element>(4 * a + b));
    return {g, m};
}

inline std::vector<VerificationReport> examples_suite(std::uint64_t seed) {
    std::vector<VerificationReport> out;
    const FiniteGroup z4 = cyclic(4), z3 = cyclic(3), z5 = cyclic(5), z6 = cyclic(6);
    const GroupSubset z4u = subset_from(z4, {1, 3});
    const GroupSubset dic = dicyclic_example_set(3);
    const FiniteRing r = make_ring("zpk:2^2*gf:3");
    const GroupSubset ru = units(r);
    const GroupSubset s1 = z16_example_set(), s2 = z4z4_example_set();

    out.push_back(check_product_decompositions(z4, z4u, seed));
    out.push_back(check_product_decompositions(dic.group(), dic, seed));
    out.push_back(check_product_decompositions(z6, subset_from(z6, {1}), seed));
    out.push_back(check_cayley_structure(z4, z4u, subset_from(z4, {0}), seed));
    out.push_back(check_cayley_structure(r.additive_group(), ru, with_identity(ru), seed));
    out.push_back(check_spectrum_formulas(z4, z4u, seed));
    out.push_back(check_spectrum_formulas(s1.group(), s1, seed));
    out.push_back(check_crossed_nonisospectrality(z4, z4u, seed));
    out.push_back(check_crossed_nonisospectrality(r.additive_group(), ru, seed));
    out.push_back(check_isosp_transfer(r.additive_group(), ru, seed));
    out.push_back(check_isosp_transfer(z3, subset_from(z3, {1, 2}), seed));
    out.push_back(check_isosp_transfer(s1.group(), s1, seed));
    out.push_back(check_gen_isosp(s1.group(), s1, s2.group(), s2, seed));
    out.push_back(check_gen_isosp(z4, z4u, z4, z4u, seed));
    out.push_back(check_gen_isosp(z4, z4u, z6, subset_from(z6, {1, 5}), seed));
    out.push_back(check_parity_and_symmetry(z4, z4u, seed));
    const FiniteRing f16 = make_ring("gf:2^4");
    out.push_back(check_parity_and_symmetry(f16.additive_group(), power_residues(f16, 3), seed));
    out.push_back(check_parity_and_symmetry(z5, subset_from(z5, {1, 4}), seed));
    const FiniteGroup z2z4 = make_group("prod:(cyclic:2,cyclic:4)");
    std::vector<Element> nonzero(z2z4.order() - 1);
    std::iota(nonzero.begin(), nonzero.end(), Element{1});
    out.push_back(check_cayley_even_odd(z4, z4u, seed));
    out.push_back(check_cayley_even_odd(z2z4, GroupSubset(z2z4, nonzero), seed));
    out.push_back(check_cayley_even_odd(dic.group(), dic, seed));
    out.push_back(build_even_odd_pair(r, seed).certification);
    for (auto& rep : iterated_pairs(r, 3, seed)) out.push_back(std::move(rep));
    return out;
}

}  // namespace detail

}  // namespace spectra_forge
