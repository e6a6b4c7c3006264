#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spectra_forge/algebra.hpp"
#include "spectra_forge/error.hpp"
#include "spectra_forge/finring.hpp"
#include "spectra_forge/graphs.hpp"
#include "spectra_forge/number_theory.hpp"
#include "spectra_forge/products.hpp"

namespace spectra_forge {

using cplx = std::complex<double>;

inline constexpr double merge_tolerance = 1e-8;
inline constexpr double snap_tolerance = 1e-6;
inline constexpr double jacobi_off_norm = 1e-12;
inline constexpr int jacobi_max_sweeps = 100;

struct SpectrumEntry {
    cplx value;
    std::size_t multiplicity = 0;
};

/**
 * Multiset of eigenvalues. Values closer than the tolerance are merged;
 * entries are ordered by real part, then imaginary part, both descending.
 */
class Spectrum {
public:
    Spectrum() = default;

    explicit Spectrum(const std::vector<cplx>& values, double tol = merge_tolerance) : tol_(tol) {
        std::vector<SpectrumEntry> e;
        e.reserve(values.size());
        for (auto v : values) e.push_back({v, 1});
        merge(std::move(e));
    }

    explicit Spectrum(std::vector<SpectrumEntry> entries, double tol = merge_tolerance) : tol_(tol) { merge(std::move(entries)); }

    static Spectrum from_real(const std::vector<double>& values, double tol = merge_tolerance) {
        std::vector<cplx> v(values.begin(), values.end());
        return Spectrum(v, tol);
    }

    const std::vector<SpectrumEntry>& entries() const { return entries_; }
    double tolerance() const { return tol_; }
    std::size_t total() const {
        std::size_t t = 0;
        for (auto& e : entries_) t += e.multiplicity;
        return t;
    }
    /// Every eigenvalue repeated by multiplicity, in canonical order.
    std::vector<cplx> expanded() const {
        std::vector<cplx> out;
        for (auto& e : entries_) out.insert(out.end(), e.multiplicity, e.value);
        return out;
    }
    /// Multiplicity of the entry within tolerance of v (0 if absent).
    std::size_t multiplicity(cplx v) const {
        for (auto& e : entries_)
            if (std::abs(e.value - v) <= tol_) return e.multiplicity;
        return 0;
    }
    /// Eigenvalue with the largest real part.
    cplx principal() const {
        if (entries_.empty()) fail(ErrorKind::invalid_argument, "empty spectrum has no principal eigenvalue");
        return entries_.front().value;
    }

private:
    static cplx clean(cplx v) {
        double re = v.real(), im = v.imag();
        if (std::abs(im) < 1e-9) im = 0.0;
        if (std::abs(re - std::round(re)) < 1e-9) re = std::round(re);
        if (std::abs(im - std::round(im)) < 1e-9) im = std::round(im);
        return {re + 0.0, im + 0.0};  // normalises -0
    }

    void merge(std::vector<SpectrumEntry> raw) {
        std::sort(raw.begin(), raw.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
            if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
            return a.value.imag() > b.value.imag();
        });
        struct Cluster {
            cplx first, sum;
            std::size_t mult = 0, count = 0;
        };
        std::vector<Cluster> clusters;
        for (auto& e : raw) {
            if (e.multiplicity == 0) continue;
            Cluster* hit = nullptr;
            for (auto& c : clusters)
                if (std::abs(c.first - e.value) <= tol_) {
                    hit = &c;
                    break;
                }
            if (!hit) {
                clusters.push_back({e.value, {0, 0}, 0, 0});
                hit = &clusters.back();
            }
            hit->sum += e.value;
            hit->count += 1;
            hit->mult += e.multiplicity;
        }
        entries_.clear();
        for (auto& c : clusters) entries_.push_back({clean(c.sum / static_cast<double>(c.count)), c.mult});
        std::sort(entries_.begin(), entries_.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
            if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
            return a.value.imag() > b.value.imag();
        });
    }

    double tol_ = merge_tolerance;
    std::vector<SpectrumEntry> entries_;
};

/// Multiset equality by greedy nearest pairing.
inline bool isospectral(const Spectrum& a, const Spectrum& b, double tol = merge_tolerance) {
    auto x = a.expanded(), y = b.expanded();
    if (x.size() != y.size()) return false;
    std::vector<char> used(y.size(), 0);
    for (auto v : x) {
        std::size_t best = y.size();
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (used[j]) continue;
            double dj = std::abs(v - y[j]);
            if (dj < dist) {
                dist = dj;
                best = j;
            }
        }
        if (best == y.size() || dist > tol) return false;
        used[best] = 1;
    }
    return true;
}

inline Spectrum shifted(const Spectrum& s, cplx c) {
    std::vector<SpectrumEntry> e = s.entries();
    for (auto& x : e) x.value += c;
    return Spectrum(std::move(e), s.tolerance());
}

inline Spectrum negated(const Spectrum& s) {
    std::vector<SpectrumEntry> e = s.entries();
    for (auto& x : e) x.value = -x.value;
    return Spectrum(std::move(e), s.tolerance());
}

/// Spectrum of the graph with a loop added at every vertex.
inline Spectrum looped_spectrum(const Spectrum& s) { return shifted(s, 1.0); }

// ---------------------------------------------------------------------------
// Formatting

inline std::string format_number(double x) {
    if (std::abs(x - std::round(x)) < snap_tolerance) {
        long long r = std::llround(x);
        return std::to_string(r);
    }
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << x;
    std::string s = os.str();
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

inline std::string format_value(cplx v) {
    const bool has_im = std::abs(v.imag()) >= snap_tolerance;
    const bool has_re = std::abs(v.real()) >= snap_tolerance;
    if (!has_im) return format_number(v.real());
    auto imag_part = [](double im) {
        if (std::abs(im - 1.0) < snap_tolerance) return std::string("i");
        if (std::abs(im + 1.0) < snap_tolerance) return std::string("-i");
        return format_number(im) + "i";
    };
    if (!has_re) return imag_part(v.imag());
    std::string im = imag_part(v.imag());
    if (im[0] != '-') im = "+" + im;
    return format_number(v.real()) + im;
}

/// `{[2]^1, [0]^2, [-2]^1}`
inline std::string to_table(const Spectrum& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.entries().size(); ++i) {
        const auto& e = s.entries()[i];
        out += (i ? ", [" : "[") + format_value(e.value) + "]^" + std::to_string(e.multiplicity);
    }
    return out + "}";
}

inline std::ostream& operator<<(std::ostream& os, const Spectrum& s) { return os << to_table(s); }

inline std::string to_csv(const Spectrum& s) {
    std::ostringstream os;
    os << "re,im,multiplicity\n";
    os << std::setprecision(12);
    for (const auto& e : s.entries()) os << e.value.real() << "," << e.value.imag() << "," << e.multiplicity << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Classification

enum class Parity { even, odd, mixed, non_integral };

inline const char* to_string(Parity p) {
    switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::mixed: return "mixed";
    case Parity::non_integral: return "non-integral";
    }
    return "?";
}

struct SpectrumClass {
    bool integral = false;
    Parity parity = Parity::non_integral;
    bool symmetric = false;
    /// m(λ) = m(-λ) for every eigenvalue λ other than the principal one.
    bool almost_symmetric = false;
    double principal_eigenvalue = 0.0;
    /// -λ1 is an eigenvalue (for a k-regular graph λ1 = k).
    bool bipartite_criterion = false;
};

inline SpectrumClass classify(const Spectrum& s, double snap_tol = snap_tolerance) {
    SpectrumClass c;
    if (s.entries().empty()) return c;
    c.integral = std::all_of(s.entries().begin(), s.entries().end(), [&](const SpectrumEntry& e) {
        return std::abs(e.value.imag()) <= snap_tol && std::abs(e.value.real() - std::round(e.value.real())) <= snap_tol;
    });
    if (c.integral) {
        bool any_even = false, any_odd = false;
        for (const auto& e : s.entries()) {
            const long long v = std::llround(e.value.real());
            (v % 2 == 0 ? any_even : any_odd) = true;
        }
        c.parity = any_even && any_odd ? Parity::mixed : (any_even ? Parity::even : Parity::odd);
    }
    c.symmetric = isospectral(s, negated(s), s.tolerance());
    const cplx lambda1 = s.principal();
    c.principal_eigenvalue = lambda1.real();
    c.almost_symmetric = std::all_of(s.entries().begin(), s.entries().end(), [&](const SpectrumEntry& e) {
        if (std::abs(e.value - lambda1) <= s.tolerance()) return true;
        return e.multiplicity == s.multiplicity(-e.value);
    });
    c.bipartite_criterion = s.multiplicity(-lambda1) > 0;
    return c;
}

inline nlohmann::json to_json(const Spectrum& s) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : s.entries())
        entries.push_back({{"re", e.value.real()}, {"im", e.value.imag()}, {"mult", e.multiplicity}});
    const auto c = classify(s);
    return {{"entries", entries},
            {"class",
             {{"integral", c.integral},
              {"parity", to_string(c.parity)},
              {"symmetric", c.symmetric},
              {"almost_symmetric", c.almost_symmetric}}}};
}

/// |λ| <= d for every eigenvalue (holds for any graph of maximum degree d).
inline bool within_degree_bound(const Spectrum& s, double d, double tol = snap_tolerance) {
    return std::all_of(s.entries().begin(), s.entries().end(), [&](const SpectrumEntry& e) { return std::abs(e.value) <= d + tol; });
}

// ---------------------------------------------------------------------------
// Dense symmetric eigenvalues

/// Cyclic Jacobi rotations on a dense symmetric matrix (row-major, n x n).
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
    if (a.size() != n * n) fail(ErrorKind::invalid_argument, "matrix size mismatch");
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += at(i, j) * at(i, j);
        return std::sqrt(s);
    };
    int sweep = 0;
    while (off_norm() >= jacobi_off_norm) {
        if (++sweep > jacobi_max_sweeps) fail(ErrorKind::check_failed, "Jacobi iteration did not converge");
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                at(p, q) = at(q, p) = 0.0;
            }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
    return eig;
}

/// Spectrum of an undirected graph (loops allowed) by Jacobi rotations, checked
/// against the trace and the number of arcs.
inline Spectrum spectrum_dense_symmetric(const Graph& g) {
    if (!g.is_undirected()) fail(ErrorKind::hypothesis, "dense symmetric eigensolver needs a symmetric adjacency matrix");
    const std::size_t n = g.size();
    std::vector<double> a(g.adjacency().begin(), g.adjacency().end());
    auto eig = jacobi_eigenvalues(std::move(a), n);
    double trace = 0.0, sum = 0.0, sum_sq = 0.0;
    for (std::size_t v = 0; v < n; ++v) trace += g(v, v);
    for (double x : eig) {
        sum += x;
        sum_sq += x * x;
    }
    if (std::abs(sum - trace) > 1e-6 || std::abs(sum_sq - static_cast<double>(g.arc_count())) > 1e-6)
        fail(ErrorKind::check_failed, "eigenvalues disagree with trace invariants");
    return Spectrum::from_real(eig);
}

// ---------------------------------------------------------------------------
// Power traces

/// tr(A^k) for k = 1..K.
inline std::vector<double> moments(const Graph& g, std::size_t K) {
    const std::size_t n = g.size();
    if (K > n) fail(ErrorKind::invalid_argument, "moment order exceeds vertex count");
    std::vector<__int128> power(n * n), next(n * n);
    for (std::size_t i = 0; i < n * n; ++i) power[i] = g.adjacency()[i];
    std::vector<double> out;
    for (std::size_t k = 1; k <= K; ++k) {
        if (k > 1) {
            std::fill(next.begin(), next.end(), 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    const __int128 pij = power[i * n + j];
                    if (pij == 0) continue;
                    for (std::size_t l = 0; l < n; ++l)
                        if (g.adjacency()[j * n + l]) next[i * n + l] += pij;
                }
            std::swap(power, next);
        }
        __int128 tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += power[i * n + i];
        out.push_back(static_cast<double>(tr));
    }
    return out;
}

struct MomentCheck {
    bool pass = true;
    std::size_t worst_order = 0;
    double worst_residual = 0.0;  ///< |tr(A^k) - Σ m λ^k| / (n d^k), maximised over k
};

/// Compares Σ m λ^k with tr(A^k); passes iff the gap is at most 1e-6·n·d^k for all k.
inline MomentCheck moment_check(const Spectrum& s, const std::vector<double>& traces, double max_degree) {
    MomentCheck r;
    const double n = static_cast<double>(s.total());
    const double d = std::max(max_degree, 1.0);
    for (std::size_t k = 1; k <= traces.size(); ++k) {
        cplx sum{0, 0};
        for (const auto& e : s.entries()) sum += static_cast<double>(e.multiplicity) * std::pow(e.value, static_cast<int>(k));
        const double scale = n * std::pow(d, static_cast<double>(k));
        const double gap = std::abs(sum - cplx(traces[k - 1], 0.0));
        const double rel = gap / scale;
        if (rel > r.worst_residual) {
            r.worst_residual = rel;
            r.worst_order = k;
        }
        if (gap > 1e-6 * scale) r.pass = false;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Abelian Cayley graphs via characters

inline constexpr std::size_t self_validation_limit = 256;

/**
 * Eigenvalues of X(G,S) or X+(G,S) for abelian G. The difference kind gives
 * {χ(S)}. For the sum kind a real character contributes χ(S) and each pair
 * {χ, conj χ} contributes +|χ(S)| and -|χ(S)|.
 *
 * With `validate` set and |G| <= 256 the result is checked against the power
 * traces (difference kind) or the dense eigensolver (sum kind).
 */
inline Spectrum spectrum_exact_abelian(const FiniteGroup& g, const GroupSubset& s, CayleyKind kind, bool validate = true) {
    require_same_group(g, s.group());
    if (!g.is_abelian()) fail(ErrorKind::hypothesis, "character spectrum needs an abelian group, got " + g.label());
    const std::size_t n = g.order();
    const auto& d = g.invariant_factors();
    const std::uint32_t L = g.exponent();
    std::vector<cplx> roots(L);
    for (std::uint32_t k = 0; k < L; ++k) roots[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / L);
    std::vector<std::vector<std::uint64_t>> weighted;  // coordinate j of member, scaled by L / d_j
    for (Element x : s.members()) {
        auto c = g.coordinates(x);
        std::vector<std::uint64_t> w(c.size());
        for (std::size_t j = 0; j < c.size(); ++j) w[j] = std::uint64_t{c[j]} * (L / d[j]);
        weighted.push_back(std::move(w));
    }

    auto chars = characters(g);
    std::vector<cplx> chi_s(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx sum{0, 0};
        for (const auto& w : weighted) {
            std::uint64_t num = 0;
            for (std::size_t j = 0; j < w.size(); ++j) num += w[j] * chars[i].exponents[j];
            sum += roots[num % L];
        }
        chi_s[i] = sum;
    }

    std::vector<cplx> values;
    if (kind == CayleyKind::difference) {
        values = chi_s;
    } else {
        // Index of conj(χ): exponents negated.
        auto index_of = [&](const std::vector<std::uint32_t>& a) {
            std::size_t idx = 0;
            for (std::size_t j = 0; j < d.size(); ++j) idx = idx * d[j] + a[j];
            return idx;
        };
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::uint32_t> neg(d.size());
            for (std::size_t j = 0; j < d.size(); ++j) neg[j] = (d[j] - chars[i].exponents[j]) % d[j];
            const std::size_t c = index_of(neg);
            if (c == i) {
                values.push_back(chi_s[i].real());
            } else if (i < c) {
                values.push_back(std::abs(chi_s[i]));
                values.push_back(-std::abs(chi_s[i]));
            }
        }
    }
    Spectrum spec(values);

    if (validate && n <= self_validation_limit) {
        const Graph graph = cayley(g, s, kind);
        if (kind == CayleyKind::difference) {
            auto check = moment_check(spec, moments(graph, std::min<std::size_t>(n, 12)), static_cast<double>(graph.max_degree()));
            if (!check.pass)
                fail(ErrorKind::check_failed, "character spectrum of " + g.label() + " fails the power-trace check at k=" +
                                                  std::to_string(check.worst_order));
        } else if (!isospectral(spec, spectrum_dense_symmetric(graph), merge_tolerance)) {
            fail(ErrorKind::check_failed, "sum-graph multiplicities from character pairing disagree with the dense spectrum on " + g.label());
        }
    }
    return spec;
}

/// Spectrum of an undirected graph, or of a directed one when no route exists: error.
inline Spectrum graph_spectrum(const Graph& g) { return spectrum_dense_symmetric(g); }

/// Characters for abelian groups, dense eigensolver for symmetric adjacency otherwise.
inline Spectrum cayley_spectrum(const FiniteGroup& g, const GroupSubset& s, CayleyKind kind) {
    if (g.is_abelian()) return spectrum_exact_abelian(g, s, kind);
    const Graph graph = cayley(g, s, kind);
    if (!graph.is_undirected())
        fail(ErrorKind::hypothesis, "directed Cayley graph over the non-abelian group " + g.label() + " has no spectral route");
    return spectrum_dense_symmetric(graph);
}

// ---------------------------------------------------------------------------
// Closed forms

enum class CrossSet { identity, connection, connection_with_identity };

inline const char* to_string(CrossSet t) {
    switch (t) {
    case CrossSet::identity: return "e";
    case CrossSet::connection: return "S";
    case CrossSet::connection_with_identity: return "Se";
    }
    return "?";
}

inline GroupSubset cross_set(const GroupSubset& s, CrossSet t) {
    switch (t) {
    case CrossSet::identity: return identity_subset(s.group());
    case CrossSet::connection: return s;
    case CrossSet::connection_with_identity: return with_identity(s);
    }
    fail(ErrorKind::invalid_argument, "unknown cross set");
}

/// Mirror graph spectra from the base: {λ±1}; {2λ} ∪ {0^n}; {2λ+1} ∪ {-1^n}.
inline Spectrum mdcg_spectrum_formula(const Spectrum& base, CrossSet t, std::size_t n) {
    if (base.total() != n)
        fail(ErrorKind::invalid_argument, "base multiplicities sum to " + std::to_string(base.total()) + ", expected " + std::to_string(n));
    std::vector<SpectrumEntry> out;
    for (const auto& e : base.entries()) {
        switch (t) {
        case CrossSet::identity:
            out.push_back({e.value + 1.0, e.multiplicity});
            out.push_back({e.value - 1.0, e.multiplicity});
            break;
        case CrossSet::connection:
            out.push_back({2.0 * e.value, e.multiplicity});
            break;
        case CrossSet::connection_with_identity:
            out.push_back({2.0 * e.value + 1.0, e.multiplicity});
            break;
        }
    }
    if (t == CrossSet::connection) out.push_back({0.0, n});
    if (t == CrossSet::connection_with_identity) out.push_back({-1.0, n});
    return Spectrum(std::move(out), base.tolerance());
}

/// λ+μ, λμ, λ+μ+λμ and λ+λμ with multiplied multiplicities.
inline Spectrum product_spectrum_formula(const Spectrum& a, const Spectrum& b, ProductKind kind) {
    std::vector<SpectrumEntry> out;
    for (const auto& x : a.entries())
        for (const auto& y : b.entries()) {
            cplx v;
            switch (kind) {
            case ProductKind::cartesian: v = x.value + y.value; break;
            case ProductKind::direct: v = x.value * y.value; break;
            case ProductKind::strong: v = x.value + y.value + x.value * y.value; break;
            case ProductKind::strong_sum: v = x.value + x.value * y.value; break;
            }
            out.push_back({v, x.multiplicity * y.multiplicity});
        }
    return Spectrum(std::move(out), a.tolerance());
}

namespace detail {
inline void require_local_parameters(i64 r, i64 m) {
    if (r < 2 || m < 1 || r % m != 0 || !prime_power(r) || (r / m > 1 && !prime_power(r / m)) || r / m < 2)
        fail(ErrorKind::invalid_argument, "invalid local ring parameters (r, m) = (" + std::to_string(r) + ", " + std::to_string(m) + ")");
}
}  // namespace detail

/// Unitary Cayley graph of a local ring of size r with maximal ideal of size m.
/// The sum kind differs only for odd r.
inline Spectrum local_ring_unitary_spectrum(i64 r, i64 m, CayleyKind kind) {
    detail::require_local_parameters(r, m);
    const i64 q = r / m;
    std::vector<SpectrumEntry> e;
    auto add = [&](i64 v, i64 mult) {
        if (mult > 0) e.push_back({static_cast<double>(v), static_cast<std::size_t>(mult)});
    };
    if (kind == CayleyKind::difference || r % 2 == 0) {
        add(r - m, 1);
        add(0, q * (m - 1));
        add(-m, q - 1);
    } else {
        add(r - m, 1);
        add(m, (r - m) / (2 * m));
        add(0, q * (m - 1));
        add(-m, (r - m) / (2 * m));
    }
    return Spectrum(std::move(e));
}

/**
 * Spectra of the three mirror graphs over an odd local ring with T in
 * {{0}, R*, R* ∪ {0}}. Apart from the sum kind with T = R* ∪ {0}, these come
 * from the unitary spectrum through the mirror formula, which for the
 * difference kind and T = R* ∪ {0} gives
 * {[2(r-m)+1]^1, [1]^{r-r/m}, [-2m+1]^{r/m-1}, [-1]^r}.
 *
 * For the sum kind the crossing arcs of T = R* ∪ {0} join x to -x, so the
 * adjacency splits as spec(2A+ + P) ∪ spec(-P) with P the negation
 * permutation. With q = r/m and h = (q-1)/2 this is
 * {[2(r-m)+1]^1, [2m-1]^h, [1]^{h+r-q}, [-2m+1]^h, [-1]^{h+1+r-q}}.
 */
inline Spectrum mdcg_local_ring_spectrum(i64 r, i64 m, CrossSet t, CayleyKind kind) {
    if (r % 2 == 0) fail(ErrorKind::hypothesis, "closed forms need a local ring of odd size");
    if (kind == CayleyKind::difference || t != CrossSet::connection_with_identity)
        return mdcg_spectrum_formula(local_ring_unitary_spectrum(r, m, kind), t, static_cast<std::size_t>(r));
    detail::require_local_parameters(r, m);
    const i64 q = r / m, h = (q - 1) / 2;
    std::vector<SpectrumEntry> e;
    auto add = [&](i64 v, i64 mult) {
        if (mult > 0) e.push_back({static_cast<double>(v), static_cast<std::size_t>(mult)});
    };
    add(2 * (r - m) + 1, 1);
    add(2 * m - 1, h);
    add(1, h + r - q);
    add(-2 * m + 1, h);
    add(-1, h + 1 + r - q);
    return Spectrum(std::move(e));
}

/**
 * Spectrum of the GP-graph Γ(k, q) (or Γ+(k, q)) for a semiprimitive pair with
 * q = p^m, m even, n = (q-1)/k:
 *   {[n]^1, [λ1]^n, [λ2]^{(k-1)n}},
 *   λ1 = ((-1)^{m/2t+1} (k-1) p^{m/2} - 1) / k,  λ2 = -((-1)^{m/2t+1} p^{m/2} + 1) / k,
 * with t the least j such that k | p^j + 1. For odd q the sum graph splits
 * each of λ1, λ2 into ±λ with half the multiplicity.
 */
inline Spectrum semiprimitive_gp_spectrum(i64 k, i64 q, CayleyKind kind = CayleyKind::difference) {
    const auto sp = semiprimitive_check(k, q);
    if (!sp.semiprimitive || !sp.t)
        fail(ErrorKind::hypothesis, "(" + std::to_string(k) + ", " + std::to_string(q) + ") is not a semiprimitive pair");
    const auto [p, m] = *prime_power(q);
    if (m % 2 != 0) fail(ErrorKind::hypothesis, "semiprimitive closed form needs q = p^m with m even");
    const i64 n = (q - 1) / k;
    const i64 root = ipow(p, m / 2);
    const int e = m / (2 * *sp.t) + 1;
    const i64 sign = e % 2 == 0 ? 1 : -1;
    const i64 num1 = sign * (k - 1) * root - 1, num2 = -(sign * root + 1);
    if (num1 % k != 0 || num2 % k != 0) fail(ErrorKind::check_failed, "semiprimitive eigenvalues are not integers");
    const double l1 = static_cast<double>(num1 / k), l2 = static_cast<double>(num2 / k);
    std::vector<SpectrumEntry> out{{static_cast<double>(n), 1}};
    if (kind == CayleyKind::difference || q % 2 == 0) {
        out.push_back({l1, static_cast<std::size_t>(n)});
        out.push_back({l2, static_cast<std::size_t>((k - 1) * n)});
    } else {
        if (n % 2 != 0) fail(ErrorKind::check_failed, "odd n in the split sum spectrum");
        for (double sgn : {1.0, -1.0}) {
            out.push_back({sgn * l1, static_cast<std::size_t>(n / 2)});
            out.push_back({sgn * l2, static_cast<std::size_t>((k - 1) * n / 2)});
        }
    }
    return Spectrum(std::move(out));
}

/// Spectrum of the Hamming graph H(b, q).
inline Spectrum hamming_spectrum(int b, i64 q) {
    if (b < 1 || q < 2) fail(ErrorKind::invalid_argument, "Hamming graph needs b >= 1 and q >= 2");
    std::vector<SpectrumEntry> e;
    for (int l = 0; l <= b; ++l)
        e.push_back({static_cast<double>(l * q - b), static_cast<std::size_t>(binomial(b, l) * ipow(q - 1, b - l))});
    return Spectrum(std::move(e));
}

/// Spectrum of the circulant X(Z_n, ∪_{d∈D} S_n(d)): λ_r = Σ_d c(r, n/d).
inline Spectrum gcd_graph_spectrum(i64 n, const std::vector<i64>& divisors_d) {
    if (n < 2) fail(ErrorKind::invalid_argument, "gcd graph needs n >= 2");
    for (i64 d : divisors_d)
        if (d < 1 || d >= n || n % d != 0)
            fail(ErrorKind::invalid_argument, std::to_string(d) + " is not a proper divisor of " + std::to_string(n));
    std::vector<cplx> values;
    for (i64 r = 0; r < n; ++r) {
        i64 lambda = 0;
        for (i64 d : divisors_d) lambda += ramanujan_sum(r, n / d);
        values.push_back(static_cast<double>(lambda));
    }
    return Spectrum(values);
}

}  // namespace spectra_forge
