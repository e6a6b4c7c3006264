#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spectra_forge/algebra.hpp"
#include "spectra_forge/error.hpp"
#include "spectra_forge/number_theory.hpp"

namespace spectra_forge {

// ---------------------------------------------------------------------------
// Polynomials over Z_p, coefficients stored low degree first.

namespace poly {

using Poly = std::vector<i64>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly sub(Poly a, const Poly& b, i64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = mod(a[i] - b[i], p);
    trim(a);
    return a;
}

inline i64 inverse_mod(i64 a, i64 p) {
    // p is prime: a^(p-2)
    i64 r = 1, b = mod(a, p);
    for (i64 e = p - 2; e > 0; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return r;
}

inline Poly rem(Poly a, const Poly& b, i64 p) {
    trim(a);
    if (b.empty()) fail(ErrorKind::invalid_argument, "polynomial division by zero");
    const i64 lead_inv = inverse_mod(b.back(), p);
    while (a.size() >= b.size()) {
        i64 c = a.back() * lead_inv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = mod(a[shift + i] - c * b[i], p);
        trim(a);
    }
    return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& f, i64 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return rem(std::move(c), f, p);
}

inline Poly gcd(Poly a, Poly b, i64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// x^(p^k) mod f.
inline Poly frobenius_power(const Poly& f, i64 p, int k) {
    Poly x = rem({0, 1}, f, p);
    for (int step = 0; step < k; ++step) {
        Poly result{1}, base = x;
        for (i64 e = p; e > 0; e >>= 1) {
            if (e & 1) result = mulmod(result, base, f, p);
            base = mulmod(base, base, f, p);
        }
        x = result;
    }
    return x;
}

/// Rabin's test for a monic polynomial of degree m over F_p.
inline bool is_irreducible(const Poly& f, i64 p) {
    const int m = static_cast<int>(f.size()) - 1;
    if (m < 1) return false;
    if (m == 1) return true;
    if (sub(frobenius_power(f, p, m), {0, 1}, p).size() != 0) return false;
    for (auto [q, e] : factorize(m)) {
        Poly h = sub(frobenius_power(f, p, m / static_cast<int>(q)), {0, 1}, p);
        if (gcd(f, h, p).size() != 1) return false;
    }
    return true;
}

/// Lexicographically smallest monic irreducible of degree m, ordering the
/// lower coefficients (c_{m-1}, ..., c_0) as a base-p number.
inline Poly smallest_irreducible(i64 p, int m) {
    const i64 count = ipow(p, m);
    for (i64 code = 0; code < count; ++code) {
        Poly f(static_cast<std::size_t>(m) + 1, 0);
        f[static_cast<std::size_t>(m)] = 1;
        i64 c = code;
        for (int i = 0; i < m; ++i) {
            f[static_cast<std::size_t>(i)] = c % p;
            c /= p;
        }
        if (is_irreducible(f, p)) return f;
    }
    fail(ErrorKind::check_failed, "no monic irreducible polynomial found");
}

}  // namespace poly

// ---------------------------------------------------------------------------
// Local rings

enum class LocalRingKind { integers_mod_prime_power, finite_field, galois_ring, truncated_polynomial };

/**
 * A finite local ring presented uniformly as Z_M[y, x] / (f(y), x^t), with M a
 * power of p and f monic, irreducible modulo p.
 *
 * Elements are integers Σ c_i M^i where c_i is the coefficient of y^(i mod deg f)
 * x^(i / deg f); the additive group is therefore Z_M^D in mixed-radix order.
 */
class LocalRing {
public:
    static constexpr std::size_t max_size = 4096;
    static constexpr std::size_t table_limit = 1024;

    LocalRing(LocalRingKind kind, i64 p, i64 modulus, poly::Poly f, int t, i64 declared_ideal_size);

    LocalRingKind kind() const { return d_->kind; }
    i64 characteristic_prime() const { return d_->p; }
    i64 coefficient_modulus() const { return d_->M; }
    const poly::Poly& modulus_polynomial() const { return d_->f; }
    int truncation() const { return d_->t; }
    std::size_t coefficient_count() const { return d_->D; }
    std::size_t size() const { return d_->r; }
    std::size_t maximal_ideal_size() const { return d_->m; }
    bool is_field() const { return d_->m == 1; }
    const std::string& label() const { return d_->label; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    bool is_unit(std::uint32_t a) const { return d_->unit[check(a)]; }
    std::vector<std::uint32_t> units() const;
    std::vector<std::uint32_t> maximal_ideal() const;
    std::string element_label(std::uint32_t a) const;

private:
    struct Data {
        LocalRingKind kind{};
        i64 p = 0, M = 0;
        poly::Poly f;
        int t = 1;
        std::size_t D = 0, r = 0, m = 0;
        std::string label;
        std::vector<std::uint16_t> add_table, mul_table;  // present when r <= table_limit
        std::vector<char> unit;
    };

    std::uint32_t check(std::uint32_t a) const {
        if (a >= d_->r) fail(ErrorKind::invalid_argument, "ring element out of range for " + d_->label);
        return a;
    }
    static std::vector<i64> decode(const Data& d, std::uint32_t a);
    static std::uint32_t encode(const Data& d, const std::vector<i64>& c);
    static std::uint32_t mul_raw(const Data& d, std::uint32_t a, std::uint32_t b);
    static std::uint32_t add_raw(const Data& d, std::uint32_t a, std::uint32_t b);
    static bool unit_by_determinant(const Data& d, std::uint32_t a);
    static void validate(const Data& d);

    std::shared_ptr<const Data> d_;
};

inline std::vector<i64> LocalRing::decode(const Data& d, std::uint32_t a) {
    std::vector<i64> c(d.D);
    for (std::size_t i = 0; i < d.D; ++i) {
        c[i] = a % d.M;
        a = static_cast<std::uint32_t>(a / d.M);
    }
    return c;
}

inline std::uint32_t LocalRing::encode(const Data& d, const std::vector<i64>& c) {
    i64 a = 0;
    for (std::size_t i = d.D; i-- > 0;) a = a * d.M + mod(c[i], d.M);
    return static_cast<std::uint32_t>(a);
}

inline std::uint32_t LocalRing::add_raw(const Data& d, std::uint32_t a, std::uint32_t b) {
    auto ca = decode(d, a), cb = decode(d, b);
    for (std::size_t i = 0; i < d.D; ++i) ca[i] += cb[i];
    return encode(d, ca);
}

inline std::uint32_t LocalRing::mul_raw(const Data& d, std::uint32_t a, std::uint32_t b) {
    const std::size_t deg = d.f.size() - 1, t = static_cast<std::size_t>(d.t);
    auto ca = decode(d, a), cb = decode(d, b);
    std::vector<i64> out(d.D, 0);
    std::vector<i64> acc(2 * deg - 1);
    for (std::size_t j = 0; j < t; ++j) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t j1 = 0; j1 <= j; ++j1) {
            const std::size_t j2 = j - j1;
            for (std::size_t i1 = 0; i1 < deg; ++i1) {
                const i64 u = ca[j1 * deg + i1];
                if (u == 0) continue;
                for (std::size_t i2 = 0; i2 < deg; ++i2)
                    acc[i1 + i2] = (acc[i1 + i2] + u * cb[j2 * deg + i2]) % d.M;
            }
        }
        // Reduce modulo the monic f over Z_M.
        for (std::size_t k = acc.size(); k-- > deg;) {
            const i64 c = acc[k];
            if (c == 0) continue;
            for (std::size_t i = 0; i <= deg; ++i) acc[k - deg + i] = mod(acc[k - deg + i] - c * d.f[i], d.M);
        }
        for (std::size_t i = 0; i < deg; ++i) out[j * deg + i] = acc[i];
    }
    return encode(d, out);
}

/// a is a unit iff multiplication by a is bijective, iff its matrix over Z_M
/// has determinant prime to p.
inline bool LocalRing::unit_by_determinant(const Data& d, std::uint32_t a) {
    const std::size_t D = d.D;
    const i64 p = d.p;
    std::vector<std::vector<i64>> mat(D, std::vector<i64>(D));
    i64 basis = 1;
    for (std::size_t col = 0; col < D; ++col) {
        auto c = decode(d, mul_raw(d, a, static_cast<std::uint32_t>(basis)));
        for (std::size_t row = 0; row < D; ++row) mat[row][col] = c[row] % p;
        basis *= d.M;
    }
    for (std::size_t col = 0; col < D; ++col) {
        std::size_t piv = col;
        while (piv < D && mat[piv][col] == 0) ++piv;
        if (piv == D) return false;
        std::swap(mat[piv], mat[col]);
        const i64 inv = poly::inverse_mod(mat[col][col], p);
        for (std::size_t row = col + 1; row < D; ++row) {
            const i64 factor = mat[row][col] * inv % p;
            if (factor == 0) continue;
            for (std::size_t k = col; k < D; ++k) mat[row][k] = mod(mat[row][k] - factor * mat[col][k], p);
        }
    }
    return true;
}

inline LocalRing::LocalRing(LocalRingKind kind, i64 p, i64 modulus, poly::Poly f, int t, i64 declared_ideal_size) {
    if (!is_prime(p)) fail(ErrorKind::invalid_argument, std::to_string(p) + " is not prime");
    if (t < 1) fail(ErrorKind::invalid_argument, "truncation degree must be >= 1");
    if (f.size() < 2 || f.back() != 1) fail(ErrorKind::invalid_argument, "modulus polynomial must be monic of degree >= 1");
    auto d = std::make_shared<Data>();
    d->kind = kind;
    d->p = p;
    d->M = modulus;
    d->f = std::move(f);
    d->t = t;
    d->D = (d->f.size() - 1) * static_cast<std::size_t>(t);
    i64 r = 1;
    for (std::size_t i = 0; i < d->D; ++i) {
        r *= modulus;
        if (r > static_cast<i64>(max_size))
            fail(ErrorKind::size_limit, "local ring size exceeds " + std::to_string(max_size));
    }
    d->r = static_cast<std::size_t>(r);

    const int deg = static_cast<int>(d->f.size()) - 1;
    switch (kind) {
    case LocalRingKind::integers_mod_prime_power:
        d->label = "Z" + std::to_string(r);
        break;
    case LocalRingKind::finite_field:
        d->label = "F" + std::to_string(r);
        break;
    case LocalRingKind::galois_ring:
        d->label = "GR(" + std::to_string(modulus) + "," + std::to_string(deg) + ")";
        break;
    case LocalRingKind::truncated_polynomial:
        d->label = "F" + std::to_string(ipow(p, deg)) + "[x]/(x^" + std::to_string(t) + ")";
        break;
    }

    if (d->r <= table_limit) {
        d->add_table.resize(d->r * d->r);
        d->mul_table.resize(d->r * d->r);
        for (std::uint32_t a = 0; a < d->r; ++a)
            for (std::uint32_t b = 0; b < d->r; ++b) {
                d->add_table[a * d->r + b] = static_cast<std::uint16_t>(add_raw(*d, a, b));
                d->mul_table[a * d->r + b] = static_cast<std::uint16_t>(mul_raw(*d, a, b));
            }
    }
    d->unit.resize(d->r);
    std::size_t non_units = 0;
    for (std::uint32_t a = 0; a < d->r; ++a) {
        d->unit[a] = unit_by_determinant(*d, a);
        non_units += d->unit[a] ? 0 : 1;
    }
    d->m = non_units;
    if (static_cast<i64>(non_units) != declared_ideal_size)
        fail(ErrorKind::check_failed, d->label + ": non-unit count " + std::to_string(non_units) +
                                          " differs from the maximal ideal size " + std::to_string(declared_ideal_size));
    validate(*d);
    d_ = std::move(d);
}

inline void LocalRing::validate(const Data& d) {
    const std::uint32_t r = static_cast<std::uint32_t>(d.r);
    auto mul = [&](std::uint32_t a, std::uint32_t b) {
        return d.mul_table.empty() ? mul_raw(d, a, b) : std::uint32_t{d.mul_table[a * r + b]};
    };
    auto add = [&](std::uint32_t a, std::uint32_t b) {
        return d.add_table.empty() ? add_raw(d, a, b) : std::uint32_t{d.add_table[a * r + b]};
    };
    if (d.r <= 256) {
        for (std::uint32_t a = 0; a < r; ++a)
            for (std::uint32_t b = a + 1; b < r; ++b)
                if (mul(a, b) != mul(b, a)) fail(ErrorKind::check_failed, d.label + ": multiplication not commutative");
    }
    std::mt19937_64 rng(0xC0FFEEULL + d.r);
    std::uniform_int_distribution<std::uint32_t> pick(0, r - 1);
    for (int i = 0; i < 2000; ++i) {
        std::uint32_t a = pick(rng), b = pick(rng), c = pick(rng);
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
            fail(ErrorKind::check_failed, d.label + ": distributivity fails");
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail(ErrorKind::check_failed, d.label + ": associativity fails");
        if (d.r > 256 && mul(a, b) != mul(b, a)) fail(ErrorKind::check_failed, d.label + ": multiplication not commutative");
    }
    if (!d.unit[1]) fail(ErrorKind::check_failed, d.label + ": 1 is not a unit");

    std::vector<std::uint32_t> ideal;
    for (std::uint32_t a = 0; a < r; ++a)
        if (!d.unit[a]) ideal.push_back(a);
    const bool exhaustive = ideal.size() * ideal.size() + d.r * ideal.size() <= 8'000'000;
    auto in_ideal = [&](std::uint32_t a) { return !d.unit[a]; };
    if (exhaustive) {
        for (auto a : ideal) {
            for (auto b : ideal)
                if (!in_ideal(add(a, b))) fail(ErrorKind::check_failed, d.label + ": non-units not closed under addition");
            for (std::uint32_t x = 0; x < r; ++x)
                if (!in_ideal(mul(a, x))) fail(ErrorKind::check_failed, d.label + ": non-units do not absorb products");
        }
    } else {
        std::uniform_int_distribution<std::size_t> pick_ideal(0, ideal.size() - 1);
        for (int i = 0; i < 50000; ++i) {
            auto a = ideal[pick_ideal(rng)], b = ideal[pick_ideal(rng)];
            if (!in_ideal(add(a, b)) || !in_ideal(mul(a, pick(rng))))
                fail(ErrorKind::check_failed, d.label + ": non-units do not form an ideal");
        }
    }
}

inline std::uint32_t LocalRing::add(std::uint32_t a, std::uint32_t b) const {
    check(a);
    check(b);
    return d_->add_table.empty() ? add_raw(*d_, a, b) : d_->add_table[a * d_->r + b];
}

inline std::uint32_t LocalRing::neg(std::uint32_t a) const {
    auto c = decode(*d_, check(a));
    for (auto& v : c) v = -v;
    return encode(*d_, c);
}

inline std::uint32_t LocalRing::mul(std::uint32_t a, std::uint32_t b) const {
    check(a);
    check(b);
    return d_->mul_table.empty() ? mul_raw(*d_, a, b) : d_->mul_table[a * d_->r + b];
}

inline std::vector<std::uint32_t> LocalRing::units() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t a = 0; a < d_->r; ++a)
        if (d_->unit[a]) out.push_back(a);
    return out;
}

inline std::vector<std::uint32_t> LocalRing::maximal_ideal() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t a = 0; a < d_->r; ++a)
        if (!d_->unit[a]) out.push_back(a);
    return out;
}

inline std::string LocalRing::element_label(std::uint32_t a) const {
    if (d_->D == 1) return std::to_string(check(a));
    auto c = decode(*d_, check(a));
    std::string s = "(";
    for (std::size_t i = d_->D; i-- > 0;) s += std::to_string(c[i]) + (i ? "," : ")");
    return s;
}

/**
 * Builds a local ring of one of the four families.
 *
 *   integers_mod_prime_power  Z_{p^k}:            s_or_m = k
 *   finite_field              F_{p^m}:            s_or_m = m
 *   galois_ring               GR(p^s, t):         s_or_m = s, degree t
 *   truncated_polynomial      F_{p^m}[x]/(x^t):   s_or_m = m
 */
inline LocalRing local_ring(LocalRingKind kind, i64 p, int s_or_m, int t = 1) {
    if (!is_prime(p)) fail(ErrorKind::invalid_argument, std::to_string(p) + " is not prime");
    if (s_or_m < 1 || t < 1) fail(ErrorKind::invalid_argument, "ring parameters must be positive");
    auto guard = [&](int e) {
        if (e > 12) fail(ErrorKind::size_limit, "local ring size exceeds 4096");
        if (ipow(p, e) > static_cast<i64>(LocalRing::max_size))
            fail(ErrorKind::size_limit, "local ring size exceeds 4096");
    };
    switch (kind) {
    case LocalRingKind::integers_mod_prime_power:
        guard(s_or_m);
        return {kind, p, ipow(p, s_or_m), {0, 1}, 1, ipow(p, s_or_m - 1)};
    case LocalRingKind::finite_field:
        guard(s_or_m);
        return {kind, p, p, poly::smallest_irreducible(p, s_or_m), 1, 1};
    case LocalRingKind::galois_ring:
        guard(s_or_m * t);
        return {kind, p, ipow(p, s_or_m), poly::smallest_irreducible(p, t), 1, ipow(p, (s_or_m - 1) * t)};
    case LocalRingKind::truncated_polynomial:
        guard(s_or_m * t);
        return {kind, p, p, poly::smallest_irreducible(p, s_or_m), t, ipow(p, s_or_m * (t - 1))};
    }
    fail(ErrorKind::invalid_argument, "unknown local ring kind");
}

// ---------------------------------------------------------------------------
// Artin products

/// Product of local rings; elements are mixed-radix integers with the first
/// factor most significant.
class FiniteRing {
public:
    explicit FiniteRing(std::vector<LocalRing> factors);

    const std::vector<LocalRing>& factors() const { return d_->factors; }
    std::size_t size() const { return d_->size; }
    const std::string& label() const { return d_->label; }

    std::vector<std::uint32_t> split(std::uint32_t a) const;
    std::uint32_t join(const std::vector<std::uint32_t>& parts) const;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    bool is_unit(std::uint32_t a) const;
    std::uint32_t zero() const { return 0; }
    std::uint32_t one() const;

    /// The additive group; element indices coincide with ring indices.
    const FiniteGroup& additive_group() const;

private:
    struct Data {
        std::vector<LocalRing> factors;
        std::size_t size = 1;
        std::string label;
        std::optional<FiniteGroup> group;
    };
    std::shared_ptr<const Data> d_;
};

inline FiniteRing::FiniteRing(std::vector<LocalRing> factors) {
    if (factors.empty()) fail(ErrorKind::invalid_argument, "Artin product needs at least one factor");
    auto d = std::make_shared<Data>();
    d->factors = std::move(factors);
    for (std::size_t i = 0; i < d->factors.size(); ++i) {
        d->size *= d->factors[i].size();
        if (d->size > (1u << 24)) fail(ErrorKind::size_limit, "ring too large");
        d->label += (i ? "x" : "") + d->factors[i].label();
    }
    if (d->size <= FiniteGroup::max_order) {
        // Z_M^D per factor, flattened, in the same mixed-radix order as the ring.
        std::vector<std::size_t> moduli;
        for (const auto& f : d->factors)
            for (std::size_t i = 0; i < f.coefficient_count(); ++i)
                moduli.push_back(static_cast<std::size_t>(f.coefficient_modulus()));
        const std::size_t n = d->size, k = moduli.size();
        std::vector<std::size_t> stride(k, 1);
        for (std::size_t i = k - 1; i-- > 0;) stride[i] = stride[i + 1] * moduli[i + 1];
        std::vector<std::uint16_t> table(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                std::size_t c = 0;
                for (std::size_t i = 0; i < k; ++i)
                    c += stride[i] * (((a / stride[i]) % moduli[i] + (b / stride[i]) % moduli[i]) % moduli[i]);
                table[a * n + b] = static_cast<std::uint16_t>(c);
            }
        std::vector<Element> hint;
        for (std::size_t i = 0; i < k; ++i) hint.push_back(static_cast<Element>(stride[i]));
        std::vector<std::string> labels(n);
        d_ = d;  // split() reads d_ while the labels are built
        for (std::size_t a = 0; a < n; ++a) {
            auto parts = split(static_cast<std::uint32_t>(a));
            if (parts.size() == 1) {
                labels[a] = d->factors[0].element_label(parts[0]);
            } else {
                std::string s = "(";
                for (std::size_t i = 0; i < parts.size(); ++i)
                    s += (i ? "," : "") + d->factors[i].element_label(parts[i]);
                labels[a] = s + ")";
            }
        }
        d->group.emplace(d->label, n, std::move(table), std::move(labels), hint);
    }
    d_ = std::move(d);
}

inline std::vector<std::uint32_t> FiniteRing::split(std::uint32_t a) const {
    if (a >= d_->size) fail(ErrorKind::invalid_argument, "ring element out of range for " + d_->label);
    std::vector<std::uint32_t> parts(d_->factors.size());
    for (std::size_t i = d_->factors.size(); i-- > 0;) {
        const auto r = static_cast<std::uint32_t>(d_->factors[i].size());
        parts[i] = a % r;
        a /= r;
    }
    return parts;
}

inline std::uint32_t FiniteRing::join(const std::vector<std::uint32_t>& parts) const {
    if (parts.size() != d_->factors.size()) fail(ErrorKind::invalid_argument, "component count mismatch");
    std::uint32_t a = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto r = static_cast<std::uint32_t>(d_->factors[i].size());
        if (parts[i] >= r) fail(ErrorKind::invalid_argument, "component out of range");
        a = a * r + parts[i];
    }
    return a;
}

inline std::uint32_t FiniteRing::add(std::uint32_t a, std::uint32_t b) const {
    auto x = split(a), y = split(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = d_->factors[i].add(x[i], y[i]);
    return join(x);
}

inline std::uint32_t FiniteRing::neg(std::uint32_t a) const {
    auto x = split(a);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = d_->factors[i].neg(x[i]);
    return join(x);
}

inline std::uint32_t FiniteRing::mul(std::uint32_t a, std::uint32_t b) const {
    auto x = split(a), y = split(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = d_->factors[i].mul(x[i], y[i]);
    return join(x);
}

inline bool FiniteRing::is_unit(std::uint32_t a) const {
    auto x = split(a);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!d_->factors[i].is_unit(x[i])) return false;
    return true;
}

inline std::uint32_t FiniteRing::one() const {
    return join(std::vector<std::uint32_t>(d_->factors.size(), 1));
}

inline const FiniteGroup& FiniteRing::additive_group() const {
    if (!d_->group) fail(ErrorKind::size_limit, "ring " + d_->label + " too large for an explicit additive group");
    return *d_->group;
}

inline FiniteRing artin_product(std::vector<LocalRing> factors) { return FiniteRing(std::move(factors)); }

inline FiniteGroup additive_group(const FiniteRing& r) { return r.additive_group(); }

inline GroupSubset units(const FiniteRing& r) {
    std::vector<Element> m;
    for (std::uint32_t a = 0; a < r.size(); ++a)
        if (r.is_unit(a)) m.push_back(a);
    return {r.additive_group(), m};
}

inline GroupSubset zero_subset(const FiniteRing& r) { return {r.additive_group(), {r.zero()}}; }

// ---------------------------------------------------------------------------
// Finite fields and GP-graph parameters

/// P_k = {x^k : x ∈ F_q^*} as a subset of the additive group of the field.
inline GroupSubset power_residues(const FiniteRing& f, i64 k) {
    if (f.factors().size() != 1 || !f.factors()[0].is_field())
        fail(ErrorKind::hypothesis, "power residues need a finite field, got " + f.label());
    const i64 q = static_cast<i64>(f.size());
    if (k < 1 || (q - 1) % k != 0)
        fail(ErrorKind::invalid_argument, std::to_string(k) + " does not divide " + std::to_string(q - 1));
    std::vector<Element> m;
    for (std::uint32_t x = 1; x < q; ++x) {
        std::uint32_t y = f.one();
        for (i64 i = 0; i < k; ++i) y = f.mul(y, x);
        m.push_back(y);
    }
    return {f.additive_group(), m};
}

inline GroupSubset power_residues(const LocalRing& f, i64 k) { return power_residues(FiniteRing({f}), k); }

namespace detail {
inline std::pair<i64, int> field_order(i64 q) {
    auto pp = prime_power(q);
    if (!pp) fail(ErrorKind::invalid_argument, std::to_string(q) + " is not a prime power");
    return *pp;
}
}  // namespace detail

/// Γ(k, q) is integral iff k | (q-1)/(p-1).
inline bool gp_integrality(i64 k, i64 q) {
    auto [p, m] = detail::field_order(q);
    if (k < 1 || (q - 1) % k != 0)
        fail(ErrorKind::invalid_argument, std::to_string(k) + " does not divide " + std::to_string(q - 1));
    return ((q - 1) / (p - 1)) % k == 0;
}

struct SemiprimitiveResult {
    bool semiprimitive = false;
    std::optional<int> t;  ///< least j with k | p^j + 1
};

/// k = 2 with q ≡ 1 (mod 4), or k >= 3 with k | p^t + 1 for some t | m/2, t != m/2.
inline SemiprimitiveResult semiprimitive_check(i64 k, i64 q) {
    auto [p, m] = detail::field_order(q);
    if (k < 1 || (q - 1) % k != 0)
        fail(ErrorKind::invalid_argument, std::to_string(k) + " does not divide " + std::to_string(q - 1));
    SemiprimitiveResult r;
    auto least_j = [&]() -> std::optional<int> {
        i64 pj = 1;
        for (int j = 1; j <= 2 * m + 2; ++j) {
            pj = pj * p % k;
            if ((pj + 1) % k == 0) return j;
        }
        return std::nullopt;
    };
    if (k == 2) {
        if (q % 4 == 1) {
            r.semiprimitive = true;
            r.t = least_j();
        }
        return r;
    }
    if (k < 3 || m % 2 != 0) return r;
    const int half = m / 2;
    for (int t = 1; t < half; ++t) {
        if (half % t != 0) continue;
        if ((ipow(p, t) + 1) % k == 0) {
            r.semiprimitive = true;
            r.t = least_j();
            return r;
        }
    }
    return r;
}

/// k with Γ(k, p^{bm}) = H(b, p^m), when b | (p^{bm}-1)/(p^m-1).
inline std::optional<i64> hamming_gp_parameters(int b, i64 p, int m) {
    if (b < 1 || m < 1) fail(ErrorKind::invalid_argument, "b and m must be positive");
    if (!is_prime(p)) fail(ErrorKind::invalid_argument, std::to_string(p) + " is not prime");
    const i64 big = ipow(p, b * m) - 1, small = ipow(p, m) - 1;
    const i64 ratio = big / small;
    if (ratio % b != 0) return std::nullopt;
    return ratio / b;
}

// ---------------------------------------------------------------------------
// Descriptors: zpk:p^k, gf:p^m, gr:p^s:t, quot:p^m:t joined by '*'.

namespace detail {

inline std::pair<i64, int> parse_prime_power(std::string_view s, std::string_view whole) {
    auto bad = [&](const std::string& why) -> std::pair<i64, int> {
        fail(ErrorKind::parse, "ring descriptor '" + std::string(whole) + "': " + why);
    };
    auto to_int = [&](std::string_view v) -> i64 {
        if (v.empty() || v.size() > 9 || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            bad("expected a number, got '" + std::string(v) + "'");
        return std::stoll(std::string(v));
    };
    auto caret = s.find('^');
    if (caret != std::string_view::npos) {
        i64 p = to_int(s.substr(0, caret));
        i64 e = to_int(s.substr(caret + 1));
        if (!is_prime(p)) bad(std::to_string(p) + " is not prime");
        if (e < 1 || e > 30) bad("exponent out of range");
        return {p, static_cast<int>(e)};
    }
    auto pp = prime_power(to_int(s));
    if (!pp) bad("'" + std::string(s) + "' is not a prime power");
    return *pp;
}

}  // namespace detail

inline LocalRing parse_local_ring(std::string_view s) {
    auto parts = std::vector<std::string_view>{};
    std::size_t start = 0;
    while (true) {
        auto colon = s.find(':', start);
        parts.push_back(s.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    auto bad = [&](const std::string& why) -> LocalRing { fail(ErrorKind::parse, "ring descriptor '" + std::string(s) + "': " + why); };
    const std::string kind(parts[0]);
    if (kind == "zpk" || kind == "gf") {
        if (parts.size() != 2) return bad("expected " + kind + ":p^k");
        auto [p, e] = detail::parse_prime_power(parts[1], s);
        return local_ring(kind == "zpk" ? LocalRingKind::integers_mod_prime_power : LocalRingKind::finite_field, p, e);
    }
    if (kind == "gr" || kind == "quot") {
        if (parts.size() != 3) return bad("expected " + kind + ":p^e:t");
        auto [p, e] = detail::parse_prime_power(parts[1], s);
        const std::string ts(parts[2]);
        if (ts.empty() || ts.size() > 3 || !std::all_of(ts.begin(), ts.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            return bad("expected a degree, got '" + ts + "'");
        const int t = std::stoi(ts);
        if (t < 1) return bad("degree must be positive");
        return local_ring(kind == "gr" ? LocalRingKind::galois_ring : LocalRingKind::truncated_polynomial, p, e, t);
    }
    return bad("unknown ring kind '" + kind + "'");
}

inline FiniteRing make_ring(std::string_view descriptor) {
    std::vector<LocalRing> factors;
    std::size_t start = 0;
    while (true) {
        auto star = descriptor.find('*', start);
        auto piece = descriptor.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start);
        if (piece.empty()) fail(ErrorKind::parse, "ring descriptor '" + std::string(descriptor) + "': empty factor");
        factors.push_back(parse_local_ring(piece));
        if (star == std::string_view::npos) break;
        start = star + 1;
    }
    return FiniteRing(std::move(factors));
}

}  // namespace spectra_forge
