#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "spectra_forge/error.hpp"

namespace spectra_forge {

using i64 = std::int64_t;

inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

/// Integer power with overflow detection.
inline i64 ipow(i64 base, int exp) {
    if (exp < 0) fail(ErrorKind::invalid_argument, "ipow: negative exponent");
    i64 result = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && std::abs(result) > std::numeric_limits<i64>::max() / std::abs(base))
            fail(ErrorKind::size_limit, "ipow: overflow");
        result *= base;
    }
    return result;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
inline std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 1) fail(ErrorKind::invalid_argument, "factorize: n must be positive");
    std::vector<std::pair<i64, int>> out;
    for (i64 d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/// Returns (p, e) with q = p^e, or nothing when q is not a prime power.
inline std::optional<std::pair<i64, int>> prime_power(i64 q) {
    if (q < 2) return std::nullopt;
    auto f = factorize(q);
    if (f.size() != 1) return std::nullopt;
    return f.front();
}

inline i64 totient(i64 n) {
    i64 result = n;
    for (auto [p, e] : factorize(n)) result = result / p * (p - 1);
    return result;
}

inline int mobius(i64 n) {
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

inline std::vector<i64> divisors(i64 n) {
    std::vector<i64> out;
    for (i64 d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

inline i64 binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    i64 r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace spectra_forge
