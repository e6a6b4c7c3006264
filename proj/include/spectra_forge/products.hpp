#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spectra_forge/error.hpp"
#include "spectra_forge/graphs.hpp"

namespace spectra_forge {

/// Basis of a NEPS: non-zero 0/1 tuples, each coordinate covered at least once.
struct NepsBasis {
    std::size_t arity = 0;
    std::vector<std::vector<std::uint8_t>> tuples;

    NepsBasis(std::size_t arity_, std::vector<std::vector<std::uint8_t>> tuples_)
        : arity(arity_), tuples(std::move(tuples_)) {
        if (arity == 0) fail(ErrorKind::invalid_argument, "NEPS basis needs positive arity");
        if (tuples.empty()) fail(ErrorKind::invalid_argument, "NEPS basis is empty");
        std::vector<bool> covered(arity, false);
        for (const auto& b : tuples) {
            if (b.size() != arity) fail(ErrorKind::invalid_argument, "NEPS basis tuple has wrong arity");
            bool nonzero = false;
            for (std::size_t i = 0; i < arity; ++i) {
                if (b[i] > 1) fail(ErrorKind::invalid_argument, "NEPS basis entries must be 0 or 1");
                if (b[i]) {
                    nonzero = true;
                    covered[i] = true;
                }
            }
            if (!nonzero) fail(ErrorKind::invalid_argument, "NEPS basis contains the zero tuple");
        }
        for (bool c : covered)
            if (!c) fail(ErrorKind::invalid_argument, "NEPS basis leaves a coordinate uncovered");
    }
};

/// NEPS of the factors. Vertices are tuples in mixed-radix order, first factor
/// most significant. Loops in a factor count as arcs.
inline Graph neps(const std::vector<Graph>& factors, const NepsBasis& basis) {
    if (basis.arity != factors.size())
        fail(ErrorKind::invalid_argument, "NEPS basis arity " + std::to_string(basis.arity) + " differs from " +
                                              std::to_string(factors.size()) + " factors");
    const std::size_t k = factors.size();
    std::size_t N = 1;
    for (const auto& f : factors) {
        N *= f.size();
        if (N > 8192) fail(ErrorKind::size_limit, "NEPS product too large");
    }
    std::vector<std::size_t> stride(k, 1);
    for (std::size_t i = k - 1; i-- > 0;) stride[i] = stride[i + 1] * factors[i + 1].size();
    std::vector<std::vector<std::size_t>> digits(N, std::vector<std::size_t>(k));
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t i = 0; i < k; ++i) digits[x][i] = (x / stride[i]) % factors[i].size();

    std::vector<std::uint8_t> adj(N * N, 0);
    for (std::size_t u = 0; u < N; ++u)
        for (std::size_t v = 0; v < N; ++v) {
            for (const auto& b : basis.tuples) {
                bool ok = true;
                for (std::size_t i = 0; i < k && ok; ++i)
                    ok = b[i] ? factors[i](digits[u][i], digits[v][i]) : digits[u][i] == digits[v][i];
                if (ok) {
                    adj[u * N + v] = 1;
                    break;
                }
            }
        }
    std::vector<std::string> labels(N);
    for (std::size_t x = 0; x < N; ++x) {
        std::string s = "(";
        for (std::size_t i = 0; i < k; ++i) s += (i ? "," : "") + factors[i].labels()[digits[x][i]];
        labels[x] = s + ")";
    }
    return {N, std::move(adj), std::move(labels)};
}

enum class ProductKind { cartesian, direct, strong, strong_sum };

inline const char* to_string(ProductKind k) {
    switch (k) {
    case ProductKind::cartesian: return "cartesian";
    case ProductKind::direct: return "direct";
    case ProductKind::strong: return "strong";
    case ProductKind::strong_sum: return "strong_sum";
    }
    return "?";
}

inline NepsBasis product_basis(ProductKind kind) {
    switch (kind) {
    case ProductKind::cartesian: return {2, {{1, 0}, {0, 1}}};
    case ProductKind::direct: return {2, {{1, 1}}};
    case ProductKind::strong: return {2, {{1, 0}, {0, 1}, {1, 1}}};
    case ProductKind::strong_sum: return {2, {{1, 0}, {1, 1}}};
    }
    fail(ErrorKind::invalid_argument, "unknown product kind");
}

/// Cartesian, direct, strong and strong-sum products; strong_sum is not commutative.
inline Graph named_product(const Graph& a, const Graph& b, ProductKind kind) { return neps({a, b}, product_basis(kind)); }

/// P2, or the looped P2 when `looped` is set.
inline Graph path2(bool looped) {
    if (looped) return {2, {1, 1, 1, 1}};
    return {2, {0, 1, 1, 0}};
}

/// Reorders a product over (n1 x n2) vertices into the (n2 x n1) order, i.e. the
/// canonical isomorphism A ⊗ B -> B ⊗ A.
inline Graph swap_factors(const Graph& g, std::size_t n1, std::size_t n2) {
    if (n1 * n2 != g.size()) fail(ErrorKind::invalid_argument, "factor sizes do not match the graph");
    std::vector<std::size_t> perm(g.size());
    for (std::size_t a = 0; a < n1; ++a)
        for (std::size_t b = 0; b < n2; ++b) perm[a * n2 + b] = b * n1 + a;
    return relabel(g, perm);
}

}  // namespace spectra_forge
