#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spectra_forge/algebra.hpp"
#include "spectra_forge/error.hpp"

namespace spectra_forge {

enum class CayleyKind { difference, sum };

inline const char* to_string(CayleyKind k) { return k == CayleyKind::difference ? "difference" : "sum"; }

/**
 * Dense 0/1 adjacency over labelled vertices. Entry (u, v) = 1 is an arc u -> v;
 * an undirected edge is a pair of opposite arcs and a loop is a diagonal entry.
 */
class Graph {
public:
    Graph() = default;

    Graph(std::size_t n, std::vector<std::uint8_t> adjacency, std::vector<std::string> labels = {})
        : n_(n), adj_(std::move(adjacency)), labels_(std::move(labels)) {
        if (adj_.size() != n_ * n_) fail(ErrorKind::invalid_argument, "adjacency size does not match vertex count");
        for (auto& a : adj_) {
            if (a > 1) fail(ErrorKind::invalid_argument, "adjacency entries must be 0 or 1");
        }
        if (labels_.empty())
            for (std::size_t v = 0; v < n_; ++v) labels_.push_back(std::to_string(v));
        if (labels_.size() != n_) fail(ErrorKind::invalid_argument, "label count does not match vertex count");

        undirected_ = true;
        for (std::size_t u = 0; u < n_ && undirected_; ++u)
            for (std::size_t v = u + 1; v < n_ && undirected_; ++v) undirected_ = at(u, v) == at(v, u);
        for (std::size_t v = 0; v < n_; ++v) has_loops_ = has_loops_ || at(v, v);

        std::vector<std::size_t> rows(n_, 0), cols(n_, 0);
        for (std::size_t u = 0; u < n_; ++u)
            for (std::size_t v = 0; v < n_; ++v)
                if (at(u, v)) {
                    ++rows[u];
                    ++cols[v];
                }
        out_degree_ = rows;
        in_degree_ = cols;
        if (n_ > 0 && std::all_of(rows.begin(), rows.end(), [&](std::size_t d) { return d == rows[0]; }) &&
            std::all_of(cols.begin(), cols.end(), [&](std::size_t d) { return d == rows[0]; }))
            regular_ = rows[0];
    }

    std::size_t size() const { return n_; }
    bool operator()(std::size_t u, std::size_t v) const {
        if (u >= n_ || v >= n_) fail(ErrorKind::invalid_argument, "vertex out of range");
        return at(u, v);
    }
    const std::vector<std::uint8_t>& adjacency() const { return adj_; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool is_undirected() const { return undirected_; }
    bool has_loops() const { return has_loops_; }
    std::optional<std::size_t> regular_degree() const { return regular_; }
    std::size_t out_degree(std::size_t u) const { return out_degree_.at(u); }
    std::size_t in_degree(std::size_t v) const { return in_degree_.at(v); }
    std::size_t max_degree() const {
        std::size_t d = 0;
        for (std::size_t v = 0; v < n_; ++v) d = std::max({d, out_degree_[v], in_degree_[v]});
        return d;
    }
    std::size_t arc_count() const { return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), 1)); }

    /// Adjacency equality; labels are presentation only.
    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    bool at(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }

    std::size_t n_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<std::string> labels_;
    bool undirected_ = true;
    bool has_loops_ = false;
    std::optional<std::size_t> regular_;
    std::vector<std::size_t> out_degree_, in_degree_;
};

/// X(G,S): h -> g iff g h^{-1} ∈ S.  X+(G,S): h -> g iff g h ∈ S.
inline Graph cayley(const FiniteGroup& g, const GroupSubset& s, CayleyKind kind) {
    require_same_group(g, s.group());
    const std::size_t n = g.order();
    std::vector<std::uint8_t> adj(n * n, 0);
    for (Element h = 0; h < n; ++h) {
        const Element hinv = g.invert(h);
        for (Element x = 0; x < n; ++x) {
            const Element key = kind == CayleyKind::difference ? g.combine(x, hinv) : g.combine(x, h);
            if (s.contains(key)) adj[h * n + x] = 1;
        }
    }
    std::vector<std::string> labels;
    for (Element x = 0; x < n; ++x) labels.push_back(g.element_label(x));
    return {n, std::move(adj), std::move(labels)};
}

/// Index of vertex (g, i) in a mirror di-Cayley graph.
inline std::size_t mirror_vertex(Element g, int mirror) { return 2 * static_cast<std::size_t>(g) + static_cast<std::size_t>(mirror); }

/**
 * MX(G;S,T) / MX+(G;S,T) on G x {0,1}. Arcs inside a mirror follow the S rule,
 * arcs between mirrors follow the T rule. Vertex (g, i) has index 2g + i, which
 * matches the mixed-radix order of G x Z2.
 */
inline Graph mirror_dicayley(const FiniteGroup& g, const GroupSubset& s, const GroupSubset& t, CayleyKind kind) {
    require_same_group(g, s.group());
    require_same_group(g, t.group());
    const std::size_t n = g.order(), N = 2 * n;
    std::vector<std::uint8_t> adj(N * N, 0);
    for (Element h = 0; h < n; ++h) {
        const Element hinv = g.invert(h);
        for (Element x = 0; x < n; ++x) {
            const Element key = kind == CayleyKind::difference ? g.combine(x, hinv) : g.combine(x, h);
            for (int i = 0; i < 2; ++i) {
                if (s.contains(key)) adj[mirror_vertex(h, i) * N + mirror_vertex(x, i)] = 1;
                if (t.contains(key)) adj[mirror_vertex(h, i) * N + mirror_vertex(x, 1 - i)] = 1;
            }
        }
    }
    std::vector<std::string> labels(N);
    for (Element x = 0; x < n; ++x)
        for (int i = 0; i < 2; ++i) labels[mirror_vertex(x, i)] = "(" + g.element_label(x) + "," + std::to_string(i) + ")";
    return {N, std::move(adj), std::move(labels)};
}

/// (S x {0}) ∪ (T x {1}) inside G x Z2; mirror_dicayley equals the Cayley graph on it.
inline GroupSubset mirror_connection_set(const FiniteGroup& gz2, const GroupSubset& s, const GroupSubset& t) {
    if (gz2.order() != 2 * s.group().order()) fail(ErrorKind::invalid_argument, "expected the group G x Z2");
    require_same_group(s.group(), t.group());
    std::vector<Element> m;
    for (Element x : s.members()) m.push_back(static_cast<Element>(mirror_vertex(x, 0)));
    for (Element x : t.members()) m.push_back(static_cast<Element>(mirror_vertex(x, 1)));
    return {gz2, m};
}

inline Graph with_loops(const Graph& g) {
    auto adj = g.adjacency();
    for (std::size_t v = 0; v < g.size(); ++v) adj[v * g.size() + v] = 1;
    return {g.size(), std::move(adj), g.labels()};
}

inline Graph relabel(const Graph& g, const std::vector<std::size_t>& perm) {
    // Vertex v of g becomes perm[v].
    const std::size_t n = g.size();
    if (perm.size() != n) fail(ErrorKind::invalid_argument, "permutation size mismatch");
    std::vector<std::uint8_t> adj(n * n, 0);
    std::vector<std::string> labels(n);
    for (std::size_t u = 0; u < n; ++u) {
        labels[perm[u]] = g.labels()[u];
        for (std::size_t v = 0; v < n; ++v) adj[perm[u] * n + perm[v]] = g.adjacency()[u * n + v];
    }
    return {n, std::move(adj), std::move(labels)};
}

inline Graph disjoint_union(const std::vector<Graph>& parts) {
    std::size_t n = 0;
    for (const auto& p : parts) n += p.size();
    std::vector<std::uint8_t> adj(n * n, 0);
    std::vector<std::string> labels;
    std::size_t offset = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const auto& p = parts[k];
        for (std::size_t u = 0; u < p.size(); ++u) {
            labels.push_back(std::to_string(k) + ":" + p.labels()[u]);
            for (std::size_t v = 0; v < p.size(); ++v) adj[(offset + u) * n + offset + v] = p.adjacency()[u * p.size() + v];
        }
        offset += p.size();
    }
    return {n, std::move(adj), std::move(labels)};
}

// ---------------------------------------------------------------------------
// Structure

/// Two-colourability; defined for undirected loopless graphs only.
inline bool is_bipartite(const Graph& g) {
    if (!g.is_undirected() || g.has_loops())
        fail(ErrorKind::hypothesis, "bipartite test needs an undirected loopless graph");
    const std::size_t n = g.size();
    std::vector<int> colour(n, -1);
    for (std::size_t s = 0; s < n; ++s) {
        if (colour[s] >= 0) continue;
        colour[s] = 0;
        std::vector<std::size_t> stack{s};
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v) {
                if (!g(u, v)) continue;
                if (colour[v] < 0) {
                    colour[v] = 1 - colour[u];
                    stack.push_back(v);
                } else if (colour[v] == colour[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Weakly connected components, each sorted, ordered by smallest vertex.
inline std::vector<std::vector<std::size_t>> components(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<int> seen(n, 0);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> comp, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (std::size_t v = 0; v < n; ++v)
                if ((g(u, v) || g(v, u)) && !seen[v]) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

/// Classes of two or more vertices with identical out- and in-neighbourhoods.
inline std::vector<std::vector<std::size_t>> twin_classes(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<std::vector<std::uint8_t>> key(n);
    for (std::size_t u = 0; u < n; ++u) {
        key[u].reserve(2 * n);
        for (std::size_t v = 0; v < n; ++v) key[u].push_back(g(u, v));
        for (std::size_t v = 0; v < n; ++v) key[u].push_back(g(v, u));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && key[order[j]] == key[order[i]]) ++j;
        if (j - i >= 2) {
            std::vector<std::size_t> cls(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(j));
            std::sort(cls.begin(), cls.end());
            out.push_back(std::move(cls));
        }
        i = j;
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct StructureReport {
    bool directed = false;   ///< some arc lacks its reverse
    bool oriented = false;   ///< no pair of opposite arcs (a loop is its own reverse)
    std::vector<std::size_t> loop_vertices;
    std::optional<std::size_t> out_degree;  ///< common out-degree, if any
    std::optional<std::size_t> in_degree;   ///< common in-degree, if any
    std::optional<bool> bipartite;          ///< only for undirected loopless graphs
    std::vector<std::vector<std::size_t>> components;
    std::vector<std::vector<std::size_t>> twin_classes;
};

inline StructureReport structure_report(const Graph& g) {
    StructureReport r;
    const std::size_t n = g.size();
    r.directed = !g.is_undirected();
    r.oriented = true;
    for (std::size_t u = 0; u < n; ++u) {
        if (g(u, u)) {
            r.loop_vertices.push_back(u);
            r.oriented = false;
        }
        for (std::size_t v = u + 1; v < n; ++v)
            if (g(u, v) && g(v, u)) r.oriented = false;
    }
    auto common = [&](auto deg) -> std::optional<std::size_t> {
        if (n == 0) return std::nullopt;
        for (std::size_t v = 1; v < n; ++v)
            if (deg(v) != deg(0)) return std::nullopt;
        return deg(0);
    };
    r.out_degree = common([&](std::size_t v) { return g.out_degree(v); });
    r.in_degree = common([&](std::size_t v) { return g.in_degree(v); });
    if (g.is_undirected() && !g.has_loops()) r.bipartite = is_bipartite(g);
    r.components = components(g);
    r.twin_classes = twin_classes(g);
    return r;
}

/// Brute-force isomorphism for graphs on at most 10 vertices.
inline bool small_isomorphic(const Graph& a, const Graph& b) {
    constexpr std::size_t limit = 10;
    if (a.size() > limit || b.size() > limit)
        fail(ErrorKind::size_limit, "small_isomorphic is limited to 10 vertices");
    const std::size_t n = a.size();
    if (n != b.size() || a.arc_count() != b.arc_count()) return false;
    auto signature = [](const Graph& g, std::size_t v) {
        return std::make_tuple(g.out_degree(v), g.in_degree(v), g(v, v));
    };
    std::vector<std::size_t> map(n), used(n, 0);
    std::function<bool(std::size_t)> extend = [&](std::size_t u) -> bool {
        if (u == n) return true;
        for (std::size_t w = 0; w < n; ++w) {
            if (used[w] || signature(a, u) != signature(b, w)) continue;
            bool ok = true;
            for (std::size_t x = 0; x < u && ok; ++x)
                ok = a(u, x) == b(w, map[x]) && a(x, u) == b(map[x], w);
            if (!ok) continue;
            map[u] = w;
            used[w] = 1;
            if (extend(u + 1)) return true;
            used[w] = 0;
        }
        return false;
    };
    return extend(0);
}

// ---------------------------------------------------------------------------
// Export

namespace detail {
inline std::string dot_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}
}  // namespace detail

/**
 * DOT text. A fully undirected graph is written as `graph` with `--` edges. DOT
 * cannot mix edge kinds, so any other graph is a `digraph`: single arcs use
 * `->` and opposite pairs are collapsed into one `->` with `dir=both`.
 */
inline std::string to_dot(const Graph& g, const std::string& name = "G") {
    std::ostringstream os;
    const bool undirected = g.is_undirected();
    const std::size_t n = g.size();
    os << (undirected ? "graph " : "digraph ") << detail::dot_quote(name) << " {\n";
    for (std::size_t v = 0; v < n; ++v) os << "  " << v << " [label=" << detail::dot_quote(g.labels()[v]) << "];\n";
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u; v < n; ++v) {
            const bool fwd = g(u, v), back = g(v, u);
            if (undirected) {
                if (fwd) os << "  " << u << " -- " << v << ";\n";
            } else if (u == v) {
                if (fwd) os << "  " << u << " -> " << v << ";\n";
            } else if (fwd && back) {
                os << "  " << u << " -> " << v << " [dir=both];\n";
            } else if (fwd) {
                os << "  " << u << " -> " << v << ";\n";
            } else if (back) {
                os << "  " << v << " -> " << u << ";\n";
            }
        }
    os << "}\n";
    return os.str();
}

inline nlohmann::json to_json(const Graph& g) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t u = 0; u < g.size(); ++u) {
        std::string row(g.size(), '0');
        for (std::size_t v = 0; v < g.size(); ++v)
            if (g(u, v)) row[v] = '1';
        rows.push_back(row);
    }
    return {{"n", g.size()}, {"labels", g.labels()}, {"adjacency", rows}};
}

inline Graph graph_from_json(const nlohmann::json& j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        const auto rows = j.at("adjacency").get<std::vector<std::string>>();
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        if (rows.size() != n) fail(ErrorKind::parse, "graph JSON: row count differs from n");
        std::vector<std::uint8_t> adj(n * n, 0);
        for (std::size_t u = 0; u < n; ++u) {
            if (rows[u].size() != n) fail(ErrorKind::parse, "graph JSON: row " + std::to_string(u) + " has wrong length");
            for (std::size_t v = 0; v < n; ++v) {
                const char c = rows[u][v];
                if (c != '0' && c != '1') fail(ErrorKind::parse, "graph JSON: rows must be bit strings");
                adj[u * n + v] = c == '1';
            }
        }
        return {n, std::move(adj), std::move(labels)};
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, std::string("graph JSON: ") + e.what());
    }
}

}  // namespace spectra_forge
