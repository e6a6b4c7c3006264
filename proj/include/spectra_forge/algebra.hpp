#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spectra_forge/error.hpp"
#include "spectra_forge/number_theory.hpp"

namespace spectra_forge {

using Element = std::uint32_t;

/**
 * A finite group stored as an explicit multiplication table.
 *
 * Copies are cheap handles onto shared immutable data. For abelian groups a
 * basis is computed whose orders are the invariant factors d1 | d2 | ... | dk,
 * together with the coordinates of every element in that basis.
 */
class FiniteGroup {
public:
    static constexpr std::size_t max_order = 10000;
    static constexpr std::size_t exhaustive_check_limit = 512;

    /// Validates the table and derives identity, inverses and abelian structure.
    /// `basis_hint` may name generators of an abelian presentation; it is used
    /// when its orders form a divisibility chain after sorting.
    FiniteGroup(std::string label, std::size_t n, std::vector<std::uint16_t> table,
                std::vector<std::string> element_labels = {}, std::vector<Element> basis_hint = {});

    std::size_t order() const { return d_->n; }
    const std::string& label() const { return d_->label; }
    Element identity() const { return d_->identity; }

    Element combine(Element g, Element h) const {
        check_index(g);
        check_index(h);
        return d_->table[static_cast<std::size_t>(g) * d_->n + h];
    }
    Element invert(Element g) const {
        check_index(g);
        return d_->inverse[g];
    }
    Element power(Element g, i64 k) const;
    std::size_t element_order(Element g) const {
        check_index(g);
        return d_->orders[g];
    }
    const std::string& element_label(Element g) const {
        check_index(g);
        return d_->labels[g];
    }

    bool is_abelian() const { return d_->abelian; }
    /// Invariant factors in divisibility order; empty for non-abelian groups
    /// and for the trivial group.
    const std::vector<std::uint32_t>& invariant_factors() const { return d_->factors; }
    const std::vector<Element>& abelian_basis() const { return d_->basis; }
    /// Coordinates of g with respect to abelian_basis().
    std::vector<std::uint32_t> coordinates(Element g) const;
    /// Exponent of an abelian group (largest invariant factor, 1 if trivial).
    std::uint32_t exponent() const { return d_->factors.empty() ? 1 : d_->factors.back(); }

    /// Structural equality: same handle or identical tables.
    bool same_as(const FiniteGroup& other) const {
        return d_ == other.d_ || (d_->n == other.d_->n && d_->table == other.d_->table);
    }

    std::vector<Element> elements() const {
        std::vector<Element> out(d_->n);
        std::iota(out.begin(), out.end(), Element{0});
        return out;
    }

private:
    struct Data {
        std::string label;
        std::size_t n = 0;
        std::vector<std::uint16_t> table;
        std::vector<Element> inverse;
        std::vector<std::uint32_t> orders;
        std::vector<std::string> labels;
        Element identity = 0;
        bool abelian = false;
        std::vector<std::uint32_t> factors;
        std::vector<Element> basis;
        std::vector<std::uint32_t> coords;  // n rows of factors.size() entries
    };

    void check_index(Element g) const {
        if (g >= d_->n)
            fail(ErrorKind::invalid_argument,
                 "element index " + std::to_string(g) + " out of range for " + d_->label);
    }

    static void validate_table(Data& d);
    static void compute_abelian_structure(Data& d, const std::vector<Element>& hint);

    std::shared_ptr<const Data> d_;
};

namespace detail {

inline Element table_op(const std::vector<std::uint16_t>& t, std::size_t n, Element a, Element b) {
    return t[static_cast<std::size_t>(a) * n + b];
}

// Subgroup generated by a set of elements in an abelian group, as a bitmap.
inline std::vector<char> span(const std::vector<std::uint16_t>& t, std::size_t n, Element e,
                              const std::vector<Element>& gens) {
    std::vector<char> in(n, 0);
    std::vector<Element> list{e};
    in[e] = 1;
    for (Element g : gens) {
        std::size_t before = list.size();
        for (std::size_t i = 0; i < before; ++i) {
            Element x = table_op(t, n, list[i], g);
            while (x != list[i]) {
                if (!in[x]) {
                    in[x] = 1;
                    list.push_back(x);
                }
                x = table_op(t, n, x, g);
            }
        }
    }
    return in;
}

inline std::size_t span_size(const std::vector<char>& bits) {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1));
}

}  // namespace detail

inline FiniteGroup::FiniteGroup(std::string label, std::size_t n, std::vector<std::uint16_t> table,
                                std::vector<std::string> element_labels, std::vector<Element> basis_hint) {
    if (n == 0) fail(ErrorKind::invalid_argument, "group order must be positive");
    if (n > max_order)
        fail(ErrorKind::size_limit, "group order " + std::to_string(n) + " exceeds " + std::to_string(max_order));
    if (table.size() != n * n) fail(ErrorKind::invalid_argument, "multiplication table has wrong size");
    auto d = std::make_shared<Data>();
    d->label = std::move(label);
    d->n = n;
    d->table = std::move(table);
    if (element_labels.empty()) {
        element_labels.reserve(n);
        for (std::size_t i = 0; i < n; ++i) element_labels.push_back(std::to_string(i));
    }
    if (element_labels.size() != n) fail(ErrorKind::invalid_argument, "element label count mismatch");
    d->labels = std::move(element_labels);
    validate_table(*d);
    if (d->abelian) compute_abelian_structure(*d, basis_hint);
    d_ = std::move(d);
}

inline void FiniteGroup::validate_table(Data& d) {
    const std::size_t n = d.n;
    const auto& t = d.table;
    for (auto v : t)
        if (v >= n) fail(ErrorKind::invalid_argument, "table entry out of range");

    std::optional<Element> id;
    for (Element e = 0; e < n && !id; ++e) {
        bool ok = true;
        for (Element g = 0; g < n && ok; ++g)
            ok = detail::table_op(t, n, e, g) == g && detail::table_op(t, n, g, e) == g;
        if (ok) id = e;
    }
    if (!id) fail(ErrorKind::invalid_argument, "table has no two-sided identity");
    d.identity = *id;

    d.inverse.assign(n, 0);
    for (Element g = 0; g < n; ++g) {
        bool found = false;
        for (Element h = 0; h < n; ++h) {
            if (detail::table_op(t, n, g, h) == *id) {
                if (detail::table_op(t, n, h, g) != *id)
                    fail(ErrorKind::invalid_argument, "one-sided inverse in table");
                d.inverse[g] = h;
                found = true;
                break;
            }
        }
        if (!found) fail(ErrorKind::invalid_argument, "element without inverse");
    }

    auto assoc = [&](Element a, Element b, Element c) {
        return detail::table_op(t, n, detail::table_op(t, n, a, b), c) ==
               detail::table_op(t, n, a, detail::table_op(t, n, b, c));
    };
    if (n <= exhaustive_check_limit) {
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                for (Element c = 0; c < n; ++c)
                    if (!assoc(a, b, c)) fail(ErrorKind::invalid_argument, "table is not associative");
    } else {
        std::mt19937_64 rng(0x5eedULL + n);
        std::uniform_int_distribution<Element> pick(0, static_cast<Element>(n - 1));
        for (int i = 0; i < 200000; ++i)
            if (!assoc(pick(rng), pick(rng), pick(rng)))
                fail(ErrorKind::invalid_argument, "table is not associative");
    }

    d.orders.assign(n, 0);
    for (Element g = 0; g < n; ++g) {
        std::uint32_t k = 1;
        Element x = g;
        while (x != *id) {
            x = detail::table_op(t, n, x, g);
            ++k;
        }
        d.orders[g] = k;
    }

    d.abelian = true;
    for (Element a = 0; a < n && d.abelian; ++a)
        for (Element b = a + 1; b < n && d.abelian; ++b)
            d.abelian = detail::table_op(t, n, a, b) == detail::table_op(t, n, b, a);
}

inline void FiniteGroup::compute_abelian_structure(Data& d, const std::vector<Element>& hint) {
    const std::size_t n = d.n;
    const auto& t = d.table;
    const Element e = d.identity;
    std::vector<Element> basis;

    auto chain_ok = [&](std::vector<Element>& gens) {
        gens.erase(std::remove_if(gens.begin(), gens.end(), [&](Element g) { return g >= n || d.orders[g] == 1; }),
                   gens.end());
        std::stable_sort(gens.begin(), gens.end(), [&](Element a, Element b) { return d.orders[a] < d.orders[b]; });
        std::size_t prod = 1;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (i > 0 && d.orders[gens[i]] % d.orders[gens[i - 1]] != 0) return false;
            prod *= d.orders[gens[i]];
            if (prod > n) return false;
        }
        return prod == n && detail::span_size(detail::span(t, n, e, gens)) == n;
    };

    std::vector<Element> h = hint;
    if (!h.empty() && chain_ok(h)) {
        basis = h;
    } else {
        // Cyclic groups keep a single generator: the first element of full order.
        for (Element g = 0; g < n && basis.empty() && n > 1; ++g)
            if (d.orders[g] == n) basis.push_back(g);
        if (basis.empty() && n > 1) {
            // Decompose each Sylow subgroup, then merge by the Chinese remainder theorem.
            std::vector<std::vector<Element>> sylow_bases;  // each sorted by decreasing order
            for (auto [p, a] : factorize(static_cast<i64>(n))) {
                const std::size_t pa = static_cast<std::size_t>(ipow(p, a));
                auto is_p_elem = [&](Element g) {
                    std::uint32_t o = d.orders[g];
                    while (o % p == 0) o /= static_cast<std::uint32_t>(p);
                    return o == 1;
                };
                std::vector<Element> cand;
                for (Element g = 0; g < n; ++g)
                    if (g != e && is_p_elem(g)) cand.push_back(g);
                std::stable_sort(cand.begin(), cand.end(),
                                 [&](Element x, Element y) { return d.orders[x] > d.orders[y]; });
                // Backtracking search for an independent generating set, taken in
                // decreasing order of element order; the first candidate almost always works.
                std::vector<Element> chosen;
                std::vector<std::vector<char>> spans{detail::span(t, n, e, {})};
                std::vector<std::size_t> cursor{0};
                while (true) {
                    std::size_t size = detail::span_size(spans.back());
                    if (size == pa) break;
                    bool advanced = false;
                    for (std::size_t i = cursor.back(); i < cand.size(); ++i) {
                        Element g = cand[i];
                        if (!chosen.empty() && d.orders[g] > d.orders[chosen.back()]) continue;
                        auto next = chosen;
                        next.push_back(g);
                        auto sp = detail::span(t, n, e, next);
                        if (detail::span_size(sp) != size * d.orders[g]) continue;
                        cursor.back() = i + 1;
                        chosen.push_back(g);
                        spans.push_back(std::move(sp));
                        cursor.push_back(0);
                        advanced = true;
                        break;
                    }
                    if (!advanced) {
                        if (chosen.empty()) fail(ErrorKind::check_failed, "abelian decomposition failed");
                        chosen.pop_back();
                        spans.pop_back();
                        cursor.pop_back();
                    }
                }
                sylow_bases.push_back(chosen);
            }
            std::size_t k = 0;
            for (auto& sb : sylow_bases) k = std::max(k, sb.size());
            // Largest invariant factor combines the largest cyclic factor of every Sylow subgroup.
            for (std::size_t j = 0; j < k; ++j) {
                Element g = e;
                for (auto& sb : sylow_bases)
                    if (j < sb.size()) g = detail::table_op(t, n, g, sb[j]);
                basis.push_back(g);
            }
            std::reverse(basis.begin(), basis.end());
        }
    }

    d.basis = basis;
    d.factors.clear();
    for (Element g : basis) d.factors.push_back(d.orders[g]);

    const std::size_t k = basis.size();
    d.coords.assign(n * k, 0);
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> c(k, 0);
    Element x = e;
    for (std::size_t idx = 0; idx < n; ++idx) {
        if (seen[x]) fail(ErrorKind::check_failed, "abelian basis is not independent");
        seen[x] = 1;
        std::copy(c.begin(), c.end(), d.coords.begin() + static_cast<std::ptrdiff_t>(x * k));
        // Incrementing digit j multiplies by basis[j]; a wrap-around lands on g^{d_j} = e.
        for (std::size_t j = k; j-- > 0;) {
            x = detail::table_op(t, n, x, basis[j]);
            if (++c[j] < d.factors[j]) break;
            c[j] = 0;
        }
    }
}

inline Element FiniteGroup::power(Element g, i64 k) const {
    check_index(g);
    i64 o = static_cast<i64>(d_->orders[g]);
    i64 r = mod(k, o);
    Element x = d_->identity;
    for (i64 i = 0; i < r; ++i) x = detail::table_op(d_->table, d_->n, x, g);
    return x;
}

inline std::vector<std::uint32_t> FiniteGroup::coordinates(Element g) const {
    check_index(g);
    if (!d_->abelian) fail(ErrorKind::hypothesis, "coordinates require an abelian group");
    const std::size_t k = d_->factors.size();
    auto first = d_->coords.begin() + static_cast<std::ptrdiff_t>(g * k);
    return {first, first + static_cast<std::ptrdiff_t>(k)};
}

// ---------------------------------------------------------------------------
// Constructors

inline FiniteGroup cyclic(std::size_t n) {
    if (n == 0) fail(ErrorKind::invalid_argument, "cyclic group needs n >= 1");
    if (n > FiniteGroup::max_order) fail(ErrorKind::size_limit, "cyclic group order too large");
    std::vector<std::uint16_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<std::uint16_t>((a + b) % n);
    std::vector<Element> hint;
    if (n > 1) hint.push_back(1);
    return FiniteGroup("Z" + std::to_string(n), n, std::move(t), {}, hint);
}

/// Direct product in mixed-radix order, first factor most significant.
inline FiniteGroup direct_product(const std::vector<FiniteGroup>& factors) {
    if (factors.empty()) fail(ErrorKind::invalid_argument, "direct product needs at least one factor");
    std::size_t n = 1;
    for (const auto& f : factors) {
        n *= f.order();
        if (n > FiniteGroup::max_order) fail(ErrorKind::size_limit, "product group order too large");
    }
    const std::size_t k = factors.size();
    std::vector<std::size_t> stride(k, 1);
    for (std::size_t i = k - 1; i-- > 0;) stride[i] = stride[i + 1] * factors[i + 1].order();
    auto digit = [&](std::size_t x, std::size_t i) { return (x / stride[i]) % factors[i].order(); };

    std::vector<std::uint16_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t c = 0;
            for (std::size_t i = 0; i < k; ++i)
                c += stride[i] * factors[i].combine(static_cast<Element>(digit(a, i)), static_cast<Element>(digit(b, i)));
            t[a * n + b] = static_cast<std::uint16_t>(c);
        }

    std::vector<std::string> labels(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::string s = "(";
        for (std::size_t i = 0; i < k; ++i) {
            if (i) s += ",";
            s += factors[i].element_label(static_cast<Element>(digit(x, i)));
        }
        labels[x] = s + ")";
    }

    std::string label;
    std::vector<Element> hint;
    bool all_abelian = true;
    for (std::size_t i = 0; i < k; ++i) {
        if (i) label += "x";
        label += factors[i].label();
        all_abelian = all_abelian && factors[i].is_abelian();
    }
    if (all_abelian) {
        for (std::size_t i = 0; i < k; ++i) {
            for (Element g : factors[i].abelian_basis()) {
                std::size_t x = 0;
                for (std::size_t j = 0; j < k; ++j) x += stride[j] * (j == i ? g : factors[j].identity());
                hint.push_back(static_cast<Element>(x));
            }
        }
    }
    return FiniteGroup(label, n, std::move(t), std::move(labels), hint);
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) { return direct_product({a, b}); }

/// Dihedral group of order 2n; element a^i b^s has index 2i+s.
inline FiniteGroup dihedral(std::size_t n) {
    if (n < 2) fail(ErrorKind::invalid_argument, "dihedral group needs n >= 2");
    const std::size_t order = 2 * n;
    if (order > FiniteGroup::max_order) fail(ErrorKind::size_limit, "dihedral group order too large");
    std::vector<std::uint16_t> t(order * order);
    std::vector<std::string> labels(order);
    for (std::size_t x = 0; x < order; ++x) {
        std::size_t i = x / 2, s = x % 2;
        labels[x] = "a^" + std::to_string(i) + (s ? "b" : "");
        for (std::size_t y = 0; y < order; ++y) {
            std::size_t j = y / 2, u = y % 2;
            std::size_t r = s ? (i + n - j) % n : (i + j) % n;
            t[x * order + y] = static_cast<std::uint16_t>(2 * r + ((s + u) % 2));
        }
    }
    return FiniteGroup("D" + std::to_string(n), order, std::move(t), std::move(labels));
}

/// Dicyclic group of order 4n: a^{2n} = 1, b^2 = a^n, b^{-1} a b = a^{-1}.
/// Element a^i b^s has index 2i+s.
inline FiniteGroup dicyclic(std::size_t n) {
    if (n < 2) fail(ErrorKind::invalid_argument, "dicyclic group needs n >= 2");
    const std::size_t m = 2 * n, order = 4 * n;
    if (order > FiniteGroup::max_order) fail(ErrorKind::size_limit, "dicyclic group order too large");
    std::vector<std::uint16_t> t(order * order);
    std::vector<std::string> labels(order);
    for (std::size_t x = 0; x < order; ++x) {
        std::size_t i = x / 2, s = x % 2;
        labels[x] = "a^" + std::to_string(i) + (s ? "b" : "");
        for (std::size_t y = 0; y < order; ++y) {
            std::size_t j = y / 2, u = y % 2;
            std::size_t r, v;
            if (s == 0) {
                r = (i + j) % m;
                v = u;
            } else if (u == 0) {
                r = (i + m - j) % m;
                v = 1;
            } else {
                r = (i + m - j + n) % m;
                v = 0;
            }
            t[x * order + y] = static_cast<std::uint16_t>(2 * r + v);
        }
    }
    return FiniteGroup("Dic" + std::to_string(n), order, std::move(t), std::move(labels));
}

/// Symmetric group on n <= 6 points; permutations in lexicographic order,
/// product (s*t)(x) = s(t(x)).
inline FiniteGroup symmetric(std::size_t n) {
    if (n < 1) fail(ErrorKind::invalid_argument, "symmetric group needs n >= 1");
    if (n > 6) fail(ErrorKind::size_limit, "symmetric group limited to n <= 6");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const std::size_t order = perms.size();
    auto index_of = [&](const std::vector<int>& q) {
        return static_cast<std::size_t>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<std::uint16_t> t(order * order);
    std::vector<int> c(n);
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            for (std::size_t x = 0; x < n; ++x) c[x] = perms[a][static_cast<std::size_t>(perms[b][x])];
            t[a * order + b] = static_cast<std::uint16_t>(index_of(c));
        }
    std::vector<std::string> labels(order);
    for (std::size_t a = 0; a < order; ++a) {
        std::string s = "[";
        for (std::size_t x = 0; x < n; ++x) s += (x ? " " : "") + std::to_string(perms[a][x]);
        labels[a] = s + "]";
    }
    return FiniteGroup("S" + std::to_string(n), order, std::move(t), std::move(labels));
}

namespace detail {

struct GroupParser {
    std::string_view s;
    std::size_t pos = 0;

    [[noreturn]] void error(const std::string& msg) const {
        fail(ErrorKind::parse, "group descriptor '" + std::string(s) + "': " + msg + " at offset " + std::to_string(pos));
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    void expect(char c) {
        skip_ws();
        if (pos >= s.size() || s[pos] != c) error(std::string("expected '") + c + "'");
        ++pos;
    }
    std::string word() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
        return std::string(s.substr(start, pos - start));
    }
    std::size_t number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) error("expected a number");
        if (pos - start > 6) error("number too large");
        return std::stoul(std::string(s.substr(start, pos - start)));
    }
    FiniteGroup group() {
        std::string kind = word();
        expect(':');
        if (kind == "prod") {
            expect('(');
            std::vector<FiniteGroup> parts{group()};
            skip_ws();
            while (pos < s.size() && s[pos] == ',') {
                ++pos;
                parts.push_back(group());
                skip_ws();
            }
            expect(')');
            return direct_product(parts);
        }
        std::size_t n = number();
        if (n == 0) error("parameter must be positive");
        if (kind == "cyclic") return cyclic(n);
        if (kind == "dihedral") return dihedral(n);
        if (kind == "dicyclic") return dicyclic(n);
        if (kind == "sym") return symmetric(n);
        error("unknown group kind '" + kind + "'");
    }
};

}  // namespace detail

/// Parses `cyclic:n`, `prod:(spec,spec,...)`, `dihedral:n`, `dicyclic:n`, `sym:n`.
inline FiniteGroup make_group(std::string_view descriptor) {
    detail::GroupParser p{descriptor};
    FiniteGroup g = p.group();
    p.skip_ws();
    if (p.pos != descriptor.size()) p.error("trailing characters");
    return g;
}

// ---------------------------------------------------------------------------
// Subsets

class GroupSubset {
public:
    GroupSubset(FiniteGroup group, std::vector<Element> members) : group_(std::move(group)) {
        for (Element g : members)
            if (g >= group_.order())
                fail(ErrorKind::invalid_argument,
                     "subset member " + std::to_string(g) + " out of range for " + group_.label());
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        members_ = std::move(members);
        mask_.assign(group_.order(), 0);
        for (Element g : members_) mask_[g] = 1;
    }

    const FiniteGroup& group() const { return group_; }
    const std::vector<Element>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(Element g) const { return g < mask_.size() && mask_[g]; }

    bool operator==(const GroupSubset& o) const { return group_.same_as(o.group_) && members_ == o.members_; }

private:
    FiniteGroup group_;
    std::vector<Element> members_;
    std::vector<char> mask_;
};

inline void require_same_group(const FiniteGroup& a, const FiniteGroup& b) {
    if (!a.same_as(b)) fail(ErrorKind::invalid_argument, "mismatched parent group: " + a.label() + " vs " + b.label());
}

inline GroupSubset subset_union(const GroupSubset& a, const GroupSubset& b) {
    require_same_group(a.group(), b.group());
    auto m = a.members();
    m.insert(m.end(), b.members().begin(), b.members().end());
    return {a.group(), m};
}

inline GroupSubset with_identity(const GroupSubset& s) {
    auto m = s.members();
    m.push_back(s.group().identity());
    return {s.group(), m};
}

inline GroupSubset identity_subset(const FiniteGroup& g) { return {g, {g.identity()}}; }

// ---------------------------------------------------------------------------
// Characters

/// χ(g) = exp(2πi Σ a_j g_j / d_j) in the coordinates of the group's abelian basis.
struct AbelianCharacter {
    FiniteGroup group;
    std::vector<std::uint32_t> exponents;

    /// Numerator k of the phase k / exponent(G).
    std::uint32_t phase(Element g) const {
        const auto& d = group.invariant_factors();
        const std::uint64_t L = group.exponent();
        auto c = group.coordinates(g);
        std::uint64_t num = 0;
        for (std::size_t j = 0; j < d.size(); ++j) num += std::uint64_t{exponents[j]} * c[j] * (L / d[j]);
        return static_cast<std::uint32_t>(num % L);
    }

    std::complex<double> operator()(Element g) const {
        return std::polar(1.0, 2.0 * std::numbers::pi * phase(g) / group.exponent());
    }

    bool is_real() const {
        const auto& d = group.invariant_factors();
        for (std::size_t j = 0; j < d.size(); ++j)
            if ((2 * exponents[j]) % d[j] != 0) return false;
        return true;
    }
};

inline std::vector<AbelianCharacter> characters(const FiniteGroup& g) {
    if (!g.is_abelian()) fail(ErrorKind::hypothesis, "characters require an abelian group, got " + g.label());
    const auto& d = g.invariant_factors();
    std::vector<AbelianCharacter> out;
    out.reserve(g.order());
    std::vector<std::uint32_t> a(d.size(), 0);
    for (std::size_t idx = 0; idx < g.order(); ++idx) {
        out.push_back({g, a});
        for (std::size_t j = d.size(); j-- > 0;) {
            if (++a[j] < d[j]) break;
            a[j] = 0;
        }
    }
    return out;
}

inline std::complex<double> character_sum(const AbelianCharacter& chi, const GroupSubset& s) {
    require_same_group(chi.group, s.group());
    std::complex<double> sum{0.0, 0.0};
    for (Element x : s.members()) sum += chi(x);
    return sum;
}

// ---------------------------------------------------------------------------
// Predicates

struct SubsetPredicates {
    bool symmetric = false;
    bool antisymmetric = false;
    bool normal = false;
    bool antinormal = false;
    bool eulerian = false;
    bool contains_identity = false;
};

/// True when every element of s is replaced by each generator of its cyclic subgroup.
inline bool is_power_closed(const GroupSubset& s) {
    const auto& g = s.group();
    for (Element x : s.members()) {
        const std::size_t o = g.element_order(x);
        Element y = x;
        for (std::size_t j = 1; j <= o; ++j) {
            if (std::gcd(j, o) == 1 && !s.contains(y)) return false;
            y = g.combine(y, x);
        }
    }
    return true;
}

inline SubsetPredicates subset_predicates(const GroupSubset& s) {
    const auto& g = s.group();
    SubsetPredicates p;
    p.contains_identity = s.contains(g.identity());
    p.symmetric = std::all_of(s.members().begin(), s.members().end(),
                              [&](Element x) { return s.contains(g.invert(x)); });
    p.antisymmetric = std::none_of(s.members().begin(), s.members().end(),
                                   [&](Element x) { return s.contains(g.invert(x)); });

    auto conj = [&](Element h, Element x) { return g.combine(g.combine(h, x), g.invert(h)); };
    p.normal = true;
    std::vector<char> normalizer(g.order(), 1);
    for (Element h = 0; h < g.order(); ++h)
        for (Element x : s.members())
            if (!s.contains(conj(h, x))) {
                normalizer[h] = 0;  // finite set: hSh^{-1} ⊆ S iff equal
                p.normal = false;
                break;
            }
    p.antinormal = std::none_of(s.members().begin(), s.members().end(), [&](Element x) { return normalizer[x]; });
    p.eulerian = is_power_closed(s);
    return p;
}

/// Whether `g` is the standard cyclic group (element k is the residue k).
inline bool is_standard_cyclic(const FiniteGroup& g) {
    const std::size_t n = g.order();
    if (g.identity() != 0) return false;
    if (n == 1) return true;
    for (Element a = 0; a < n; ++a)
        if (g.combine(a, 1) != (a + 1) % n) return false;
    return true;
}

inline GroupSubset gcd_class(const FiniteGroup& zn, i64 d) {
    if (!is_standard_cyclic(zn)) fail(ErrorKind::hypothesis, "gcd classes need a standard cyclic group");
    const i64 n = static_cast<i64>(zn.order());
    if (d < 1 || d >= n || n % d != 0)
        fail(ErrorKind::invalid_argument, "gcd class: " + std::to_string(d) + " is not a proper divisor of " + std::to_string(n));
    std::vector<Element> m;
    for (i64 a = 1; a < n; ++a)
        if (std::gcd(a, n) == d) m.push_back(static_cast<Element>(a));
    return {zn, m};
}

inline GroupSubset gcd_class(i64 n, i64 d) {
    if (n < 1) fail(ErrorKind::invalid_argument, "modulus must be positive");
    return gcd_class(cyclic(static_cast<std::size_t>(n)), d);
}

struct GcdUnionResult {
    bool is_union = false;
    std::vector<i64> divisors;  ///< D with S = ∪ S_n(d); n itself stands for {0}
    /// When not a union: a member and a non-member sharing the same gcd with n.
    std::optional<std::pair<Element, Element>> counterexample;
};

inline GcdUnionResult is_union_of_gcd_classes(const GroupSubset& s) {
    const auto& g = s.group();
    if (!is_standard_cyclic(g)) fail(ErrorKind::hypothesis, "gcd classes need a standard cyclic group");
    const i64 n = static_cast<i64>(g.order());
    GcdUnionResult r;
    for (Element x : s.members()) {
        i64 d = std::gcd(static_cast<i64>(x), n);
        if (std::find(r.divisors.begin(), r.divisors.end(), d) == r.divisors.end()) r.divisors.push_back(d);
    }
    std::sort(r.divisors.begin(), r.divisors.end());
    for (i64 a = 0; a < n; ++a) {
        i64 d = std::gcd(a, n);
        if (!s.contains(static_cast<Element>(a)) && std::binary_search(r.divisors.begin(), r.divisors.end(), d)) {
            for (Element x : s.members())
                if (std::gcd(static_cast<i64>(x), n) == d) {
                    r.counterexample = std::make_pair(x, static_cast<Element>(a));
                    break;
                }
            r.divisors.clear();
            return r;
        }
    }
    r.is_union = true;
    return r;
}

/// Membership in the Boolean algebra generated by the subgroups of an abelian
/// group: S must be a union of atoms {h : <h> = <g>}. Atoms are found by
/// comparing the cyclic subgroups themselves.
inline bool boolean_algebra_member(const FiniteGroup& g, const GroupSubset& s) {
    require_same_group(g, s.group());
    if (!g.is_abelian()) fail(ErrorKind::hypothesis, "Boolean algebra test requires an abelian group");
    const std::size_t n = g.order();
    std::vector<std::vector<Element>> cyc(n);
    for (Element x = 0; x < n; ++x) {
        Element y = g.identity();
        do {
            cyc[x].push_back(y);
            y = g.combine(y, x);
        } while (y != g.identity());
        std::sort(cyc[x].begin(), cyc[x].end());
    }
    for (Element x : s.members())
        for (Element h = 0; h < n; ++h)
            if (cyc[h].size() == cyc[x].size() && cyc[h] == cyc[x] && !s.contains(h)) return false;
    return true;
}

/// c(r, n) = Σ_{1≤j≤n, gcd(j,n)=1} ω^{rj} with ω = e^{2πi/n}.
inline i64 ramanujan_sum(i64 r, i64 n) {
    if (n < 1) fail(ErrorKind::invalid_argument, "ramanujan_sum: n must be positive");
    std::complex<double> sum{0.0, 0.0};
    for (i64 j = 1; j <= n; ++j)
        if (std::gcd(j, n) == 1) sum += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mod(r * j, n)) / n);
    const double re = std::round(sum.real());
    if (std::abs(sum.imag()) >= 1e-9 || std::abs(sum.real() - re) >= 1e-9)
        fail(ErrorKind::check_failed, "ramanujan_sum did not cancel to an integer");
    return static_cast<i64>(re);
}

}  // namespace spectra_forge
