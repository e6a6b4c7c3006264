#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "spectra_forge/theorems.hpp"

namespace spectra_forge::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_parse_error = 2;
inline constexpr int exit_hypothesis = 3;

inline int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::parse:
    case ErrorKind::invalid_argument: return exit_parse_error;
    case ErrorKind::hypothesis:
    case ErrorKind::size_limit: return exit_hypothesis;
    case ErrorKind::check_failed: return exit_check_failed;
    }
    return exit_check_failed;
}

struct JobSpec {
    std::string command;
    std::string group;
    std::string ring;
    std::string set;
    std::string kind = "diff";
    std::string cross;
    std::string format = "table";
    std::string product;
    std::string factor = "p2";
    std::string graph_file;
    std::string out;
    std::string suite = "all";
    double tol = merge_tolerance;
    std::optional<std::uint64_t> seed;
    std::size_t iterate = 0;
};

inline std::uint64_t resolve_seed(const JobSpec& job) {
    if (job.seed) return *job.seed;
    if (const char* env = std::getenv("SPECTRA_FORGE_SEED")) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        fail(ErrorKind::parse, std::string("SPECTRA_FORGE_SEED is not an unsigned integer: ") + env);
    }
    return default_seed;
}

inline CayleyKind parse_kind(const std::string& s) {
    if (s == "diff" || s == "difference") return CayleyKind::difference;
    if (s == "sum") return CayleyKind::sum;
    fail(ErrorKind::parse, "unknown kind '" + s + "' (diff or sum)");
}

inline CrossSet parse_cross(const std::string& s) {
    if (s == "e" || s == "0") return CrossSet::identity;
    if (s == "S") return CrossSet::connection;
    if (s == "Se" || s == "S0") return CrossSet::connection_with_identity;
    fail(ErrorKind::parse, "unknown di-connection set '" + s + "' (e, S or Se)");
}

inline ProductKind parse_product(const std::string& s) {
    for (ProductKind k : {ProductKind::cartesian, ProductKind::direct, ProductKind::strong, ProductKind::strong_sum})
        if (s == to_string(k)) return k;
    fail(ErrorKind::parse, "unknown product '" + s + "'");
}

struct Instance {
    FiniteGroup group;
    std::optional<FiniteRing> ring;
};

inline Instance resolve_instance(const JobSpec& job) {
    if (!job.ring.empty() && !job.group.empty()) fail(ErrorKind::parse, "give either --group or --ring, not both");
    if (!job.ring.empty()) {
        FiniteRing r = make_ring(job.ring);
        return {r.additive_group(), r};
    }
    if (!job.group.empty()) return {make_group(job.group), std::nullopt};
    fail(ErrorKind::parse, "a --group or --ring descriptor is required");
}

/// Splits at commas outside parentheses.
inline std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

/**
 * Subset descriptors: `units`, `pk:k` (non-zero k-th powers of a field),
 * `gcd:d1,d2,...` (gcd classes of Z_n), `none`, or a comma-separated list of
 * element labels or indices.
 */
inline GroupSubset resolve_set(const std::string& desc, const Instance& inst) {
    const FiniteGroup& g = inst.group;
    if (desc.empty()) fail(ErrorKind::parse, "a --set descriptor is required");
    if (desc == "none") return {g, {}};
    if (desc == "units") {
        if (!inst.ring) fail(ErrorKind::parse, "'units' needs a --ring");
        return units(*inst.ring);
    }
    if (desc.rfind("pk:", 0) == 0) {
        if (!inst.ring) fail(ErrorKind::parse, "'pk:k' needs a --ring");
        i64 k = 0;
        try {
            k = std::stoll(desc.substr(3));
        } catch (const std::exception&) {
            fail(ErrorKind::parse, "bad power in '" + desc + "'");
        }
        return power_residues(*inst.ring, k);
    }
    if (desc.rfind("gcd:", 0) == 0) {
        if (!is_standard_cyclic(g)) fail(ErrorKind::parse, "'gcd:' needs --group cyclic:n");
        std::vector<Element> m;
        for (const auto& tok : split_top_level(desc.substr(4))) {
            i64 d = 0;
            try {
                d = std::stoll(tok);
            } catch (const std::exception&) {
                fail(ErrorKind::parse, "bad divisor '" + tok + "'");
            }
            const auto cls = gcd_class(g, d);
            m.insert(m.end(), cls.members().begin(), cls.members().end());
        }
        return {g, m};
    }
    std::vector<Element> m;
    for (const auto& tok : split_top_level(desc)) {
        std::optional<Element> found;
        for (Element x = 0; x < g.order() && !found; ++x)
            if (g.element_label(x) == tok) found = x;
        if (!found && !tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos) {
            const auto v = std::stoull(tok);
            if (v < g.order()) found = static_cast<Element>(v);
        }
        if (!found) fail(ErrorKind::parse, "'" + tok + "' is not an element of " + g.label());
        m.push_back(*found);
    }
    return {g, m};
}

inline Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::parse, "cannot read graph file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::parse, std::string("graph file is not JSON: ") + e.what());
    }
    return graph_from_json(j);
}

/// The graph a job describes, with its spectrum when one is requested.
struct Built {
    Graph graph;
    std::string name;
    std::function<Spectrum()> spectrum;
};

inline Built build(const JobSpec& job) {
    Built b;
    if (!job.graph_file.empty()) {
        b.graph = load_graph(job.graph_file);
        b.name = job.graph_file;
    } else {
        const Instance inst = resolve_instance(job);
        const GroupSubset s = resolve_set(job.set, inst);
        const CayleyKind kind = parse_kind(job.kind);
        const std::string base = std::string(kind == CayleyKind::difference ? "X" : "X+") + "(" + inst.group.label() + ")";
        if (job.cross.empty()) {
            b.graph = cayley(inst.group, s, kind);
            b.name = base;
            b.spectrum = [g = inst.group, s, kind] { return cayley_spectrum(g, s, kind); };
        } else {
            const CrossSet t = parse_cross(job.cross);
            b.graph = mirror_dicayley(inst.group, s, cross_set(s, t), kind);
            b.name = "M" + base + "[" + to_string(t) + "]";
            b.spectrum = [g = inst.group, s, t, kind] {
                auto m = mirror_spectrum(g, s, cross_set(s, t), kind);
                if (!m) fail(ErrorKind::hypothesis, "directed mirror graph over a non-abelian group has no spectral route");
                return *m;
            };
        }
    }
    if (!job.product.empty()) {
        Graph factor;
        if (job.factor == "p2") factor = path2(false);
        else if (job.factor == "p2loop") factor = path2(true);
        else factor = load_graph(job.factor);
        b.graph = named_product(b.graph, factor, parse_product(job.product));
        b.name += " " + job.product + " " + job.factor;
        b.spectrum = nullptr;
    }
    if (!b.spectrum) b.spectrum = [g = b.graph] { return spectrum_dense_symmetric(g); };
    return b;
}

inline std::string adjacency_rows(const Graph& g, char sep) {
    std::string s;
    for (std::size_t u = 0; u < g.size(); ++u) {
        for (std::size_t v = 0; v < g.size(); ++v) {
            if (v) s += sep;
            s += g(u, v) ? '1' : '0';
        }
        s += '\n';
    }
    return s;
}

inline std::string render_spectrum(const Spectrum& s, const std::string& format) {
    if (format == "table") return to_table(s) + "\n";
    if (format == "json") return to_json(s).dump() + "\n";
    if (format == "csv") return to_csv(s);
    fail(ErrorKind::parse, "format '" + format + "' does not apply to spectra");
}

inline int run_job(const JobSpec& job, std::ostream& out) {
    if (job.tol <= 0 || job.tol > 1e-2) fail(ErrorKind::parse, "--tol must lie in (0, 1e-2]");
    const std::uint64_t seed = resolve_seed(job);
    auto retol = [&](const Spectrum& s) { return job.tol == merge_tolerance ? s : Spectrum(s.expanded(), job.tol); };

    if (job.command == "build") {
        const Built b = build(job);
        if (job.format == "json") out << to_json(b.graph).dump() << "\n";
        else if (job.format == "dot") out << to_dot(b.graph);
        else if (job.format == "csv") out << adjacency_rows(b.graph, ',');
        else if (job.format == "table") out << adjacency_rows(b.graph, ' ');
        else fail(ErrorKind::parse, "unknown format '" + job.format + "'");
        return exit_ok;
    }
    if (job.command == "spectrum") {
        const Built b = build(job);
        out << render_spectrum(retol(b.spectrum()), job.format);
        return exit_ok;
    }
    if (job.command == "compare") {
        JobSpec d = job, s = job;
        d.kind = "diff";
        s.kind = "sum";
        const Built bd = build(d), bs = build(s);
        const Spectrum a = retol(bd.spectrum()), c = retol(bs.spectrum());
        const bool iso = isospectral(a, c, job.tol);
        if (job.format == "json") {
            out << nlohmann::json{{"difference", to_json(a)}, {"sum", to_json(c)}, {"isospectral", iso}}.dump() << "\n";
        } else {
            out << bd.name << " " << to_table(a) << "\n" << bs.name << " " << to_table(c) << "\n";
            out << "isospectral " << (iso ? "yes" : "no") << "\n";
        }
        return exit_ok;
    }
    if (job.command == "verify") {
        bool failed = false;
        for (const auto& r : run_suite(job.suite, seed)) {
            failed = failed || r.outcome == Outcome::fail;
            out << to_json(r).dump() << "\n";
        }
        return failed ? exit_check_failed : exit_ok;
    }
    if (job.command == "report") {
        const Instance inst = resolve_instance(job);
        const GroupSubset s = resolve_set(job.set, inst);
        std::vector<VerificationReport> reps{check_product_decompositions(inst.group, s, seed),
                                             check_spectrum_formulas(inst.group, s, seed),
                                             check_isosp_transfer(inst.group, s, seed),
                                             check_parity_and_symmetry(inst.group, s, seed)};
        for (CrossSet t : cross_sets) reps.push_back(check_cayley_structure(inst.group, s, cross_set(s, t), seed));
        if (s.size() >= 2) reps.push_back(check_crossed_nonisospectrality(inst.group, s, seed));
        std::stable_sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) { return a.claim_id < b.claim_id; });
        bool failed = false;
        for (const auto& r : reps) {
            failed = failed || r.outcome == Outcome::fail;
            out << to_json(r).dump() << "\n";
        }
        return failed ? exit_check_failed : exit_ok;
    }
    if (job.command == "pair") {
        if (job.ring.empty()) fail(ErrorKind::parse, "pair needs --ring");
        const FiniteRing r = make_ring(job.ring);
        const EvenOddPair p = build_even_odd_pair(r, seed);
        std::vector<VerificationReport> iterated;
        if (job.iterate > 0) iterated = iterated_pairs(r, job.iterate, seed);
        bool failed = p.certification.outcome == Outcome::fail;
        for (const auto& it : iterated) failed = failed || it.outcome == Outcome::fail;
        if (job.format == "json") {
            out << to_json(p.certification).dump() << "\n";
            for (const auto& it : iterated) out << to_json(it).dump() << "\n";
        } else {
            const std::pair<const char*, const CertifiedPair*> rows[] = {{"zero", &p.zero_pair}, {"even", &p.even_pair}, {"odd", &p.odd_pair}};
            out << "ring " << r.label() << "\n";
            for (const auto& [name, c] : rows) {
                out << name << " difference " << to_table(retol(c->spectrum)) << "\n";
                out << name << " sum        " << to_table(retol(c->partner_spectrum)) << "\n";
                out << name << " isospectral " << (c->isospectral ? "yes" : "no") << "\n";
            }
            for (const auto& it : iterated)
                out << "iterated n=" << it.instance["n"] << " " << to_string(it.outcome) << " " << it.details["spectrum"].get<std::string>() << "\n";
            out << "certification " << to_string(p.certification.outcome) << "\n";
            if (p.certification.outcome == Outcome::fail)
                for (const auto& w : p.certification.witness) out << "  failed: " << w["assertion"].get<std::string>() << "\n";
        }
        return failed ? exit_check_failed : exit_ok;
    }
    fail(ErrorKind::parse, "unknown command '" + job.command + "'");
}

/// Parses `args` (without the program name), runs the job and returns the exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cayley graphs, mirror di-Cayley graphs and their spectra", "spectra-forge"};
    app.require_subcommand(1);
    JobSpec job;
    std::uint64_t seed = 0;

    auto add_instance = [&](CLI::App* c) {
        c->add_option("--group", job.group, "group descriptor: cyclic:n, prod:(...), dihedral:n, dicyclic:n, sym:n");
        c->add_option("--ring", job.ring, "ring descriptor: zpk:p^k, gf:p^m, gr:p^s:t, quot:p^m:t joined by '*'");
        c->add_option("--set", job.set, "connection set: element list, units, pk:k, gcd:d1,d2,...");
    };
    auto add_graph = [&](CLI::App* c) {
        add_instance(c);
        c->add_option("--kind", job.kind, "diff or sum");
        c->add_option("--T", job.cross, "mirror graph with T = e, S or Se");
        c->add_option("--product", job.product, "cartesian, direct, strong or strong_sum with --factor");
        c->add_option("--factor", job.factor, "p2, p2loop or a graph JSON file");
        c->add_option("--graph-file", job.graph_file, "graph JSON file instead of a descriptor");
    };
    auto add_common = [&](CLI::App* c) {
        c->add_option("--format", job.format, "json, csv, dot or table");
        c->add_option("--tol", job.tol, "eigenvalue merge tolerance");
        c->add_option("--seed", seed, "seed for randomized suites");
        c->add_option("--out", job.out, "write output to this file");
    };

    auto* b = app.add_subcommand("build", "build a graph and export it");
    add_graph(b);
    add_common(b);
    auto* s = app.add_subcommand("spectrum", "spectrum of a graph");
    add_graph(s);
    add_common(s);
    auto* c = app.add_subcommand("compare", "difference against sum version of a graph");
    add_graph(c);
    add_common(c);
    auto* v = app.add_subcommand("verify", "run a verification suite");
    v->add_option("--suite", job.suite, "products, structure, formulas, crossed, integrality, examples or all");
    add_common(v);
    auto* p = app.add_subcommand("pair", "even and odd isospectral pairs over a ring");
    p->add_option("--ring", job.ring, "ring descriptor")->required();
    p->add_option("--iterate", job.iterate, "also certify the pairs over G x Z2^n for n up to this value");
    add_common(p);
    auto* r = app.add_subcommand("report", "all checks on one instance");
    add_instance(r);
    add_common(r);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_parse_error;
    }
    job.command = app.get_subcommands().front()->get_name();
    if (app.get_subcommands().front()->count("--seed") > 0) job.seed = seed;

    try {
        if (job.out.empty()) return run_job(job, out);
        std::ostringstream buffer;
        const int status = run_job(job, buffer);
        std::ofstream file(job.out);
        if (!file) fail(ErrorKind::parse, "cannot write " + job.out);
        file << buffer.str();
        return status;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    }
}

}  // namespace spectra_forge::cli
