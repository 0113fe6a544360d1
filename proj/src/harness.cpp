#include "qk/harness.hpp"

#include "qk/errors.hpp"
#include "qk/quasi_kernel.hpp"
#include "qk/random.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

namespace qk::harness {

Digraph gen_cycle_union(std::span<const unsigned> lengths) {
    std::vector<Arc> arcs;
    Vertex base = 0;
    for (unsigned length : lengths) {
        if (length != 2 && length != 4)
            throw PreconditionError("cycle lengths must be 2 or 4 (got " + std::to_string(length) + ")");
        for (Vertex i = 0; i < length; ++i)
            arcs.emplace_back(base + i, base + (i + 1) % length);
        base += length;
    }
    return Digraph::from_edge_list(base, arcs);
}

Digraph gen_star_triangle(std::size_t s) {
    if (s == 0)
        throw PreconditionError("star-into-triangle needs at least one source");
    const auto t = static_cast<Vertex>(s);
    std::vector<Arc> arcs{{t, t + 1}, {t + 1, t + 2}, {t + 2, t}};
    for (Vertex i = 0; i < s; ++i)
        arcs.emplace_back(i, t);
    return Digraph::from_edge_list(s + 3, arcs);
}

Digraph gen_bipartite_orientation(std::size_t s, std::size_t t, std::span<const std::pair<Vertex, Vertex>> edges) {
    std::vector<Arc> arcs;
    for (const auto& [i, j] : edges) {
        if (i >= s || j >= t)
            throw PreconditionError("edge (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") does not join part S to part T");
        arcs.emplace_back(i, static_cast<Vertex>(s + j));
    }
    Digraph d = Digraph::from_edge_list(s + t, arcs);
    if (s + t > 0 && weakly_connected_components(d).size() != 1)
        throw PreconditionError("bipartite orientation must have a connected underlying graph");
    return d;
}

Digraph gen_random(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0))
        throw PreconditionError("arc probability must lie in [0, 1]");
    Xorshift64Star rng(seed);
    std::vector<Arc> arcs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            if (u != v && rng.next_double() < p)
                arcs.emplace_back(u, v);
    return Digraph::from_edge_list(n, arcs);
}

Digraph gen_random_arcs(std::size_t n, std::size_t m, std::uint64_t seed) {
    if (n < 2 && m > 0)
        throw PreconditionError("random arcs need at least two vertices");
    Xorshift64Star rng(seed);
    std::vector<Arc> arcs;
    arcs.reserve(m);
    while (arcs.size() < m) {
        auto u = static_cast<Vertex>(rng.below(n));
        auto v = static_cast<Vertex>(rng.below(n));
        if (u != v)
            arcs.emplace_back(u, v);
    }
    return Digraph::from_edge_list(n, arcs);
}

Digraph gen_random_kpartite_orientation(std::size_t n, std::size_t parts, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0))
        throw PreconditionError("edge probability must lie in [0, 1]");
    if (parts == 0 && n > 0)
        throw PreconditionError("need at least one part");
    Xorshift64Star rng(seed);
    std::vector<std::size_t> part(n);
    for (auto& x : part)
        x = rng.below(parts);
    std::vector<Arc> arcs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            if (part[u] == part[v] || !(rng.next_double() < p))
                continue;
            if (rng.next() >> 63)
                arcs.emplace_back(v, u);
            else
                arcs.emplace_back(u, v);
        }
    return Digraph::from_edge_list(n, arcs);
}

std::uint64_t digraph_count(std::size_t n) {
    if (n > kEnumerationCap)
        throw CapExceeded("exhaustive enumeration is capped at n = " + std::to_string(kEnumerationCap));
    return std::uint64_t{1} << (n * (n - (n > 0 ? 1 : 0)));
}

Digraph digraph_from_code(std::size_t n, std::uint64_t code) {
    if (code >= digraph_count(n))
        throw PreconditionError("digraph code out of range");
    std::vector<Arc> arcs;
    unsigned shift = 0;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j, shift += 2) {
            const auto state = (code >> shift) & 3u;
            if (state & 1u)
                arcs.emplace_back(i, j);
            if (state & 2u)
                arcs.emplace_back(j, i);
        }
    return Digraph::from_edge_list(n, arcs);
}

void enumerate_digraphs(std::size_t n, const std::function<void(std::uint64_t, const Digraph&)>& visit) {
    const std::uint64_t count = digraph_count(n);
    for (std::uint64_t code = 0; code < count; ++code)
        visit(code, digraph_from_code(n, code));
}

SweepMode parse_mode(std::string_view name) {
    if (name == "conjecture2")
        return SweepMode::conjecture2;
    if (name == "conjecture3")
        return SweepMode::conjecture3;
    throw Error("unknown sweep mode '" + std::string(name) + "' (expected conjecture2 or conjecture3)");
}

SweepEngine parse_engine(std::string_view name) {
    if (name == "oracle")
        return SweepEngine::oracle;
    if (name == "solver")
        return SweepEngine::solver;
    throw Error("unknown sweep engine '" + std::string(name) + "' (expected oracle or solver)");
}

namespace {

bool min_outdegree_positive(const Digraph& d) {
    for (Vertex v = 0; v < d.vertex_count(); ++v)
        if (d.out_degree(v) == 0)
            return false;
    return true;
}

struct Outcome {
    SweepRow row;
    bool construction_failed = false;
};

std::optional<Outcome> run_instance(const SweepConfig& config, std::size_t n, std::uint64_t code) {
    const Digraph d = digraph_from_code(n, code);
    if (config.mode == SweepMode::conjecture2 && !min_outdegree_positive(d))
        return std::nullopt;

    Outcome out;
    SweepRow& row = out.row;
    row.instance_id = std::to_string(n) + ":" + std::to_string(code);
    row.n = n;
    row.m = d.arc_count();
    row.num_sources = sources(d).size();
    row.bound_numerator =
        config.mode == SweepMode::conjecture2 ? static_cast<std::int64_t>(n) : bound_numerator(d);

    const auto start = std::chrono::steady_clock::now();
    VertexSet k(n);
    if (config.engine == SweepEngine::oracle) {
        k = min_quasi_kernel(d, config.solve.oracle_cap);
        row.method = "min_oracle";
    } else {
        try {
            SolveResult result = solve(d, config.solve);
            k = result.certificate.kernel_set;
            row.method = result.certificate.method;
        } catch (const ConstructionError&) {
            out.construction_failed = true;
            row.method = "construction_error";
        }
    }
    if (config.timings)
        row.micros = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count());
    row.qk_size = k.size();
    row.valid = !out.construction_failed && is_quasi_kernel(d, k);
    row.within_bound = row.valid && 2 * static_cast<std::int64_t>(row.qk_size) <= row.bound_numerator;
    return out;
}

} // namespace

SweepReport sweep(const SweepConfig& config) {
    if (config.n_max > kEnumerationCap)
        throw CapExceeded("exhaustive sweeps are capped at n = " + std::to_string(kEnumerationCap));

    std::vector<std::pair<std::size_t, std::uint64_t>> blocks;  // (n, first global index)
    std::uint64_t total = 0;
    for (std::size_t n = config.n_min; n <= config.n_max; ++n) {
        blocks.emplace_back(n, total);
        total += digraph_count(n);
    }
    auto locate = [&](std::uint64_t index) {
        auto it = std::upper_bound(blocks.begin(), blocks.end(), index,
                                   [](std::uint64_t i, const auto& b) { return i < b.second; });
        --it;
        return std::pair<std::size_t, std::uint64_t>{it->first, index - it->second};
    };

    std::vector<std::optional<Outcome>> outcomes(total);
    const std::size_t jobs = std::max<std::size_t>(1, std::min<std::uint64_t>(config.jobs, std::max<std::uint64_t>(total, 1)));
    auto work = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            auto [n, code] = locate(i);
            outcomes[i] = run_instance(config, n, code);
        }
    };
    const auto start = std::chrono::steady_clock::now();
    if (jobs == 1) {
        work(0, total);
    } else {
        std::vector<std::thread> threads;
        const std::uint64_t chunk = (total + jobs - 1) / jobs;
        for (std::size_t j = 0; j < jobs; ++j) {
            const std::uint64_t begin = std::min<std::uint64_t>(total, j * chunk);
            const std::uint64_t end = std::min<std::uint64_t>(total, begin + chunk);
            threads.emplace_back(work, begin, end);
        }
        for (auto& t : threads)
            t.join();
    }

    SweepReport report;
    report.config = config;
    for (auto& outcome : outcomes) {
        if (!outcome)
            continue;
        SweepRow& row = outcome->row;
        ++report.instance_count;
        if (outcome->construction_failed)
            ++report.construction_failures;
        if (!row.within_bound)
            report.violations.push_back({row.instance_id, row.qk_size, row.bound_numerator});
        if (row.within_bound && 2 * static_cast<std::int64_t>(row.qk_size) == row.bound_numerator)
            ++report.tight_count;
        if (row.bound_numerator > 0)
            report.max_ratio = std::max(report.max_ratio, 2.0 * static_cast<double>(row.qk_size) /
                                                              static_cast<double>(row.bound_numerator));
        report.rows.push_back(std::move(row));
    }
    if (config.timings)
        report.total_micros = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count());
    return report;
}

namespace {

std::string_view mode_name(SweepMode m) { return m == SweepMode::conjecture2 ? "conjecture2" : "conjecture3"; }
std::string_view engine_name(SweepEngine e) { return e == SweepEngine::oracle ? "oracle" : "solver"; }

std::string format_ratio(double ratio) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(6) << ratio;
    return s.str();
}

} // namespace

void write_csv(std::ostream& out, const SweepReport& report) {
    out << "instance_id,n,m,num_sources,bound_numerator,qk_size,method,valid,within_bound,micros\n";
    for (const auto& r : report.rows)
        out << r.instance_id << ',' << r.n << ',' << r.m << ',' << r.num_sources << ',' << r.bound_numerator << ','
            << r.qk_size << ',' << r.method << ',' << (r.valid ? "true" : "false") << ','
            << (r.within_bound ? "true" : "false") << ',' << r.micros << '\n';
}

void write_text(std::ostream& out, const SweepReport& report) {
    out << "mode " << mode_name(report.config.mode) << '\n'
        << "engine " << engine_name(report.config.engine) << '\n'
        << "n_range " << report.config.n_min << ' ' << report.config.n_max << '\n'
        << "seed " << report.config.solve.coloring.seed << '\n'
        << "instances " << report.instance_count << '\n'
        << "violations " << report.violations.size() << '\n'
        << "tight " << report.tight_count << '\n'
        << "max_ratio " << format_ratio(report.max_ratio) << '\n'
        << "construction_failures " << report.construction_failures << '\n';
    if (report.config.timings)
        out << "total_micros " << report.total_micros << '\n';
    for (const auto& v : report.violations)
        out << "violation " << v.instance_id << " qk_size " << v.qk_size << " bound_numerator " << v.bound_numerator
            << '\n';
}

nlohmann::json to_json(const SweepReport& report) {
    nlohmann::json j;
    j["mode"] = mode_name(report.config.mode);
    j["engine"] = engine_name(report.config.engine);
    j["n_min"] = report.config.n_min;
    j["n_max"] = report.config.n_max;
    j["seed"] = report.config.solve.coloring.seed;
    j["instance_count"] = report.instance_count;
    j["tight_count"] = report.tight_count;
    j["max_ratio"] = format_ratio(report.max_ratio);
    j["construction_failures"] = report.construction_failures;
    j["total_micros"] = report.total_micros;
    auto& violations = j["violations"] = nlohmann::json::array();
    for (const auto& v : report.violations)
        violations.push_back(
            {{"instance_id", v.instance_id}, {"qk_size", v.qk_size}, {"bound_numerator", v.bound_numerator}});
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"instance_id", r.instance_id},
                        {"n", r.n},
                        {"m", r.m},
                        {"num_sources", r.num_sources},
                        {"bound_numerator", r.bound_numerator},
                        {"qk_size", r.qk_size},
                        {"method", r.method},
                        {"valid", r.valid},
                        {"within_bound", r.within_bound},
                        {"micros", r.micros}});
    return j;
}

} // namespace qk::harness
