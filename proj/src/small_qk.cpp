#include "qk/small_qk.hpp"

#include "qk/errors.hpp"
#include "qk/json.hpp"

#include <algorithm>
#include <string>

namespace qk {

void to_json(nlohmann::json& j, const Theorem4Trace& trace) {
    j = nlohmann::json{
        {"S", trace.sources},
        {"R", trace.r},
        {"R0", trace.r0},
        {"N_out_R", trace.out_of_r},
        {"D2_vertices", trace.d2_vertices},
        {"S2", trace.s2},
        {"S2_prime", trace.s2_prime},
        {"T2", trace.t2},
        {"branch", trace.branch == Theorem4Branch::k_branch ? "K_branch" : "K_prime_branch"},
        {"W", trace.w ? nlohmann::json(*trace.w) : nlohmann::json(nullptr)},
        {"result", trace.result},
    };
    auto& priv = j["private_neighbors"] = nlohmann::json::array();
    for (const auto& [v, u] : trace.private_neighbors)
        priv.push_back({v, u});
}

VertexSet minimal_covering_subset(const Digraph& d1, const VertexSet& r) {
    if (!is_independent(d1, r))
        throw PreconditionError("minimal_covering_subset requires an independent set");
    // coverage[u]: number of kept members of R with an arc to u. R is
    // independent, so all out-neighbors of a member lie in N+(R).
    std::vector<std::uint32_t> coverage(d1.vertex_count(), 0);
    for (Vertex v : r)
        for (Vertex u : d1.out(v))
            ++coverage[u];

    VertexSet r0 = r;
    auto members = r.members();
    for (auto it = members.rbegin(); it != members.rend(); ++it) {
        auto out = d1.out(*it);
        if (std::all_of(out.begin(), out.end(), [&](Vertex u) { return coverage[u] >= 2; })) {
            r0.erase(*it);
            for (Vertex u : out)
                --coverage[u];
        }
    }
    return r0;
}

std::vector<std::pair<Vertex, Vertex>> private_neighbors(const Digraph& d1, const VertexSet& r0) {
    std::vector<std::pair<Vertex, Vertex>> result;
    for (Vertex v : r0) {
        std::optional<Vertex> witness;
        for (Vertex u : d1.out(v)) {
            auto in = d1.in(u);
            if (std::count_if(in.begin(), in.end(), [&](Vertex x) { return r0.contains(x); }) == 1) {
                witness = u;
                break;
            }
        }
        if (!witness)
            throw ConstructionError("member " + std::to_string(v) + " of R0 has no private out-neighbor");
        result.emplace_back(v, *witness);
    }
    return result;
}

InducedSubdigraph outside_source_closure(const Digraph& d) {
    return induced(d, out_closed(d, sources(d)).complement());
}

namespace {

VertexSet sources_within(const Digraph& d, const VertexSet& region) {
    VertexSet result(d.vertex_count());
    for (Vertex v : region) {
        auto in = d.in(v);
        if (std::none_of(in.begin(), in.end(), [&](Vertex u) { return region.contains(u); }))
            result.insert(v);
    }
    return result;
}

// Kernel of d[part] mapped back into d's numbering.
VertexSet kernel_of_part(const Digraph& d, const VertexSet& part, std::size_t cap, const char* what) {
    auto sub = induced(d, part);
    try {
        return sub.lift(kernel_with_source_peeling(sub.graph, cap), d.vertex_count());
    } catch (const Error& e) {
        throw PreconditionError(std::string("no kernel for ") + what + ": " + e.what());
    }
}

[[noreturn]] void fail(const std::string& what, const Theorem4Trace& trace) {
    throw ConstructionError("small quasi-kernel construction failed: " + what + "; trace: " +
                            nlohmann::json(trace).dump());
}

} // namespace

std::pair<Certificate, Theorem4Trace> theorem4_construct(const Digraph& d, const PartitionWitness& w,
                                                         const Theorem4Options& options) {
    const std::size_t n = d.vertex_count();
    Theorem4Trace trace;
    trace.sources = sources(d);
    const VertexSet out_of_s = out_open(d, trace.sources);
    const auto sub = outside_source_closure(d);
    const Digraph& d1 = sub.graph;
    auto to_d = [&](const VertexSet& local) { return sub.lift(local, n); };

    if (!verify_witness(d1, w))
        throw PreconditionError("partition witness does not certify a kernel-perfect split of D - N+[S]");
    if (!v2_fixpoint_holds(d1, w))
        throw PreconditionError("some V2 vertex has no in-neighbor in V1; apply minimize_v2 first");

    const VertexSet r = kernel_of_part(d1, w.v1, options.exact_kernel_cap, "D[V1]");
    const VertexSet out_of_r = out_open(d1, r);
    const VertexSet r0 = minimal_covering_subset(d1, r);
    trace.r = to_d(r);
    trace.out_of_r = to_d(out_of_r);
    trace.r0 = to_d(r0);

    if (out_open(d1, r0) != out_of_r)
        fail("N+(R0) differs from N+(R)", trace);
    for (const auto& [v, u] : private_neighbors(d1, r0))
        trace.private_neighbors.emplace_back(sub.to_parent[v], sub.to_parent[u]);
    if (r0.size() > out_of_r.size())
        fail("|R0| > |N+(R)|", trace);

    const VertexSet d2 = d1.vertices() - out_closed(d1, r0);
    const VertexSet r_rest = r - r0;
    const VertexSet s2 = sources_within(d1, d2);
    const VertexSet s2_prime = s2 & r_rest;
    const VertexSet t2 = r_rest - s2;
    trace.d2_vertices = to_d(d2);
    trace.s2 = to_d(s2);
    trace.s2_prime = to_d(s2_prime);
    trace.t2 = to_d(t2);

    if (!d2.is_subset_of(w.v2 | r_rest))
        fail("V(D2) is not inside V2 ∪ (R - R0)", trace);
    const VertexSet v2_rest = w.v2 - out_of_r;
    for (Vertex v : t2) {
        auto in = d1.in(v);
        if (std::none_of(in.begin(), in.end(), [&](Vertex u) { return d2.contains(u) && v2_rest.contains(u); }))
            fail("T2 vertex " + std::to_string(sub.to_parent[v]) + " has no in-neighbor in V2 - N+(R)", trace);
    }

    const VertexSet rest = d2 - t2;
    const auto s_count = static_cast<std::int64_t>(trace.sources.size());
    const auto bound = static_cast<std::int64_t>(n) + s_count - static_cast<std::int64_t>(out_of_s.size());
    VertexSet k(n);
    if (t2.size() <= rest.size()) {
        trace.branch = Theorem4Branch::k_branch;
        k = trace.sources | to_d(r0 | t2);
        if (k.size() != trace.sources.size() + r0.size() + t2.size())
            fail("|K| differs from |S| + |R0| + |T2|", trace);
    } else {
        trace.branch = Theorem4Branch::k_prime_branch;
        const VertexSet w_local = kernel_of_part(d1, rest, options.exact_kernel_cap, "D2 - T2");
        const VertexSet w_in_d = to_d(w_local);
        trace.w = w_in_d;
        k = (trace.sources | trace.r0 | w_in_d) - out_open(d, w_in_d);
        if (k.size() > trace.sources.size() + r0.size() + w_local.size())
            fail("|K'| exceeds |S| + |R0| + |W|", trace);
    }
    trace.result = k;

    if (2 * static_cast<std::int64_t>(k.size()) > bound)
        fail("2|K| = " + std::to_string(2 * k.size()) + " exceeds n + |S| - |N+(S)| = " + std::to_string(bound), trace);
    Certificate cert = check_certificate(d, k, "theorem4");
    if (!cert.valid)
        fail("result is not a quasi-kernel", trace);
    return {std::move(cert), std::move(trace)};
}

} // namespace qk
