#include "qk/reductions.hpp"

#include "qk/errors.hpp"
#include "qk/json.hpp"
#include "qk/small_qk.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace qk {

std::string_view to_string(ReductionCase c) {
    switch (c) {
    case ReductionCase::case1:
        return "case1";
    case ReductionCase::case2_no_sources:
        return "case2_no_sources";
    case ReductionCase::case2_peel:
        return "case2_peel";
    case ReductionCase::case2_gadget:
        return "case2_gadget";
    }
    return "unknown";
}

namespace {

// d[keep] plus x -> y and y -> w for each kept w with an in-neighbor in
// `frontier`.
Reduction build_gadget(const Digraph& d, const VertexSet& keep, const VertexSet& frontier, ReductionCase kind) {
    auto sub = induced(d, keep);
    const auto kept = static_cast<Vertex>(sub.to_parent.size());
    const Vertex x = kept;
    const Vertex y = kept + 1;
    std::vector<Arc> arcs = sub.graph.arcs();
    arcs.emplace_back(x, y);
    for (Vertex local = 0; local < kept; ++local) {
        auto in = d.in(sub.to_parent[local]);
        if (std::any_of(in.begin(), in.end(), [&](Vertex u) { return frontier.contains(u); }))
            arcs.emplace_back(y, local);
    }
    Reduction r;
    r.reduced = Digraph::from_edge_list(kept + 2, arcs);
    r.info.kind = kind;
    r.info.original_n = d.vertex_count();
    r.info.gadget_x = x;
    r.info.gadget_y = y;
    r.info.index_map = std::move(sub.to_parent);
    return r;
}

bool has_in_neighbor_in(const Digraph& d, Vertex v, const VertexSet& set) {
    auto in = d.in(v);
    return std::any_of(in.begin(), in.end(), [&](Vertex u) { return set.contains(u); });
}

} // namespace

Reduction case1_reduce(const Digraph& d) {
    const VertexSet s = sources(d);
    const VertexSet closure = out_closed(d, s);
    if (s.empty() || closure.size() < 3)
        throw PreconditionError("case 1 needs sources S with |N+[S]| >= 3 (got |S| = " + std::to_string(s.size()) +
                                ", |N+[S]| = " + std::to_string(closure.size()) + ")");
    Reduction r = build_gadget(d, closure.complement(), closure - s, ReductionCase::case1);
    r.info.s = s;
    r.info.s1 = VertexSet(d.vertex_count());
    return r;
}

Reduction case2_reduce(const Digraph& d) {
    const std::size_t n = d.vertex_count();
    const VertexSet s = sources(d);
    const VertexSet out_of_s = out_open(d, s);
    if (s.size() != 1 || out_of_s.size() != 1)
        throw PreconditionError("case 2 needs exactly one source with exactly one out-neighbor (got |S| = " +
                                std::to_string(s.size()) + ", |N+(S)| = " + std::to_string(out_of_s.size()) + ")");
    if (weakly_connected_components(d).size() != 1)
        throw PreconditionError("case 2 needs a weakly connected digraph");

    const VertexSet region = (s | out_of_s).complement();
    VertexSet s1(n);
    for (Vertex v : region)
        if (!has_in_neighbor_in(d, v, region))
            s1.insert(v);

    Reduction r;
    if (s1.empty()) {
        auto sub = induced(d, region);
        r.reduced = std::move(sub.graph);
        r.info.kind = ReductionCase::case2_no_sources;
        r.info.index_map = std::move(sub.to_parent);
    } else {
        const VertexSet out_of_s1 = out_open(d, s1) & region;
        if (out_of_s1.size() <= s1.size()) {
            auto sub = induced(d, region - s1);
            r.reduced = std::move(sub.graph);
            r.info.kind = ReductionCase::case2_peel;
            r.info.index_map = std::move(sub.to_parent);
        } else {
            r = build_gadget(d, region - s1 - out_of_s1, out_of_s1, ReductionCase::case2_gadget);
        }
    }
    r.info.original_n = n;
    r.info.s = s;
    r.info.s1 = s1;
    return r;
}

VertexSet lift(const Digraph& original, const VertexSet& k_reduced, const LiftInfo& info) {
    VertexSet k = info.s;
    for (Vertex v : k_reduced) {
        if (v == info.gadget_x || v == info.gadget_y)
            continue;
        k.insert(info.index_map.at(v));
    }
    if (info.kind == ReductionCase::case2_gadget)
        k |= info.s1;
    if (!is_quasi_kernel(original, k))
        throw ConstructionError("lifted set (" + std::string(to_string(info.kind)) +
                                ") is not a quasi-kernel of the original digraph: " + nlohmann::json(k).dump());
    return k;
}

namespace {

struct Partial {
    Partial() : k(0) {}
    explicit Partial(VertexSet set) : k(std::move(set)) {}

    VertexSet k;
    bool cores_within_bound = true;
    bool reduced = false;
    std::set<std::string> core_methods;
};

class Pipeline {
public:
    explicit Pipeline(const SolveConfig& config) : config_(config) {}

    Partial run(const Digraph& d, nlohmann::json& node) {
        const std::size_t n = d.vertex_count();
        node["n"] = n;
        node["bound_numerator"] = bound_numerator(d);
        if (n == 0) {
            node["step"] = "empty";
            return Partial(VertexSet(0));
        }

        const VertexSet isolated = isolated_vertices(d);
        if (!isolated.empty() && isolated.size() < n) {
            node["step"] = "strip_isolated";
            node["isolated"] = isolated;
            auto sub = induced(d, isolated.complement());
            Partial inner = run(sub.graph, node["child"]);
            inner.k = sub.lift(inner.k, n) | isolated;
            check_preserved(d, inner, "strip_isolated");
            return inner;
        }
        if (isolated.size() == n) {
            node["step"] = "all_isolated";
            return Partial(isolated);
        }

        auto components = weakly_connected_components(d);
        if (components.size() > 1) {
            node["step"] = "components";
            Partial merged{VertexSet(n)};
            auto& children = node["components"] = nlohmann::json::array();
            for (const auto& component : components) {
                auto sub = induced(d, component);
                nlohmann::json child;
                Partial part = run(sub.graph, child);
                children.push_back(std::move(child));
                merged.k |= sub.lift(part.k, n);
                merged.cores_within_bound = merged.cores_within_bound && part.cores_within_bound;
                merged.reduced = merged.reduced || part.reduced;
                merged.core_methods.insert(part.core_methods.begin(), part.core_methods.end());
            }
            if (merged.cores_within_bound && 2 * static_cast<std::int64_t>(merged.k.size()) > bound_numerator(d))
                throw ConstructionError("component bounds did not add up");
            return merged;
        }

        const VertexSet s = sources(d);
        if (s.empty())
            return core(d, node);

        const bool first_case = out_closed(d, s).size() >= 3;
        Reduction red = first_case ? case1_reduce(d) : case2_reduce(d);
        node["step"] = std::string(to_string(red.info.kind));
        node["S"] = red.info.s;
        if (red.info.kind == ReductionCase::case2_peel || red.info.kind == ReductionCase::case2_gadget)
            node["S1"] = red.info.s1;
        Partial inner = run(red.reduced, node["child"]);
        const std::size_t reduced_size = inner.k.size();
        inner.k = lift(d, inner.k, red.info);
        inner.reduced = true;
        node["lifted_size"] = inner.k.size();

        if (first_case && inner.k.size() + 1 > reduced_size + s.size())
            throw ConstructionError("case 1 lift grew beyond |K1| - 1 + |S|");
        check_preserved(d, inner, std::string(to_string(red.info.kind)));
        return inner;
    }

private:
    Partial core(const Digraph& d, nlohmann::json& node) {
        node["step"] = "core";
        Partial result;
        if (auto w = four_color_partition(d, config_.coloring)) {
            // Source-free, so D1 = D and the witness numbering is D's.
            PartitionWitness minimized = minimize_v2(d, std::move(*w));
            auto [cert, trace] = theorem4_construct(d, minimized, {config_.exact_kernel_cap});
            if (config_.on_construction)
                config_.on_construction(d, minimized, trace);
            node["method"] = "theorem4";
            node["partition"] = {{"V1", minimized.v1}, {"V2", minimized.v2}, {"moved", minimized.moved}};
            node["theorem4"] = trace;
            result.k = cert.kernel_set;
            result.core_methods.insert("theorem4");
        } else if (d.vertex_count() <= std::min(config_.oracle_cap, Digraph::kMaskLimit)) {
            node["method"] = "min_oracle";
            result.k = min_quasi_kernel(d, config_.oracle_cap);
            result.core_methods.insert("min_oracle");
        } else {
            node["method"] = "chvatal_lovasz";
            result.k = chvatal_lovasz(d);
            result.core_methods.insert("chvatal_lovasz");
        }
        result.cores_within_bound = 2 * static_cast<std::int64_t>(result.k.size()) <= bound_numerator(d);
        node["size"] = result.k.size();
        node["within_bound"] = result.cores_within_bound;
        return result;
    }

    // The bound carries over from the reduced digraph to d.
    static void check_preserved(const Digraph& d, const Partial& lifted, const std::string& step) {
        if (lifted.cores_within_bound && 2 * static_cast<std::int64_t>(lifted.k.size()) > bound_numerator(d))
            throw ConstructionError(step + ": lifted quasi-kernel of size " + std::to_string(lifted.k.size()) +
                                    " breaks the bound " + std::to_string(bound_numerator(d)) + "/2");
    }

    const SolveConfig& config_;
};

} // namespace

SolveResult solve(const Digraph& d, const SolveConfig& config) {
    Pipeline pipeline(config);
    SolveResult result;
    Partial partial = pipeline.run(d, result.trace);

    std::string method;
    if (d.vertex_count() == 0) {
        method = "empty";
    } else {
        if (partial.reduced)
            method = "reduction+";
        bool first = true;
        for (const auto& m : partial.core_methods) {
            method += (first ? "" : "+") + m;
            first = false;
        }
        if (partial.core_methods.empty())
            method += "isolated";
    }
    result.certificate = check_certificate(d, partial.k, method);
    result.cores_within_bound = partial.cores_within_bound;
    result.bound_guaranteed =
        std::all_of(partial.core_methods.begin(), partial.core_methods.end(), [](const std::string& m) {
            return m == "theorem4";
        });
    if (!result.certificate.valid)
        throw ConstructionError("solve produced a set that is not a quasi-kernel");
    if (partial.cores_within_bound && !result.certificate.within_bound)
        throw ConstructionError("every core met the bound but the final certificate does not");
    return result;
}

} // namespace qk
