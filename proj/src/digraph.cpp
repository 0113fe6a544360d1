#include "qk/digraph.hpp"

#include "qk/errors.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

namespace qk {

Digraph Digraph::from_edge_list(std::size_t n, std::span<const Arc> arcs) {
    if (n > std::numeric_limits<Vertex>::max())
        throw InvalidDigraph("vertex count " + std::to_string(n) + " too large");
    for (const auto& [u, v] : arcs) {
        if (u >= n || v >= n)
            throw InvalidDigraph("arc (" + std::to_string(u) + ", " + std::to_string(v) +
                                 ") has an endpoint outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
        if (u == v)
            throw InvalidDigraph("loop arc (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }

    std::vector<Arc> sorted(arcs.begin(), arcs.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    Digraph d;
    d.n_ = n;
    d.out_offsets_.assign(n + 1, 0);
    d.in_offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : sorted) {
        ++d.out_offsets_[u + 1];
        ++d.in_offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        d.out_offsets_[i + 1] += d.out_offsets_[i];
        d.in_offsets_[i + 1] += d.in_offsets_[i];
    }
    d.out_targets_.resize(sorted.size());
    d.in_sources_.resize(sorted.size());
    std::vector<std::size_t> out_fill(d.out_offsets_.begin(), d.out_offsets_.end() - 1);
    std::vector<std::size_t> in_fill(d.in_offsets_.begin(), d.in_offsets_.end() - 1);
    // Arcs are sorted by (u, v), so both CSR arrays come out sorted.
    for (const auto& [u, v] : sorted) {
        d.out_targets_[out_fill[u]++] = v;
        d.in_sources_[in_fill[v]++] = u;
    }

    if (n <= kMaskLimit) {
        d.out_masks_.assign(n, 0);
        d.in_masks_.assign(n, 0);
        for (const auto& [u, v] : sorted) {
            d.out_masks_[u] |= std::uint64_t{1} << v;
            d.in_masks_[v] |= std::uint64_t{1} << u;
        }
    }
    return d;
}

bool Digraph::has_arc(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_)
        return false;
    if (has_masks())
        return (out_masks_[u] >> v) & 1u;
    auto row = out(u);
    return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Arc> Digraph::arcs() const {
    std::vector<Arc> result;
    result.reserve(arc_count());
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v : out(u))
            result.emplace_back(u, v);
    return result;
}

VertexSet InducedSubdigraph::lift(const VertexSet& local, std::size_t parent_universe) const {
    VertexSet result(parent_universe);
    for (Vertex v : local)
        result.insert(to_parent[v]);
    return result;
}

VertexSet out_open(const Digraph& d, const VertexSet& x) { return out_closed(d, x) - x; }

VertexSet out_closed(const Digraph& d, const VertexSet& x) {
    VertexSet result = x;
    for (Vertex v : x)
        for (Vertex w : d.out(v))
            result.insert(w);
    return result;
}

VertexSet in_open(const Digraph& d, const VertexSet& x) { return in_closed(d, x) - x; }

VertexSet in_closed(const Digraph& d, const VertexSet& x) {
    VertexSet result = x;
    for (Vertex v : x)
        for (Vertex w : d.in(v))
            result.insert(w);
    return result;
}

VertexSet sources(const Digraph& d) {
    VertexSet result(d.vertex_count());
    for (Vertex v = 0; v < d.vertex_count(); ++v)
        if (d.in_degree(v) == 0)
            result.insert(v);
    return result;
}

VertexSet sinks(const Digraph& d) {
    VertexSet result(d.vertex_count());
    for (Vertex v = 0; v < d.vertex_count(); ++v)
        if (d.out_degree(v) == 0)
            result.insert(v);
    return result;
}

VertexSet isolated_vertices(const Digraph& d) {
    VertexSet result(d.vertex_count());
    for (Vertex v = 0; v < d.vertex_count(); ++v)
        if (d.in_degree(v) == 0 && d.out_degree(v) == 0)
            result.insert(v);
    return result;
}

bool is_independent(const Digraph& d, const VertexSet& x) {
    for (Vertex v : x)
        for (Vertex w : d.out(v))
            if (x.contains(w))
                return false;
    return true;
}

std::vector<std::optional<std::uint32_t>> dist_from_set(const Digraph& d, const VertexSet& k) {
    std::vector<std::optional<std::uint32_t>> dist(d.vertex_count());
    std::vector<Vertex> frontier;
    for (Vertex v : k) {
        dist[v] = 0;
        frontier.push_back(v);
    }
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        Vertex v = frontier[head];
        for (Vertex w : d.out(v)) {
            if (!dist[w]) {
                dist[w] = *dist[v] + 1;
                frontier.push_back(w);
            }
        }
    }
    return dist;
}

ComponentLabels scc_labels(const Digraph& d, const VertexSet& within) {
    // Iterative Tarjan; components are emitted sinks-first and relabelled.
    const std::size_t n = d.vertex_count();
    constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, kUnvisited);
    std::vector<std::uint32_t> low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<Vertex> stack;
    std::vector<std::pair<Vertex, std::size_t>> call_stack;
    ComponentLabels result;
    result.label.assign(n, ComponentLabels::kOutside);
    std::uint32_t counter = 0;
    std::uint32_t emitted = 0;

    for (Vertex root : within) {
        if (index[root] != kUnvisited)
            continue;
        call_stack.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;

        while (!call_stack.empty()) {
            auto& [v, next] = call_stack.back();
            auto succ = d.out(v);
            if (next < succ.size()) {
                Vertex w = succ[next++];
                if (!within.contains(w))
                    continue;
                if (index[w] == kUnvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call_stack.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            Vertex finished = v;
            call_stack.pop_back();
            if (!call_stack.empty()) {
                Vertex parent = call_stack.back().first;
                low[parent] = std::min(low[parent], low[finished]);
            }
            if (low[finished] == index[finished]) {
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    result.label[w] = emitted;
                } while (w != finished);
                ++emitted;
            }
        }
    }
    result.count = emitted;
    for (auto& l : result.label)
        if (l != ComponentLabels::kOutside)
            l = emitted - 1 - l;
    return result;
}

std::vector<VertexSet> strongly_connected_components(const Digraph& d) {
    return strongly_connected_components(d, d.vertices());
}

std::vector<VertexSet> strongly_connected_components(const Digraph& d, const VertexSet& within) {
    auto labels = scc_labels(d, within);
    std::vector<VertexSet> components(labels.count, VertexSet(d.vertex_count()));
    for (Vertex v : within)
        components[labels.label[v]].insert(v);
    return components;
}

std::vector<VertexSet> weakly_connected_components(const Digraph& d) {
    const std::size_t n = d.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<VertexSet> components;
    std::vector<Vertex> queue;
    for (Vertex root = 0; root < n; ++root) {
        if (seen[root])
            continue;
        VertexSet component(n);
        queue.assign(1, root);
        seen[root] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex v = queue[head];
            component.insert(v);
            for (auto row : {d.out(v), d.in(v)})
                for (Vertex w : row)
                    if (!seen[w]) {
                        seen[w] = 1;
                        queue.push_back(w);
                    }
        }
        components.push_back(std::move(component));
    }
    return components;
}

namespace {

// Splits a closed walk into simple cycles and returns the first odd one.
// The cycle lengths sum to the walk length, so an odd walk always yields one.
std::optional<std::vector<Vertex>> odd_cycle_in_closed_walk(const std::vector<Vertex>& walk, std::size_t n) {
    constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> position(n, kAbsent);
    std::vector<Vertex> stack;
    for (std::size_t i = 0; i <= walk.size(); ++i) {
        Vertex v = walk[i % walk.size()];
        if (position[v] != kAbsent) {
            std::size_t start = position[v];
            std::size_t length = stack.size() - start;
            if (length % 2 == 1)
                return std::vector<Vertex>(stack.begin() + static_cast<std::ptrdiff_t>(start), stack.end());
            for (std::size_t j = start + 1; j < stack.size(); ++j)
                position[stack[j]] = kAbsent;
            stack.resize(start + 1);
        } else {
            position[v] = stack.size();
            stack.push_back(v);
        }
    }
    return std::nullopt;
}

} // namespace

namespace {

// BFS distance parity inside each strong component, rooted at the
// component's smallest vertex. An arc inside a component joining equal
// parities exists iff the component holds an odd directed cycle.
struct ParityLayout {
    ComponentLabels components;
    std::vector<std::uint32_t> dist;
    std::vector<Vertex> parent;
    std::vector<Vertex> root;
};

ParityLayout parity_layout(const Digraph& d) {
    const std::size_t n = d.vertex_count();
    ParityLayout layout;
    layout.components = scc_labels(d, d.vertices());
    const auto& label = layout.components.label;
    layout.dist.assign(n, std::numeric_limits<std::uint32_t>::max());
    layout.parent.assign(n, 0);
    layout.root.assign(n, 0);
    std::vector<Vertex> queue;
    for (Vertex r = 0; r < n; ++r) {
        if (layout.dist[r] != std::numeric_limits<std::uint32_t>::max())
            continue;
        layout.dist[r] = 0;
        layout.root[r] = r;
        queue.assign(1, r);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            Vertex v = queue[head];
            for (Vertex w : d.out(v))
                if (label[w] == label[r] && layout.dist[w] == std::numeric_limits<std::uint32_t>::max()) {
                    layout.dist[w] = layout.dist[v] + 1;
                    layout.parent[w] = v;
                    layout.root[w] = r;
                    queue.push_back(w);
                }
        }
    }
    return layout;
}

} // namespace

std::optional<std::vector<Vertex>> find_odd_directed_cycle(const Digraph& d) {
    const std::size_t n = d.vertex_count();
    auto layout = parity_layout(d);
    const auto& label = layout.components.label;

    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v : d.out(u)) {
            if (label[u] != label[v] || layout.dist[u] % 2 != layout.dist[v] % 2)
                continue;
            const Vertex root = layout.root[u];

            // Shortest paths from every component vertex back to root.
            std::vector<Vertex> back_next(n, 0);
            std::vector<char> back_seen(n, 0);
            std::vector<Vertex> queue{root};
            back_seen[root] = 1;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                Vertex x = queue[head];
                for (Vertex y : d.in(x))
                    if (label[y] == label[root] && !back_seen[y]) {
                        back_seen[y] = 1;
                        back_next[y] = x;
                        queue.push_back(y);
                    }
            }

            auto path_from_root = [&](Vertex target) {
                std::vector<Vertex> path;
                for (Vertex x = target; x != root; x = layout.parent[x])
                    path.push_back(x);
                path.push_back(root);
                std::reverse(path.begin(), path.end());
                return path;
            };
            auto append_path_to_root = [&](std::vector<Vertex>& walk, Vertex from) {
                for (Vertex x = from; x != root; x = back_next[x])
                    walk.push_back(x);
            };

            // root ~> u -> v ~> root and root ~> v ~> root differ in parity
            // by one, so exactly one of them is odd.
            std::vector<Vertex> walk_a = path_from_root(u);
            append_path_to_root(walk_a, v);
            std::vector<Vertex> walk_b = path_from_root(v);
            walk_b.pop_back();
            append_path_to_root(walk_b, v);
            const auto& odd_walk = walk_a.size() % 2 == 1 ? walk_a : walk_b;
            return odd_cycle_in_closed_walk(odd_walk, n);
        }
    }
    return std::nullopt;
}

bool has_odd_directed_cycle(const Digraph& d) {
    auto layout = parity_layout(d);
    const auto& label = layout.components.label;
    for (Vertex u = 0; u < d.vertex_count(); ++u)
        for (Vertex v : d.out(u))
            if (label[u] == label[v] && layout.dist[u] % 2 == layout.dist[v] % 2)
                return true;
    return false;
}

InducedSubdigraph induced(const Digraph& d, const VertexSet& x) {
    constexpr Vertex kAbsent = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> local(d.vertex_count(), kAbsent);
    InducedSubdigraph result;
    for (Vertex v : x) {
        local[v] = static_cast<Vertex>(result.to_parent.size());
        result.to_parent.push_back(v);
    }
    std::vector<Arc> arcs;
    for (Vertex v : x)
        for (Vertex w : d.out(v))
            if (local[w] != kAbsent)
                arcs.emplace_back(local[v], local[w]);
    result.graph = Digraph::from_edge_list(result.to_parent.size(), arcs);
    return result;
}

Digraph reversed(const Digraph& d) {
    std::vector<Arc> arcs;
    arcs.reserve(d.arc_count());
    for (const auto& [u, v] : d.arcs())
        arcs.emplace_back(v, u);
    return Digraph::from_edge_list(d.vertex_count(), arcs);
}

std::vector<std::vector<Vertex>> underlying_graph(const Digraph& d) {
    std::vector<std::vector<Vertex>> adj(d.vertex_count());
    for (Vertex v = 0; v < d.vertex_count(); ++v) {
        auto out = d.out(v);
        auto in = d.in(v);
        std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(adj[v]));
    }
    return adj;
}

} // namespace qk
