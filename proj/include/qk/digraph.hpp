#pragma once

#include "qk/vertex_set.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace qk {

using Arc = std::pair<Vertex, Vertex>;

/// Immutable loop-free digraph on vertices 0..n-1.
///
/// Out- and in-adjacency are both kept as sorted CSR arrays. For n <= 64 each
/// vertex additionally carries a one-word out/in bit row, which the exhaustive
/// oracles use for their inner loops.
class Digraph {
public:
    static constexpr std::size_t kMaskLimit = 64;

    Digraph() = default;

    /// Builds a digraph from arcs; duplicates collapse, loops and
    /// out-of-range endpoints throw InvalidDigraph.
    static Digraph from_edge_list(std::size_t n, std::span<const Arc> arcs);
    static Digraph from_edge_list(std::size_t n, std::initializer_list<Arc> arcs) {
        return from_edge_list(n, std::span<const Arc>(arcs.begin(), arcs.size()));
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t arc_count() const { return out_targets_.size(); }

    std::span<const Vertex> out(Vertex v) const {
        return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
    }
    std::span<const Vertex> in(Vertex v) const {
        return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
    }
    std::size_t out_degree(Vertex v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
    std::size_t in_degree(Vertex v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

    bool has_arc(Vertex u, Vertex v) const;
    bool adjacent(Vertex u, Vertex v) const { return has_arc(u, v) || has_arc(v, u); }

    /// All arcs in lexicographic order.
    std::vector<Arc> arcs() const;
    VertexSet vertices() const { return VertexSet::full(n_); }

    bool has_masks() const { return n_ <= kMaskLimit; }
    std::uint64_t out_mask(Vertex v) const { return out_masks_[v]; }
    std::uint64_t in_mask(Vertex v) const { return in_masks_[v]; }

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.n_ == b.n_ && a.out_offsets_ == b.out_offsets_ && a.out_targets_ == b.out_targets_;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> out_offsets_{0};
    std::vector<Vertex> out_targets_;
    std::vector<std::size_t> in_offsets_{0};
    std::vector<Vertex> in_sources_;
    std::vector<std::uint64_t> out_masks_;
    std::vector<std::uint64_t> in_masks_;
};

/// Induced subdigraph together with the map from its indices to the parent's.
struct InducedSubdigraph {
    Digraph graph;
    std::vector<Vertex> to_parent;

    /// Maps a set over the subdigraph's universe into the parent universe.
    VertexSet lift(const VertexSet& local, std::size_t parent_universe) const;
};

// Neighborhood algebra. "open" excludes X itself, "closed" includes it.
VertexSet out_open(const Digraph& d, const VertexSet& x);
VertexSet out_closed(const Digraph& d, const VertexSet& x);
VertexSet in_open(const Digraph& d, const VertexSet& x);
VertexSet in_closed(const Digraph& d, const VertexSet& x);

VertexSet sources(const Digraph& d);
VertexSet sinks(const Digraph& d);
/// Vertices with neither in- nor out-arcs.
VertexSet isolated_vertices(const Digraph& d);

bool is_independent(const Digraph& d, const VertexSet& x);

/// Multi-source BFS along out-arcs. Unreachable vertices map to nullopt.
std::vector<std::optional<std::uint32_t>> dist_from_set(const Digraph& d, const VertexSet& k);

/// Component index per vertex; vertices outside the considered region carry
/// kOutside. Labels of strong components follow topological order.
struct ComponentLabels {
    static constexpr std::uint32_t kOutside = 0xffffffffu;
    std::vector<std::uint32_t> label;
    std::size_t count = 0;
};

ComponentLabels scc_labels(const Digraph& d, const VertexSet& within);

/// Strongly connected components in topological order of the condensation:
/// every arc between distinct components goes from an earlier to a later one.
std::vector<VertexSet> strongly_connected_components(const Digraph& d);

/// Same, restricted to the subdigraph induced by `within`.
std::vector<VertexSet> strongly_connected_components(const Digraph& d, const VertexSet& within);

/// Weakly connected components ordered by their smallest vertex.
std::vector<VertexSet> weakly_connected_components(const Digraph& d);

bool has_odd_directed_cycle(const Digraph& d);

/// Some odd directed cycle as a vertex sequence v0 -> v1 -> ... -> v0
/// (first vertex not repeated), or nullopt when none exists.
std::optional<std::vector<Vertex>> find_odd_directed_cycle(const Digraph& d);

InducedSubdigraph induced(const Digraph& d, const VertexSet& x);

Digraph reversed(const Digraph& d);

/// Underlying simple undirected graph as sorted adjacency lists.
std::vector<std::vector<Vertex>> underlying_graph(const Digraph& d);

} // namespace qk
