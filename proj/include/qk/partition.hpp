#pragma once

#include "qk/digraph.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qk {

using UndirectedGraph = std::vector<std::vector<Vertex>>;

struct ColoringConfig {
    std::uint64_t node_budget = 1'000'000;
    std::size_t restarts = 32;
    std::uint64_t seed = 0;
};

enum class ColoringStatus { colored, impossible, budget_exhausted };

struct ColoringOutcome {
    ColoringStatus status = ColoringStatus::budget_exhausted;
    std::vector<std::uint8_t> colors;
    std::uint64_t nodes = 0;
};

/// Exact k-coloring by DSATUR backtracking (max saturation, then max degree,
/// then lowest index; colors tried ascending, a fresh color only one above
/// the largest used). Stops after node_budget assignments.
ColoringOutcome exact_coloring(const UndirectedGraph& g, unsigned k, std::uint64_t node_budget);

/// Tabu search (Tabucol) from a greedy start, with restarts. Finds colorings only; it
/// can never prove that none exists.
std::optional<std::vector<std::uint8_t>> heuristic_coloring(const UndirectedGraph& g, unsigned k,
                                                            std::size_t restarts, std::uint64_t seed);

bool is_proper_coloring(const UndirectedGraph& g, const std::vector<std::uint8_t>& colors, unsigned k);

/// Split V1 / V2 of a digraph's vertices into two kernel-perfect parts.
///
/// evidence1 / evidence2 hold a proper 2-coloring (0/1) of the underlying
/// graph of the original parts, -1 elsewhere. Vertices later moved from V2
/// to V1 by minimize_v2 are listed in move order in `moved`; each had no
/// in-neighbor in V1 when it moved, so V1 stays kernel-perfect by source
/// addition.
struct PartitionWitness {
    VertexSet v1;
    VertexSet v2;
    std::vector<std::int8_t> evidence1;
    std::vector<std::int8_t> evidence2;
    std::vector<Vertex> moved;
};

/// 4-colors the underlying graph (exact search, then heuristic restarts) and
/// pairs classes {0,1} into V1 and {2,3} into V2. nullopt when no
/// 4-coloring was found, including when one provably does not exist.
std::optional<PartitionWitness> four_color_partition(const Digraph& d1, const ColoringConfig& config = {});

/// Moves V2 vertices without an in-neighbor in V1 over to V1 until every V2
/// vertex has one. A move only adds in-neighbors in V1 for other vertices,
/// so a single ascending pass reaches the fixpoint.
PartitionWitness minimize_v2(const Digraph& d1, PartitionWitness w);

/// Checks the witness: parts partition V(d1), the evidence colorings are
/// proper on the original parts, and every recorded move was a source
/// addition at the time it happened.
bool verify_witness(const Digraph& d1, const PartitionWitness& w);

/// Every V2 vertex has an in-neighbor in V1.
bool v2_fixpoint_holds(const Digraph& d1, const PartitionWitness& w);

} // namespace qk
