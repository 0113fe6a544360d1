#pragma once

#include "qk/digraph.hpp"
#include "qk/partition.hpp"
#include "qk/quasi_kernel.hpp"
#include "qk/small_qk.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace qk {

enum class ReductionCase { case1, case2_no_sources, case2_peel, case2_gadget };

std::string_view to_string(ReductionCase c);

/// What lift() needs to carry a quasi-kernel of the reduced digraph back.
///
/// In gadget cases the reduced digraph numbers the kept original vertices
/// first (ascending, as listed in index_map) and then gadget_x, gadget_y.
struct LiftInfo {
    ReductionCase kind = ReductionCase::case1;
    std::size_t original_n = 0;
    VertexSet s;   // sources of the original digraph
    VertexSet s1;  // sources of D - N+[S] (case2_peel, case2_gadget); empty otherwise
    std::optional<Vertex> gadget_x;
    std::optional<Vertex> gadget_y;
    std::vector<Vertex> index_map;
};

struct Reduction {
    Digraph reduced;
    LiftInfo info;
};

/// Requires a source set S with |N+[S]| >= 3. Replaces N+[S] by the gadget
/// x -> y, y -> w for every remaining w with an in-neighbor in N+(S).
Reduction case1_reduce(const Digraph& d);

/// Requires a weakly connected digraph with exactly one source s whose only
/// out-neighbor is t. Works on D1 = D - {s, t}: returned as is when it has
/// no sources, minus its sources S1 when |N+_{D1}(S1)| <= |S1|, and with
/// N+_{D1}[S1] replaced by the x -> y gadget otherwise.
Reduction case2_reduce(const Digraph& d);

/// Maps a quasi-kernel of the reduced digraph back: gadget vertices are
/// dropped, then S (and S1 for case2_gadget) joins. Throws ConstructionError
/// if the result is not a quasi-kernel of `original`.
VertexSet lift(const Digraph& original, const VertexSet& k_reduced, const LiftInfo& info);

/// Called after each successful partition construction with the core it ran
/// on, the minimized witness and the trace (both in the core's numbering).
using ConstructionObserver =
    std::function<void(const Digraph& core, const PartitionWitness& witness, const Theorem4Trace& trace)>;

struct SolveConfig {
    ColoringConfig coloring;
    std::size_t oracle_cap = kDefaultOracleCap;
    std::size_t exact_kernel_cap = 24;
    ConstructionObserver on_construction;
};

struct SolveResult {
    Certificate certificate;
    /// True when every source-free core went through the partition
    /// construction, so the bound is guaranteed rather than observed.
    bool bound_guaranteed = true;
    /// Every source-free core met its own bound.
    bool cores_within_bound = true;
    /// Reduction chain and per-core construction traces.
    nlohmann::json trace;
};

/// Full pipeline. Isolated vertices go straight into K, weakly connected
/// components are solved separately, sources are eliminated by the case 1 /
/// case 2 reductions, and each source-free core is handled by
/// four_color_partition -> minimize_v2 -> theorem4_construct. Cores without
/// a 4-coloring fall back to min_quasi_kernel (n <= oracle_cap) or
/// chvatal_lovasz. Throws ConstructionError only on an internal
/// contradiction.
SolveResult solve(const Digraph& d, const SolveConfig& config = {});

} // namespace qk
