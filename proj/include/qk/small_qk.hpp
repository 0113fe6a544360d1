#pragma once

#include "qk/digraph.hpp"
#include "qk/kernel.hpp"
#include "qk/partition.hpp"
#include "qk/quasi_kernel.hpp"

#include <json.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace qk {

enum class Theorem4Branch { k_branch, k_prime_branch };

/// Every intermediate set of one small-quasi-kernel construction, expressed
/// in the vertex numbering of the input digraph D.
struct Theorem4Trace {
    VertexSet sources;             // S
    VertexSet r;                   // kernel of D[V1]
    VertexSet r0;                  // inclusion-minimal subset of R with the same out-neighborhood in D1
    VertexSet out_of_r;            // N+_{D1}(R)
    VertexSet d2_vertices;         // V(D1) - N+_{D1}[R0]
    VertexSet s2;                  // sources of D2
    VertexSet s2_prime;            // S2 ∩ (R - R0)
    VertexSet t2;                  // (R - R0) - S2
    Theorem4Branch branch = Theorem4Branch::k_branch;
    std::optional<VertexSet> w;    // kernel of D2 - T2 (K' branch only)
    VertexSet result;
    /// (v, u): u ∈ N+_{D1}(R) whose only in-neighbor in R0 is v.
    std::vector<std::pair<Vertex, Vertex>> private_neighbors;
};

void to_json(nlohmann::json& j, const Theorem4Trace& trace);

/// Inclusion-minimal R0 ⊆ R with N+_{D1}(R0) = N+_{D1}(R). Members of R are
/// scanned in descending order and dropped whenever the rest still covers
/// N+(R). Every survivor keeps a private out-neighbor, so |R0| <= |N+(R)|.
/// Throws PreconditionError if R is not independent.
VertexSet minimal_covering_subset(const Digraph& d1, const VertexSet& r);

/// For each v in R0, some out-neighbor whose only in-neighbor in R0 is v.
/// Throws ConstructionError if some member has none.
std::vector<std::pair<Vertex, Vertex>> private_neighbors(const Digraph& d1, const VertexSet& r0);

struct Theorem4Options {
    std::size_t exact_kernel_cap = kDefaultExactKernelCap;
};

/// Quasi-kernel of size at most (n + |S| - |N+(S)|) / 2 from a partition of
/// D1 = D - N+[S] into kernel-perfect parts.
///
/// The witness lives in D1's numbering, i.e. the one produced by
/// induced(D, V(D) - N+[S]), and must already satisfy the V2 fixpoint
/// (run minimize_v2 first). Proof-step invariants are checked along the way
/// and the result is validated before returning; any failure throws
/// ConstructionError. A witness whose parts defeat the kernel engine throws
/// PreconditionError.
std::pair<Certificate, Theorem4Trace> theorem4_construct(const Digraph& d, const PartitionWitness& w,
                                                         const Theorem4Options& options = {});

/// V(D) - N+[S] as an induced subdigraph, in the numbering theorem4_construct
/// expects its witness in.
InducedSubdigraph outside_source_closure(const Digraph& d);

} // namespace qk
