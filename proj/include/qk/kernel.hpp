#pragma once

#include "qk/digraph.hpp"
#include "qk/errors.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace qk {

// Kernels here are out-dominating: K is independent and every vertex outside
// K has an in-neighbor in K. This is the arc reversal of the classical
// absorbing kernel.

enum class KernelMethod { richardson, source_peel, exact_search };

std::string_view to_string(KernelMethod method);

struct KernelResult {
    std::optional<VertexSet> kernel;
    KernelMethod method = KernelMethod::exact_search;
    std::uint64_t explored = 0;
};

inline constexpr std::size_t kDefaultExactKernelCap = 24;
inline constexpr std::size_t kDefaultKernelPerfectCap = 12;

/// Thrown when a digraph handed to richardson_kernel has an odd directed cycle.
struct OddCycleError : PreconditionError {
    OddCycleError(const std::string& what, std::vector<Vertex> cycle)
        : PreconditionError(what), cycle(std::move(cycle)) {}
    std::vector<Vertex> cycle;
};

/// Thrown by kernel_with_source_peeling when the source-free residual has an
/// odd cycle and no kernel could be produced for it.
struct KernelNotFound : Error {
    KernelNotFound(const std::string& what, Digraph residual, std::vector<Vertex> residual_to_parent, bool proven)
        : Error(what), residual(std::move(residual)), residual_to_parent(std::move(residual_to_parent)),
          proven_absent(proven) {}
    Digraph residual;
    std::vector<Vertex> residual_to_parent;
    /// True when exhaustive search proved that the residual has no kernel;
    /// false when it was too large to search.
    bool proven_absent;
};

bool is_kernel(const Digraph& d, const VertexSet& k);

/// Kernel of a digraph without odd directed cycles. Throws OddCycleError
/// (carrying a witness cycle) otherwise.
///
/// Each round takes every initial strong component of what is left (no arc
/// enters it), in order of smallest vertex. A singleton joins the kernel; a
/// larger component is 2-colored by parity of BFS distance from its smallest
/// vertex, and the class containing that vertex joins the kernel. The closed
/// out-neighborhood of the chosen vertices is then deleted.
VertexSet richardson_kernel(const Digraph& d);

/// Repeatedly moves all current sources into the kernel and deletes their
/// closed out-neighborhoods; the source-free residual is handled by
/// richardson_kernel when it has no odd directed cycle and by exact_kernel
/// otherwise. Throws KernelNotFound when the residual defeats both.
KernelResult compute_kernel(const Digraph& d, std::size_t exact_cap = kDefaultExactKernelCap);
VertexSet kernel_with_source_peeling(const Digraph& d, std::size_t exact_cap = kDefaultExactKernelCap);

/// Exhaustive kernel search (include-before-exclude over ascending vertices,
/// so the first kernel found is lexicographically smallest as a sorted member
/// list). Throws CapExceeded when n > min(cap, 64).
KernelResult exact_kernel(const Digraph& d, std::size_t cap = kDefaultExactKernelCap);

/// True iff every induced subdigraph has a kernel. Throws CapExceeded when
/// n > min(cap, 24).
bool is_kernel_perfect_oracle(const Digraph& d, std::size_t cap = kDefaultKernelPerfectCap);

} // namespace qk
