#pragma once

#include "qk/digraph.hpp"

#include <cstdint>
#include <string>

namespace qk {

inline constexpr std::size_t kDefaultOracleCap = 20;

/// A claimed quasi-kernel measured against n + |S| - |N+(S)|, S the sources.
/// The claim is 2|K| <= bound_numerator, compared in integers.
struct Certificate {
    VertexSet kernel_set;
    std::int64_t bound_numerator = 0;
    bool valid = false;
    bool within_bound = false;
    std::string method;
};

/// K is independent and every vertex outside K is at out-distance <= 2.
bool is_quasi_kernel(const Digraph& d, const VertexSet& k);

/// Quasi-kernel by the inductive construction: take the smallest remaining
/// vertex as pivot, recurse on what is left after deleting its closed
/// out-neighborhood, and keep the pivot unless the recursive result already
/// has an arc into it. The recursion is unrolled into a pivot stack, so the
/// whole run is O(n + m).
VertexSet chvatal_lovasz(const Digraph& d);

/// Minimum quasi-kernel by exhaustive search over independent sets in
/// increasing size; ties go to the lexicographically smallest set. Throws
/// CapExceeded when n > min(cap, 64).
VertexSet min_quasi_kernel(const Digraph& d, std::size_t cap = kDefaultOracleCap);

std::int64_t bound_numerator(const Digraph& d);

/// Never throws on a bad K; the verdict lands in the certificate.
Certificate check_certificate(const Digraph& d, const VertexSet& k, std::string method);

} // namespace qk
