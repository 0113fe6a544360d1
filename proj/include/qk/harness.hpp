#pragma once

#include "qk/digraph.hpp"
#include "qk/reductions.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qk::harness {

// ---- generators -----------------------------------------------------------

/// Disjoint directed cycles of lengths 2 and 4, laid out consecutively.
Digraph gen_cycle_union(std::span<const unsigned> lengths);

/// Sources 0..s-1, each with one arc to t = s; triangle t -> u -> w -> t
/// with u = s + 1, w = s + 2.
Digraph gen_star_triangle(std::size_t s);

/// Part S is 0..s-1, part T is s..s+t-1; `edges` holds (i, j) with i < s
/// and j < t, oriented S -> T. The underlying graph must be connected.
Digraph gen_bipartite_orientation(std::size_t s, std::size_t t, std::span<const std::pair<Vertex, Vertex>> edges);

/// Each ordered pair (u, v), u != v, visited u-major, becomes an arc with
/// probability p.
Digraph gen_random(std::size_t n, double p, std::uint64_t seed);

/// m uniformly drawn arcs (loops redrawn, duplicates collapse).
Digraph gen_random_arcs(std::size_t n, std::size_t m, std::uint64_t seed);

/// Vertices get uniform random parts; each pair in different parts becomes
/// an edge with probability p and is oriented by a fair coin. The underlying
/// graph is `parts`-colorable by construction.
Digraph gen_random_kpartite_orientation(std::size_t n, std::size_t parts, double p, std::uint64_t seed);

// ---- exhaustive enumeration ----------------------------------------------

inline constexpr std::size_t kEnumerationCap = 5;

/// 4^(n(n-1)/2).
std::uint64_t digraph_count(std::size_t n);

/// Unordered pairs (i, j), i < j, in lexicographic order; pair k takes the
/// base-4 digit (code >> 2k) & 3: 0 none, 1 i -> j, 2 j -> i, 3 both.
Digraph digraph_from_code(std::size_t n, std::uint64_t code);

/// Visits every labeled loop-free digraph on n <= 5 vertices in code order.
void enumerate_digraphs(std::size_t n, const std::function<void(std::uint64_t code, const Digraph&)>& visit);

// ---- sweeps ----------------------------------------------------------------

enum class SweepMode { conjecture2, conjecture3 };
enum class SweepEngine { oracle, solver };

SweepMode parse_mode(std::string_view name);
SweepEngine parse_engine(std::string_view name);

struct SweepConfig {
    std::size_t n_min = 1;
    std::size_t n_max = 4;
    SweepMode mode = SweepMode::conjecture3;
    SweepEngine engine = SweepEngine::oracle;
    std::size_t jobs = 1;
    /// Record per-instance wall time. Off by default so reports are
    /// byte-reproducible.
    bool timings = false;
    SolveConfig solve;
};

struct SweepRow {
    std::string instance_id;  // "n:code"
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t num_sources = 0;
    std::int64_t bound_numerator = 0;
    std::size_t qk_size = 0;
    std::string method;
    bool valid = false;
    bool within_bound = false;
    std::uint64_t micros = 0;
};

struct Violation {
    std::string instance_id;
    std::size_t qk_size = 0;
    std::int64_t bound_numerator = 0;
};

struct SweepReport {
    SweepConfig config;
    std::size_t instance_count = 0;
    std::vector<Violation> violations;
    std::size_t tight_count = 0;
    double max_ratio = 0.0;
    /// Solver engine only: constructions that threw (should stay zero).
    std::size_t construction_failures = 0;
    std::uint64_t total_micros = 0;
    std::vector<SweepRow> rows;
};

/// Runs every labeled digraph with n_min <= n <= n_max through the chosen
/// engine. conjecture2 mode keeps only instances with minimum outdegree >= 1
/// and measures against n; conjecture3 mode keeps all and measures against
/// n + |S| - |N+(S)|. Instances are split into contiguous blocks per job and
/// merged by index, so the report does not depend on `jobs`.
SweepReport sweep(const SweepConfig& config);

void write_csv(std::ostream& out, const SweepReport& report);
void write_text(std::ostream& out, const SweepReport& report);
nlohmann::json to_json(const SweepReport& report);

} // namespace qk::harness
