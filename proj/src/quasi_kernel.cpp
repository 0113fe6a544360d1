#include "qk/quasi_kernel.hpp"

#include "qk/errors.hpp"

#include <algorithm>
#include <bit>

namespace qk {

bool is_quasi_kernel(const Digraph& d, const VertexSet& k) {
    if (k.universe() != d.vertex_count() || !is_independent(d, k))
        return false;
    const std::size_t n = d.vertex_count();
    std::vector<std::uint8_t> depth(n, 3);
    std::vector<Vertex> layer;
    for (Vertex v : k) {
        depth[v] = 0;
        layer.push_back(v);
    }
    for (std::uint8_t level = 1; level <= 2; ++level) {
        std::vector<Vertex> next;
        for (Vertex v : layer)
            for (Vertex w : d.out(v))
                if (depth[w] > level) {
                    depth[w] = level;
                    next.push_back(w);
                }
        layer.swap(next);
    }
    return std::all_of(depth.begin(), depth.end(), [](std::uint8_t x) { return x <= 2; });
}

VertexSet chvatal_lovasz(const Digraph& d) {
    const std::size_t n = d.vertex_count();
    std::vector<char> alive(n, 1);
    std::vector<Vertex> pivots;
    // Going down: the smallest alive vertex is the pivot of the current
    // subdigraph, which then loses the pivot's closed out-neighborhood.
    for (Vertex v = 0; v < n; ++v) {
        if (!alive[v])
            continue;
        pivots.push_back(v);
        alive[v] = 0;
        for (Vertex w : d.out(v))
            alive[w] = 0;
    }
    // Coming back up: the set Q built so far lives inside the subdigraph
    // where the pivot was chosen, so arcs of D between Q and the pivot are
    // arcs of that subdigraph.
    VertexSet result(n);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        auto in = d.in(*it);
        if (std::none_of(in.begin(), in.end(), [&](Vertex u) { return result.contains(u); }))
            result.insert(*it);
    }
    return result;
}

namespace {

class MinQuasiKernelSearch {
public:
    explicit MinQuasiKernelSearch(const Digraph& d) : d_(d), n_(d.vertex_count()) {
        all_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
        for (Vertex v = 0; v < n_; ++v)
            if (d.in_degree(v) == 0)
                required_ |= std::uint64_t{1} << v;
    }

    std::uint64_t run() {
        for (std::size_t size = static_cast<std::size_t>(std::popcount(required_)); size <= n_; ++size)
            if (choose(0, size, 0, 0))
                return found_;
        // Unreachable: every digraph has a quasi-kernel.
        throw ConstructionError("minimum quasi-kernel search found no quasi-kernel");
    }

private:
    bool covers(std::uint64_t k) const {
        std::uint64_t first = 0;
        for (std::uint64_t rest = k; rest; rest &= rest - 1)
            first |= d_.out_mask(static_cast<Vertex>(std::countr_zero(rest)));
        std::uint64_t second = 0;
        for (std::uint64_t rest = first & ~k; rest; rest &= rest - 1)
            second |= d_.out_mask(static_cast<Vertex>(std::countr_zero(rest)));
        return (k | first | second) == all_;
    }

    // Sources lie in every quasi-kernel, so a branch that skips one is dead.
    bool choose(Vertex next, std::size_t left, std::uint64_t chosen, std::uint64_t blocked) {
        if (left == 0) {
            if ((chosen & required_) == required_ && covers(chosen)) {
                found_ = chosen;
                return true;
            }
            return false;
        }
        for (Vertex v = next; v + left <= n_; ++v) {
            const std::uint64_t bit = std::uint64_t{1} << v;
            if (!(blocked & bit) &&
                choose(v + 1, left - 1, chosen | bit, blocked | d_.out_mask(v) | d_.in_mask(v)))
                return true;
            if (required_ & bit)
                return false;
        }
        return false;
    }

    const Digraph& d_;
    std::size_t n_;
    std::uint64_t all_ = 0;
    std::uint64_t required_ = 0;
    std::uint64_t found_ = 0;
};

} // namespace

VertexSet min_quasi_kernel(const Digraph& d, std::size_t cap) {
    const std::size_t n = d.vertex_count();
    const std::size_t limit = std::min(cap, Digraph::kMaskLimit);
    if (n > limit)
        throw CapExceeded("minimum quasi-kernel oracle is capped at " + std::to_string(limit) + " vertices (got " +
                          std::to_string(n) + ")");
    if (n == 0)
        return VertexSet(0);
    return VertexSet::from_mask(n, MinQuasiKernelSearch(d).run());
}

std::int64_t bound_numerator(const Digraph& d) {
    VertexSet s = sources(d);
    return static_cast<std::int64_t>(d.vertex_count()) + static_cast<std::int64_t>(s.size()) -
           static_cast<std::int64_t>(out_open(d, s).size());
}

Certificate check_certificate(const Digraph& d, const VertexSet& k, std::string method) {
    Certificate cert;
    cert.kernel_set = k;
    cert.bound_numerator = bound_numerator(d);
    cert.valid = is_quasi_kernel(d, k);
    cert.within_bound = 2 * static_cast<std::int64_t>(k.size()) <= cert.bound_numerator;
    cert.method = std::move(method);
    return cert;
}

} // namespace qk
