#include "qk/kernel.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace qk {

std::string_view to_string(KernelMethod method) {
    switch (method) {
    case KernelMethod::richardson:
        return "richardson";
    case KernelMethod::source_peel:
        return "source_peel";
    case KernelMethod::exact_search:
        return "exact_search";
    }
    return "unknown";
}

bool is_kernel(const Digraph& d, const VertexSet& k) {
    if (!is_independent(d, k))
        return false;
    for (Vertex v = 0; v < d.vertex_count(); ++v) {
        if (k.contains(v))
            continue;
        auto in = d.in(v);
        if (std::none_of(in.begin(), in.end(), [&](Vertex u) { return k.contains(u); }))
            return false;
    }
    return true;
}

namespace {

std::string describe_cycle(const std::vector<Vertex>& cycle) {
    std::string text;
    for (Vertex v : cycle)
        text += std::to_string(v) + " -> ";
    return text + std::to_string(cycle.front());
}

} // namespace

VertexSet richardson_kernel(const Digraph& d) {
    if (auto cycle = find_odd_directed_cycle(d))
        throw OddCycleError("digraph has an odd directed cycle: " + describe_cycle(*cycle), *cycle);

    const std::size_t n = d.vertex_count();
    VertexSet alive = d.vertices();
    VertexSet kernel(n);
    std::vector<std::uint32_t> parity(n, 0);
    std::vector<char> visited(n, 0);
    std::vector<Vertex> queue;

    while (!alive.empty()) {
        auto labels = scc_labels(d, alive);
        const auto& label = labels.label;

        std::vector<char> initial(labels.count, 1);
        std::vector<Vertex> lowest(labels.count, static_cast<Vertex>(n));
        for (Vertex v : alive) {
            lowest[label[v]] = std::min(lowest[label[v]], v);
            for (Vertex u : d.in(v))
                if (alive.contains(u) && label[u] != label[v])
                    initial[label[v]] = 0;
        }
        std::vector<Vertex> roots;
        for (std::size_t c = 0; c < labels.count; ++c)
            if (initial[c])
                roots.push_back(lowest[c]);
        std::sort(roots.begin(), roots.end());

        // No arc joins two initial components, so their closed
        // out-neighborhoods can be removed in one round.
        VertexSet chosen(n);
        for (Vertex root : roots) {
            const std::uint32_t component = label[root];
            chosen.insert(root);
            parity[root] = 0;
            visited[root] = 1;
            queue.assign(1, root);
            for (std::size_t head = 0; head < queue.size(); ++head) {
                Vertex v = queue[head];
                for (Vertex w : d.out(v)) {
                    if (visited[w] || !alive.contains(w) || label[w] != component)
                        continue;
                    visited[w] = 1;
                    parity[w] = parity[v] ^ 1u;
                    if (parity[w] == 0)
                        chosen.insert(w);
                    queue.push_back(w);
                }
            }
        }
        kernel |= chosen;
        alive -= out_closed(d, chosen);
    }
    return kernel;
}

KernelResult compute_kernel(const Digraph& d, std::size_t exact_cap) {
    const std::size_t n = d.vertex_count();
    VertexSet alive = d.vertices();
    VertexSet kernel(n);
    std::vector<std::size_t> indegree(n);
    std::vector<Vertex> ready;
    for (Vertex v = 0; v < n; ++v) {
        indegree[v] = d.in_degree(v);
        if (indegree[v] == 0)
            ready.push_back(v);
    }

    bool peeled = false;
    while (!ready.empty()) {
        // All current sources at once; they are pairwise non-adjacent.
        std::sort(ready.begin(), ready.end());
        std::vector<Vertex> round;
        round.swap(ready);
        std::vector<Vertex> removed;
        for (Vertex s : round) {
            if (!alive.contains(s))
                continue;
            peeled = true;
            kernel.insert(s);
            alive.erase(s);
            removed.push_back(s);
        }
        for (Vertex s : round)
            for (Vertex w : d.out(s))
                if (alive.contains(w)) {
                    alive.erase(w);
                    removed.push_back(w);
                }
        for (Vertex r : removed)
            for (Vertex w : d.out(r))
                if (alive.contains(w) && --indegree[w] == 0)
                    ready.push_back(w);
    }

    KernelResult result;
    result.method = peeled ? KernelMethod::source_peel : KernelMethod::richardson;
    if (alive.empty()) {
        result.kernel = kernel;
        return result;
    }

    auto residual = induced(d, alive);
    if (!has_odd_directed_cycle(residual.graph)) {
        kernel |= residual.lift(richardson_kernel(residual.graph), n);
        result.kernel = kernel;
        return result;
    }

    const std::size_t cap = std::min(exact_cap, Digraph::kMaskLimit);
    if (residual.graph.vertex_count() > cap)
        throw KernelNotFound("source-free residual on " + std::to_string(residual.graph.vertex_count()) +
                                 " vertices has an odd directed cycle and exceeds the exact-search cap of " +
                                 std::to_string(cap),
                             residual.graph, residual.to_parent, false);
    auto exact = exact_kernel(residual.graph, cap);
    if (!exact.kernel)
        throw KernelNotFound("kernel not found: the source-free residual on " +
                                 std::to_string(residual.graph.vertex_count()) + " vertices has no kernel",
                             residual.graph, residual.to_parent, true);
    kernel |= residual.lift(*exact.kernel, n);
    result.kernel = kernel;
    result.method = peeled ? KernelMethod::source_peel : KernelMethod::exact_search;
    result.explored = exact.explored;
    return result;
}

VertexSet kernel_with_source_peeling(const Digraph& d, std::size_t exact_cap) {
    return *compute_kernel(d, exact_cap).kernel;
}

namespace {

// Depth-first include/exclude search over vertices in ascending order,
// working on one-word masks. `region` restricts the search to an induced
// subdigraph.
class MaskKernelSearch {
public:
    MaskKernelSearch(const Digraph& d, std::uint64_t region) : d_(d), region_(region) {
        for (Vertex v = 0; v < d.vertex_count(); ++v)
            if ((region >> v) & 1u)
                order_.push_back(v);
        suffix_.assign(order_.size() + 1, 0);
        for (std::size_t i = order_.size(); i-- > 0;)
            suffix_[i] = suffix_[i + 1] | (std::uint64_t{1} << order_[i]);
    }

    std::optional<std::uint64_t> run() {
        if (search(0, 0, 0, 0))
            return found_;
        return std::nullopt;
    }

    std::uint64_t explored() const { return explored_; }

private:
    // chosen: kernel members so far; excluded: decided non-members;
    // forbidden: vertices adjacent to a chosen one (cannot join).
    bool search(std::size_t depth, std::uint64_t chosen, std::uint64_t excluded, std::uint64_t forbidden) {
        ++explored_;
        const std::uint64_t undecided_allowed = suffix_[depth] & ~forbidden;
        // Every excluded vertex still needs an in-neighbor that is, or can
        // become, a member.
        for (std::uint64_t rest = excluded; rest; rest &= rest - 1) {
            auto v = static_cast<Vertex>(std::countr_zero(rest));
            if ((d_.in_mask(v) & region_ & (chosen | undecided_allowed)) == 0)
                return false;
        }
        if (depth == order_.size()) {
            found_ = chosen;
            return true;
        }
        const Vertex v = order_[depth];
        const std::uint64_t bit = std::uint64_t{1} << v;
        if (!(forbidden & bit)) {
            const std::uint64_t conflicts = (d_.out_mask(v) | d_.in_mask(v)) & region_;
            if (search(depth + 1, chosen | bit, excluded, forbidden | conflicts))
                return true;
        }
        return search(depth + 1, chosen, excluded | bit, forbidden);
    }

    const Digraph& d_;
    std::uint64_t region_;
    std::vector<Vertex> order_;
    std::vector<std::uint64_t> suffix_;
    std::uint64_t found_ = 0;
    std::uint64_t explored_ = 0;
};

std::uint64_t full_mask(std::size_t n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

} // namespace

KernelResult exact_kernel(const Digraph& d, std::size_t cap) {
    const std::size_t n = d.vertex_count();
    const std::size_t limit = std::min(cap, Digraph::kMaskLimit);
    if (n > limit)
        throw CapExceeded("exact kernel search is capped at " + std::to_string(limit) + " vertices (got " +
                          std::to_string(n) + "); use richardson_kernel or kernel_with_source_peeling");
    MaskKernelSearch search(d, full_mask(n));
    KernelResult result;
    result.method = KernelMethod::exact_search;
    if (auto found = search.run())
        result.kernel = VertexSet::from_mask(n, *found);
    result.explored = search.explored();
    return result;
}

bool is_kernel_perfect_oracle(const Digraph& d, std::size_t cap) {
    const std::size_t n = d.vertex_count();
    const std::size_t limit = std::min<std::size_t>(cap, 24);
    if (n > limit)
        throw CapExceeded("kernel-perfect oracle is capped at " + std::to_string(limit) + " vertices (got " +
                          std::to_string(n) + ")");

    // has_kernel[X] for every subset X. If X has a source v then v lies in
    // every kernel of D[X], and D[X] has a kernel iff D[X - N+[v]] does; that
    // subset is numerically smaller, so it is already known.
    const std::uint64_t subsets = std::uint64_t{1} << n;
    std::vector<char> has_kernel(subsets, 0);
    has_kernel[0] = 1;
    for (std::uint64_t x = 1; x < subsets; ++x) {
        std::optional<Vertex> source;
        for (std::uint64_t rest = x; rest; rest &= rest - 1) {
            auto v = static_cast<Vertex>(std::countr_zero(rest));
            if ((d.in_mask(v) & x) == 0) {
                source = v;
                break;
            }
        }
        if (source) {
            const std::uint64_t removed = (d.out_mask(*source) | (std::uint64_t{1} << *source)) & x;
            has_kernel[x] = has_kernel[x & ~removed];
        } else {
            has_kernel[x] = MaskKernelSearch(d, x).run().has_value();
        }
        if (!has_kernel[x])
            return false;
    }
    return true;
}

} // namespace qk
