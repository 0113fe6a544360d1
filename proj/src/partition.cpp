#include "qk/partition.hpp"

#include "qk/random.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace qk {

namespace {

constexpr std::uint8_t kUncolored = 0xff;

class Dsatur {
public:
    Dsatur(const UndirectedGraph& g, unsigned k)
        : g_(g), k_(k), n_(g.size()), colors_(n_, kUncolored), counts_(n_ * k, 0), saturation_(n_, 0) {
        for (Vertex v = 0; v < n_; ++v)
            queue_.insert(key(v));
    }

    ColoringOutcome run(std::uint64_t budget) {
        ColoringOutcome outcome;
        if (n_ == 0) {
            outcome.status = ColoringStatus::colored;
            return outcome;
        }
        struct Frame {
            Vertex v;
            unsigned next_color;
            int max_before;
        };
        std::vector<Frame> stack;
        stack.push_back({pop_best(), 0, -1});

        while (!stack.empty()) {
            Frame& frame = stack.back();
            if (colors_[frame.v] != kUncolored)
                uncolor(frame.v);
            const unsigned limit = std::min<unsigned>(k_, static_cast<unsigned>(frame.max_before + 2));
            unsigned c = frame.next_color;
            while (c < limit && counts_[frame.v * k_ + c] != 0)
                ++c;
            if (c >= limit) {
                queue_.insert(key(frame.v));
                stack.pop_back();
                continue;
            }
            color(frame.v, c);
            frame.next_color = c + 1;
            if (++outcome.nodes > budget) {
                outcome.status = ColoringStatus::budget_exhausted;
                return outcome;
            }
            if (queue_.empty()) {
                outcome.status = ColoringStatus::colored;
                outcome.colors = colors_;
                return outcome;
            }
            const int max_now = std::max(frame.max_before, static_cast<int>(c));
            stack.push_back({pop_best(), 0, max_now});
        }
        outcome.status = ColoringStatus::impossible;
        return outcome;
    }

private:
    using Key = std::tuple<int, int, Vertex>;

    Key key(Vertex v) const {
        return {-static_cast<int>(saturation_[v]), -static_cast<int>(g_[v].size()), v};
    }

    Vertex pop_best() {
        auto it = queue_.begin();
        Vertex v = std::get<2>(*it);
        queue_.erase(it);
        return v;
    }

    void color(Vertex v, unsigned c) {
        colors_[v] = static_cast<std::uint8_t>(c);
        for (Vertex u : g_[v]) {
            if (counts_[u * k_ + c]++ == 0)
                bump(u, +1);
        }
    }

    void uncolor(Vertex v) {
        const unsigned c = colors_[v];
        colors_[v] = kUncolored;
        for (Vertex u : g_[v]) {
            if (--counts_[u * k_ + c] == 0)
                bump(u, -1);
        }
    }

    void bump(Vertex u, int delta) {
        const bool queued = colors_[u] == kUncolored && queue_.erase(key(u)) > 0;
        saturation_[u] = static_cast<unsigned>(static_cast<int>(saturation_[u]) + delta);
        if (queued)
            queue_.insert(key(u));
    }

    const UndirectedGraph& g_;
    unsigned k_;
    std::size_t n_;
    std::vector<std::uint8_t> colors_;
    std::vector<std::uint32_t> counts_;
    std::vector<unsigned> saturation_;
    std::set<Key> queue_;
};

} // namespace

ColoringOutcome exact_coloring(const UndirectedGraph& g, unsigned k, std::uint64_t node_budget) {
    if (k == 0) {
        ColoringOutcome outcome;
        outcome.status = g.empty() ? ColoringStatus::colored : ColoringStatus::impossible;
        return outcome;
    }
    return Dsatur(g, k).run(node_budget);
}

std::optional<std::vector<std::uint8_t>> heuristic_coloring(const UndirectedGraph& g, unsigned k,
                                                            std::size_t restarts, std::uint64_t seed) {
    const std::size_t n = g.size();
    if (n == 0)
        return std::vector<std::uint8_t>{};
    if (k == 0)
        return std::nullopt;
    if (k == 1) {
        if (std::any_of(g.begin(), g.end(), [](const auto& adj) { return !adj.empty(); }))
            return std::nullopt;
        return std::vector<std::uint8_t>(n, 0);
    }
    const std::size_t max_steps = 100 * n + 10'000;

    for (std::size_t attempt = 0; attempt < restarts; ++attempt) {
        Xorshift64Star rng(seed ^ Xorshift64Star::splitmix64(attempt + 1));
        std::vector<std::uint8_t> colors(n, 0);
        std::vector<std::uint32_t> conflicts(n * k, 0);
        // Conflicting vertices with O(1) insert/remove.
        std::vector<Vertex> bad;
        std::vector<std::size_t> bad_pos(n, SIZE_MAX);
        auto refresh = [&](Vertex v) {
            const bool is_bad = conflicts[v * k + colors[v]] > 0;
            if (is_bad && bad_pos[v] == SIZE_MAX) {
                bad_pos[v] = bad.size();
                bad.push_back(v);
            } else if (!is_bad && bad_pos[v] != SIZE_MAX) {
                Vertex last = bad.back();
                bad[bad_pos[v]] = last;
                bad_pos[last] = bad_pos[v];
                bad.pop_back();
                bad_pos[v] = SIZE_MAX;
            }
        };

        // Greedy start in random order, least-conflict color.
        std::vector<Vertex> order(n);
        for (Vertex v = 0; v < n; ++v)
            order[v] = v;
        for (std::size_t i = n; i > 1; --i)
            std::swap(order[i - 1], order[rng.below(i)]);
        for (Vertex v : order) {
            unsigned best = 0;
            for (unsigned c = 1; c < k; ++c)
                if (conflicts[v * k + c] < conflicts[v * k + best])
                    best = c;
            colors[v] = static_cast<std::uint8_t>(best);
            for (Vertex u : g[v])
                ++conflicts[u * k + best];
        }
        for (Vertex v = 0; v < n; ++v)
            refresh(v);

        // Tabucol: best non-tabu recoloring of a conflicting vertex; a tabu
        // move is allowed when it beats the best total seen so far.
        std::vector<std::size_t> tabu(n * k, 0);
        std::int64_t total = 0;
        for (Vertex v = 0; v < n; ++v)
            total += conflicts[v * k + colors[v]];
        total /= 2;
        std::int64_t best_total = total;
        for (std::size_t step = 1; step <= max_steps && !bad.empty(); ++step) {
            Vertex move_v = bad.front();
            unsigned move_c = colors[move_v];
            std::int64_t move_delta = INT64_MAX;
            std::uint64_t ties = 0;
            for (Vertex v : bad) {
                const unsigned old = colors[v];
                for (unsigned c = 0; c < k; ++c) {
                    if (c == old)
                        continue;
                    const std::int64_t delta = std::int64_t{conflicts[v * k + c]} - conflicts[v * k + old];
                    if (tabu[v * k + c] >= step && total + delta >= best_total)
                        continue;
                    if (delta < move_delta) {
                        move_delta = delta;
                        move_v = v;
                        move_c = c;
                        ties = 1;
                    } else if (delta == move_delta && rng.below(++ties) == 0) {
                        move_v = v;
                        move_c = c;
                    }
                }
            }
            if (move_delta == INT64_MAX) {
                // everything tabu: random recoloring of a random bad vertex
                move_v = bad[rng.below(bad.size())];
                move_c = (colors[move_v] + 1 + static_cast<unsigned>(rng.below(k - 1))) % k;
                move_delta = std::int64_t{conflicts[move_v * k + move_c]} - conflicts[move_v * k + colors[move_v]];
            }
            const unsigned old = colors[move_v];
            colors[move_v] = static_cast<std::uint8_t>(move_c);
            total += move_delta;
            best_total = std::min(best_total, total);
            tabu[move_v * k + old] = step + static_cast<std::size_t>(rng.below(10)) + 6 * bad.size() / 10;
            for (Vertex u : g[move_v]) {
                --conflicts[u * k + old];
                ++conflicts[u * k + move_c];
                refresh(u);
            }
            refresh(move_v);
        }
        if (bad.empty())
            return colors;
    }
    return std::nullopt;
}

bool is_proper_coloring(const UndirectedGraph& g, const std::vector<std::uint8_t>& colors, unsigned k) {
    if (colors.size() != g.size())
        return false;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (colors[v] >= k)
            return false;
        for (Vertex u : g[v])
            if (colors[u] == colors[v])
                return false;
    }
    return true;
}

std::optional<PartitionWitness> four_color_partition(const Digraph& d1, const ColoringConfig& config) {
    const auto g = underlying_graph(d1);
    auto outcome = exact_coloring(g, 4, config.node_budget);
    std::optional<std::vector<std::uint8_t>> colors;
    if (outcome.status == ColoringStatus::colored)
        colors = std::move(outcome.colors);
    else if (outcome.status == ColoringStatus::budget_exhausted)
        colors = heuristic_coloring(g, 4, config.restarts, config.seed);
    if (!colors)
        return std::nullopt;

    const std::size_t n = d1.vertex_count();
    PartitionWitness w{VertexSet(n), VertexSet(n), std::vector<std::int8_t>(n, -1), std::vector<std::int8_t>(n, -1),
                       {}};
    for (Vertex v = 0; v < n; ++v) {
        const std::uint8_t c = (*colors)[v];
        if (c < 2) {
            w.v1.insert(v);
            w.evidence1[v] = static_cast<std::int8_t>(c);
        } else {
            w.v2.insert(v);
            w.evidence2[v] = static_cast<std::int8_t>(c - 2);
        }
    }
    return w;
}

PartitionWitness minimize_v2(const Digraph& d1, PartitionWitness w) {
    for (Vertex v : w.v2.members()) {
        auto in = d1.in(v);
        if (std::none_of(in.begin(), in.end(), [&](Vertex u) { return w.v1.contains(u); })) {
            w.v2.erase(v);
            w.v1.insert(v);
            w.moved.push_back(v);
        }
    }
    return w;
}

bool verify_witness(const Digraph& d1, const PartitionWitness& w) {
    const std::size_t n = d1.vertex_count();
    if (w.v1.universe() != n || w.v2.universe() != n || w.evidence1.size() != n || w.evidence2.size() != n)
        return false;
    if (w.v1.intersects(w.v2) || (w.v1 | w.v2) != d1.vertices())
        return false;

    VertexSet base1 = w.v1;
    for (Vertex v : w.moved) {
        if (!w.v1.contains(v) || !base1.contains(v))
            return false;
        base1.erase(v);
    }
    auto proper_on = [&](const VertexSet& part, const std::vector<std::int8_t>& evidence) {
        for (Vertex v = 0; v < n; ++v) {
            if (part.contains(v) != (evidence[v] >= 0) || evidence[v] > 1)
                return false;
        }
        for (Vertex v : part)
            for (Vertex u : d1.out(v))
                if (part.contains(u) && evidence[u] == evidence[v])
                    return false;
        return true;
    };
    // evidence2 still marks moved vertices, which are no longer in V2.
    VertexSet original2 = w.v2;
    for (Vertex v : w.moved)
        original2.insert(v);
    if (!proper_on(base1, w.evidence1) || !proper_on(original2, w.evidence2))
        return false;

    VertexSet grown = base1;
    for (Vertex v : w.moved) {
        for (Vertex u : d1.in(v))
            if (grown.contains(u))
                return false;
        grown.insert(v);
    }
    return true;
}

bool v2_fixpoint_holds(const Digraph& d1, const PartitionWitness& w) {
    for (Vertex v : w.v2) {
        auto in = d1.in(v);
        if (std::none_of(in.begin(), in.end(), [&](Vertex u) { return w.v1.contains(u); }))
            return false;
    }
    return true;
}

} // namespace qk
