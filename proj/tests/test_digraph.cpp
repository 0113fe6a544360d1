#include "oracles.hpp"

#include "qk/errors.hpp"
#include "qk/harness.hpp"

#include <doctest.h>

using namespace qk;

namespace {

Digraph cycle(std::size_t n) {
    std::vector<Arc> arcs;
    for (Vertex i = 0; i < n; ++i)
        arcs.emplace_back(i, static_cast<Vertex>((i + 1) % n));
    return Digraph::from_edge_list(n, arcs);
}

VertexSet set_of(std::size_t n, std::initializer_list<Vertex> members) { return VertexSet(n, members); }

} // namespace

TEST_CASE("vertex set algebra") {
    VertexSet a(130, {0, 64, 129});
    VertexSet b(130, {64, 100});
    CHECK((a | b).size() == 4);
    CHECK((a & b).members() == std::vector<Vertex>{64});
    CHECK((a - b).members() == std::vector<Vertex>{0, 129});
    CHECK(a.complement().size() == 127);
    CHECK(a.lowest() == 0u);
    CHECK_FALSE(VertexSet(5).lowest().has_value());
    CHECK(VertexSet::from_mask(5, 0b10110).members() == std::vector<Vertex>{1, 2, 4});
    CHECK(VertexSet(5, {1, 3}).mask() == 0b01010u);
    CHECK(VertexSet(3, {0}).is_subset_of(VertexSet(3, {0, 2})));
    CHECK_THROWS_AS(a |= VertexSet(4), std::invalid_argument);
    CHECK_THROWS_AS(VertexSet(3).insert(3), std::out_of_range);
}

TEST_CASE("from_edge_list") {
    SUBCASE("2-cycle") {
        auto d = Digraph::from_edge_list(2, {{0, 1}, {1, 0}});
        CHECK(d.arc_count() == 2);
        CHECK(d.has_arc(0, 1));
        CHECK(d.has_arc(1, 0));
    }
    SUBCASE("4-cycle") {
        auto d = Digraph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
        CHECK(d.arc_count() == 4);
        for (Vertex v = 0; v < 4; ++v) {
            CHECK(d.out_degree(v) == 1);
            CHECK(d.in_degree(v) == 1);
        }
    }
    SUBCASE("loop rejected") { CHECK_THROWS_AS(Digraph::from_edge_list(1, {{0, 0}}), InvalidDigraph); }
    SUBCASE("out of range rejected") { CHECK_THROWS_AS(Digraph::from_edge_list(2, {{0, 2}}), InvalidDigraph); }
    SUBCASE("duplicates collapse") {
        auto d = Digraph::from_edge_list(2, {{0, 1}, {0, 1}});
        CHECK(d.arc_count() == 1);
    }
    SUBCASE("large graphs drop the bit rows") {
        auto d = harness::gen_random_arcs(1000, 3000, 1);
        CHECK_FALSE(d.has_masks());
        for (auto [u, v] : d.arcs())
            CHECK(d.has_arc(u, v));
    }
}

TEST_CASE("out_closed") {
    auto c4 = cycle(4);
    CHECK(out_closed(c4, set_of(4, {0})) == set_of(4, {0, 1}));
    auto edgeless = Digraph::from_edge_list(5, {});
    CHECK(out_closed(edgeless, set_of(5, {1, 3})) == set_of(5, {1, 3}));
    auto st = harness::gen_star_triangle(2);  // sources 0,1; t = 2
    CHECK(out_closed(st, set_of(5, {0, 1})) == set_of(5, {0, 1, 2}));
}

TEST_CASE("sources") {
    CHECK(sources(cycle(2)).empty());
    CHECK(sources(Digraph::from_edge_list(3, {{0, 1}, {1, 2}})) == set_of(3, {0}));
    CHECK(sources(harness::gen_star_triangle(3)) == set_of(6, {0, 1, 2}));
}

TEST_CASE("dist_from_set") {
    auto d = dist_from_set(cycle(4), set_of(4, {0}));
    for (Vertex v = 0; v < 4; ++v)
        CHECK(d[v] == v);
    auto e = dist_from_set(Digraph::from_edge_list(2, {}), set_of(2, {0}));
    CHECK(e[0] == 0u);
    CHECK_FALSE(e[1].has_value());
    // s = 0, t = 1, u = 2, w = 3
    auto st = dist_from_set(harness::gen_star_triangle(1), set_of(4, {0}));
    CHECK(st[1] == 1u);
    CHECK(st[2] == 2u);
    CHECK(st[3] == 3u);
}

TEST_CASE("dist_from_set agrees with Floyd-Warshall") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto d = harness::gen_random(9, 0.2, seed);
        oracle::Matrix m(d);
        const std::uint64_t from = (seed * 37) % 512;
        auto got = dist_from_set(d, oracle::to_set(9, from));
        auto want = oracle::distances(m, from);
        for (std::size_t v = 0; v < 9; ++v)
            CHECK(got[v] == want[v]);
    }
}

TEST_CASE("has_odd_directed_cycle") {
    CHECK(has_odd_directed_cycle(cycle(3)));
    CHECK_FALSE(has_odd_directed_cycle(cycle(4)));
    CHECK_FALSE(has_odd_directed_cycle(cycle(2)));
    // even cycles sharing a vertex can still close an odd one
    auto d = Digraph::from_edge_list(5, {{0, 1}, {1, 0}, {1, 2}, {2, 3}, {3, 4}, {4, 1}});
    CHECK_FALSE(has_odd_directed_cycle(d));
    auto odd = Digraph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 2}});
    CHECK(has_odd_directed_cycle(odd));
}

TEST_CASE("odd cycle detection matches matrix powers on every digraph with n <= 4") {
    for (std::size_t n = 1; n <= 4; ++n)
        harness::enumerate_digraphs(n, [&](std::uint64_t code, const Digraph& d) {
            const bool want = oracle::has_odd_cycle(oracle::Matrix(d));
            INFO(n << ":" << code);
            REQUIRE(has_odd_directed_cycle(d) == want);
            auto witness = find_odd_directed_cycle(d);
            REQUIRE(witness.has_value() == want);
            if (witness) {
                const auto& c = *witness;
                CHECK(c.size() % 2 == 1);
                for (std::size_t i = 0; i < c.size(); ++i)
                    CHECK(d.has_arc(c[i], c[(i + 1) % c.size()]));
                std::vector<Vertex> sorted = c;
                std::sort(sorted.begin(), sorted.end());
                CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
            }
        });
}

TEST_CASE("induced") {
    auto c4 = cycle(4);
    auto all = induced(c4, c4.vertices());
    CHECK(all.graph == c4);
    auto opposite = induced(c4, set_of(4, {0, 2}));
    CHECK(opposite.graph.vertex_count() == 2);
    CHECK(opposite.graph.arc_count() == 0);
    CHECK(opposite.to_parent == std::vector<Vertex>{0, 2});
    auto pair = induced(c4, set_of(4, {0, 1}));
    CHECK(pair.graph.arcs() == std::vector<Arc>{{0, 1}});
    CHECK(pair.lift(VertexSet(2, {1}), 4) == set_of(4, {1}));
}

TEST_CASE("strongly_connected_components") {
    auto c4 = strongly_connected_components(cycle(4));
    REQUIRE(c4.size() == 1);
    CHECK(c4[0].size() == 4);

    auto path = strongly_connected_components(Digraph::from_edge_list(3, {{0, 1}, {1, 2}}));
    REQUIRE(path.size() == 3);
    CHECK(path[0] == set_of(3, {0}));
    CHECK(path[1] == set_of(3, {1}));
    CHECK(path[2] == set_of(3, {2}));

    auto pendant = strongly_connected_components(Digraph::from_edge_list(3, {{0, 1}, {1, 0}, {1, 2}}));
    REQUIRE(pendant.size() == 2);
    CHECK(pendant[0] == set_of(3, {0, 1}));
    CHECK(pendant[1] == set_of(3, {2}));
}

TEST_CASE("components are topologically ordered and mutually reachable") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto d = harness::gen_random(10, 0.15, seed);
        auto comps = strongly_connected_components(d);
        oracle::Matrix m(d);
        std::vector<std::size_t> index(10);
        std::size_t total = 0;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            total += comps[i].size();
            for (auto v : comps[i])
                index[v] = i;
        }
        CHECK(total == 10);
        for (auto [u, v] : d.arcs())
            CHECK(index[u] <= index[v]);
        for (Vertex u = 0; u < 10; ++u) {
            auto reach = oracle::distances(m, std::uint64_t{1} << u);
            for (Vertex v = 0; v < 10; ++v) {
                auto back = oracle::distances(m, std::uint64_t{1} << v);
                const bool mutual = reach[v].has_value() && back[u].has_value();
                CHECK(mutual == (index[u] == index[v]));
            }
        }
    }
}

TEST_CASE("weak components and underlying graph") {
    auto d = Digraph::from_edge_list(5, {{1, 0}, {3, 4}, {4, 3}});
    auto comps = weakly_connected_components(d);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == set_of(5, {0, 1}));
    CHECK(comps[1] == set_of(5, {2}));
    CHECK(comps[2] == set_of(5, {3, 4}));
    auto g = underlying_graph(d);
    CHECK(g[0] == std::vector<Vertex>{1});
    CHECK(g[3] == std::vector<Vertex>{4});
    CHECK(g[2].empty());
}

TEST_CASE("reversed swaps arc directions") {
    auto d = harness::gen_random(8, 0.3, 5);
    auto r = reversed(d);
    CHECK(r.arc_count() == d.arc_count());
    for (auto [u, v] : d.arcs())
        CHECK(r.has_arc(v, u));
    CHECK(reversed(r) == d);
}
