#include "oracles.hpp"

#include "qk/errors.hpp"
#include "qk/harness.hpp"
#include "qk/random.hpp"
#include "qk/reductions.hpp"

#include <doctest.h>

using namespace qk;

namespace {

std::vector<std::pair<Vertex, Vertex>> icosahedron_edges() {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i < 5; ++i) {
        const Vertex up = 1 + i, up_next = 1 + (i + 1) % 5;
        const Vertex low = 6 + i, low_next = 6 + (i + 1) % 5;
        e.emplace_back(0, up);
        e.emplace_back(up, up_next);
        e.emplace_back(11, low);
        e.emplace_back(low, low_next);
        e.emplace_back(up, low);
        e.emplace_back(up, low_next);
    }
    return e;
}

Digraph orient(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges, std::uint64_t seed) {
    Xorshift64Star rng(seed);
    std::vector<Arc> arcs;
    for (auto [u, v] : edges) {
        switch (rng.below(3)) {
        case 0:
            arcs.emplace_back(u, v);
            break;
        case 1:
            arcs.emplace_back(v, u);
            break;
        default:
            arcs.emplace_back(u, v);
            arcs.emplace_back(v, u);
        }
    }
    return Digraph::from_edge_list(n, arcs);
}

} // namespace

TEST_CASE("case1_reduce") {
    SUBCASE("star into a triangle with two sources") {
        // s1 = 0, s2 = 1, t = 2, u = 3, w = 4
        auto r = case1_reduce(harness::gen_star_triangle(2));
        CHECK(r.reduced.vertex_count() == 4);
        CHECK(r.info.index_map == std::vector<Vertex>{3, 4});
        CHECK(r.info.gadget_x == 2u);
        CHECK(r.info.gadget_y == 3u);
        // u -> w kept; x -> y; y -> u since u has the in-neighbor t
        CHECK(r.reduced.arcs() == std::vector<Arc>{{0, 1}, {2, 3}, {3, 0}});
    }
    SUBCASE("two sources into a sink") {
        auto r = case1_reduce(Digraph::from_edge_list(3, {{0, 2}, {1, 2}}));
        CHECK(r.reduced.vertex_count() == 2);
        CHECK(r.reduced.arcs() == std::vector<Arc>{{0, 1}});
    }
    SUBCASE("one source with one out-neighbor is case 2") {
        CHECK_THROWS_AS(case1_reduce(Digraph::from_edge_list(3, {{0, 1}, {1, 2}})), PreconditionError);
    }
}

TEST_CASE("case2_reduce") {
    SUBCASE("peel") {
        auto d = Digraph::from_edge_list(3, {{0, 1}, {1, 2}, {2, 1}});
        auto r = case2_reduce(d);
        CHECK(r.info.kind == ReductionCase::case2_peel);
        CHECK(r.info.s1 == VertexSet(3, {2}));
        CHECK(r.reduced.vertex_count() == 0);
        CHECK(lift(d, VertexSet(0), r.info) == VertexSet(3, {0}));
    }
    SUBCASE("no sources") {
        auto d = Digraph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}, {3, 2}});
        auto r = case2_reduce(d);
        CHECK(r.info.kind == ReductionCase::case2_no_sources);
        CHECK(r.reduced.arcs() == std::vector<Arc>{{0, 1}, {1, 0}});
        CHECK(r.info.index_map == std::vector<Vertex>{2, 3});
        CHECK(lift(d, VertexSet(2, {0}), r.info) == VertexSet(4, {0, 2}));
    }
    SUBCASE("gadget") {
        // s = 0 -> t = 1 -> 2 -> {3, 4}, both back to 1
        auto d = Digraph::from_edge_list(5, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 1}, {4, 1}});
        auto r = case2_reduce(d);
        CHECK(r.info.kind == ReductionCase::case2_gadget);
        CHECK(r.info.s1 == VertexSet(5, {2}));
        CHECK(r.reduced.arcs() == std::vector<Arc>{{0, 1}});
        auto k = lift(d, VertexSet(2, {0}), r.info);
        CHECK(k == VertexSet(5, {0, 2}));
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(case2_reduce(Digraph::from_edge_list(3, {{0, 2}, {1, 2}})), PreconditionError);
        CHECK_THROWS_AS(case2_reduce(Digraph::from_edge_list(4, {{0, 1}, {2, 3}, {3, 2}})), PreconditionError);
    }
}

TEST_CASE("lift") {
    auto d = harness::gen_star_triangle(2);
    auto r = case1_reduce(d);
    // K1 = {x, u}
    auto k = lift(d, VertexSet(4, {0, 2}), r.info);
    CHECK(k == VertexSet(5, {0, 1, 3}));
    CHECK(k.size() == 3);
    CHECK(lift(d, VertexSet(4, {1}), r.info) == VertexSet(5, {0, 1, 4}));
    // {x} lifts to S alone, leaving w at distance 3
    CHECK_THROWS_AS(lift(d, VertexSet(4, {2}), r.info), ConstructionError);
}

TEST_CASE("reductions shrink and lift back on every sourced digraph with n <= 4") {
    for (std::size_t n = 2; n <= 4; ++n)
        harness::enumerate_digraphs(n, [&](std::uint64_t code, const Digraph& d) {
            const VertexSet s = sources(d);
            if (s.empty() || !isolated_vertices(d).empty() || weakly_connected_components(d).size() != 1)
                return;
            INFO(n << ":" << code);
            const bool first = out_closed(d, s).size() >= 3;
            auto r = first ? case1_reduce(d) : case2_reduce(d);
            REQUIRE(r.reduced.vertex_count() < n);
            auto k1 = min_quasi_kernel(r.reduced);
            auto k = lift(d, k1, r.info);
            REQUIRE(oracle::is_quasi_kernel(oracle::Matrix(d), oracle::to_mask(k)));
            if (first)
                CHECK(k.size() + 1 <= k1.size() + s.size());
            const bool reduced_ok = 2 * static_cast<std::int64_t>(k1.size()) <= bound_numerator(r.reduced);
            if (reduced_ok)
                CHECK(2 * static_cast<std::int64_t>(k.size()) <= bound_numerator(d));
        });
}

TEST_CASE("solve") {
    SUBCASE("empty digraph") {
        auto result = solve(Digraph::from_edge_list(0, {}));
        CHECK(result.certificate.kernel_set.empty());
        CHECK(result.certificate.bound_numerator == 0);
        CHECK(result.certificate.valid);
        CHECK(result.certificate.within_bound);
    }
    SUBCASE("disjoint 2- and 4-cycles") {
        std::vector<unsigned> lengths{2, 2, 4, 4};
        auto result = solve(harness::gen_cycle_union(lengths));
        CHECK(result.certificate.valid);
        CHECK(result.certificate.kernel_set.size() == 6);
        CHECK(result.certificate.bound_numerator == 12);
    }
    SUBCASE("orientations of the icosahedron") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto d = orient(12, icosahedron_edges(), seed);
            auto result = solve(d);
            CHECK(result.certificate.valid);
            CHECK(result.certificate.within_bound);
            CHECK(result.bound_guaranteed);
            CHECK(oracle::is_quasi_kernel(oracle::Matrix(d), oracle::to_mask(result.certificate.kernel_set)));
        }
    }
    SUBCASE("star into a triangle meets the bound with equality") {
        for (std::size_t s = 1; s <= 6; ++s) {
            auto result = solve(harness::gen_star_triangle(s));
            CHECK(result.certificate.kernel_set.size() == s + 1);
            CHECK(2 * static_cast<std::int64_t>(s + 1) == result.certificate.bound_numerator);
        }
    }
    SUBCASE("no 4-coloring falls back to the oracle") {
        std::vector<Arc> arcs;
        for (Vertex u = 0; u < 5; ++u)
            for (Vertex v = 0; v < 5; ++v)
                if (u != v)
                    arcs.emplace_back(u, v);
        auto result = solve(Digraph::from_edge_list(5, arcs));
        CHECK(result.certificate.valid);
        CHECK_FALSE(result.bound_guaranteed);
        CHECK(result.certificate.method == "min_oracle");
    }
    SUBCASE("trace records the reduction chain") {
        auto result = solve(harness::gen_star_triangle(2));
        CHECK(result.trace["step"] == "case1");
        CHECK(result.trace.contains("child"));
    }
}

TEST_CASE("solve is valid and within the bound on every digraph with n <= 4") {
    for (std::size_t n = 0; n <= 4; ++n)
        harness::enumerate_digraphs(n, [&](std::uint64_t code, const Digraph& d) {
            INFO(n << ":" << code);
            auto result = solve(d);
            oracle::Matrix m(d);
            REQUIRE(oracle::is_quasi_kernel(m, oracle::to_mask(result.certificate.kernel_set)));
            REQUIRE(result.certificate.within_bound);
            REQUIRE(2 * static_cast<std::int64_t>(result.certificate.kernel_set.size()) <= oracle::bound_numerator(m));
        });
}

TEST_CASE("solve on random sparse digraphs with sources") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto d = harness::gen_random(14, 0.06 + 0.005 * static_cast<double>(seed % 20), seed);
        INFO("seed " << seed);
        auto result = solve(d);
        REQUIRE(result.certificate.valid);
        REQUIRE(result.certificate.within_bound);
        REQUIRE(oracle::is_quasi_kernel(oracle::Matrix(d), oracle::to_mask(result.certificate.kernel_set)));
    }
}
