#include "oracles.hpp"

#include "qk/errors.hpp"
#include "qk/harness.hpp"
#include "qk/kernel.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qk;

namespace {

const Digraph kTriangle = Digraph::from_edge_list(3, {{0, 1}, {1, 2}, {2, 0}});
const Digraph kSquare = Digraph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
const Digraph kTwoCycle = Digraph::from_edge_list(2, {{0, 1}, {1, 0}});

// Sorted member lists compare lexicographically.
std::vector<Vertex> first_kernel(const oracle::Matrix& m) {
    std::vector<std::vector<Vertex>> lists;
    for (auto mask : oracle::all_kernels(m))
        lists.push_back(oracle::to_set(m.n, mask).members());
    return *std::min_element(lists.begin(), lists.end());
}

} // namespace

TEST_CASE("is_kernel") {
    CHECK(is_kernel(kSquare, VertexSet(4, {0, 2})));
    CHECK_FALSE(is_kernel(kSquare, VertexSet(4, {0})));
    auto edgeless = Digraph::from_edge_list(3, {});
    CHECK(is_kernel(edgeless, edgeless.vertices()));
    // the 4-cycle has exactly the two alternating kernels
    auto kernels = oracle::all_kernels(oracle::Matrix(kSquare));
    CHECK(kernels == std::vector<std::uint64_t>{0b0101, 0b1010});
}

TEST_CASE("is_kernel agrees with the definition on every digraph with n <= 4") {
    for (std::size_t n = 0; n <= 4; ++n)
        harness::enumerate_digraphs(n, [&](std::uint64_t, const Digraph& d) {
            oracle::Matrix m(d);
            for (std::uint64_t mask = 0; mask <= m.all(); ++mask)
                REQUIRE(is_kernel(d, oracle::to_set(n, mask)) == oracle::is_kernel(m, mask));
        });
}

TEST_CASE("richardson_kernel") {
    CHECK(richardson_kernel(Digraph::from_edge_list(2, {{0, 1}})) == VertexSet(2, {0}));
    auto k = richardson_kernel(kSquare);
    CHECK((k == VertexSet(4, {0, 2}) || k == VertexSet(4, {1, 3})));
    // parts {0,1} -> {2,3,4}, connected
    std::vector<std::pair<Vertex, Vertex>> edges{{0, 0}, {0, 1}, {1, 1}, {1, 2}};
    auto bip = harness::gen_bipartite_orientation(2, 3, edges);
    CHECK(richardson_kernel(bip) == VertexSet(5, {0, 1}));

    try {
        richardson_kernel(kTriangle);
        FAIL("expected OddCycleError");
    } catch (const OddCycleError& e) {
        CHECK(e.cycle.size() == 3);
    }
}

TEST_CASE("richardson_kernel on random odd-cycle-free digraphs") {
    std::size_t tested = 0;
    for (std::uint64_t seed = 0; tested < 200; ++seed) {
        auto d = harness::gen_random(12, 0.12, seed);
        if (has_odd_directed_cycle(d))
            continue;
        ++tested;
        CHECK(oracle::is_kernel(oracle::Matrix(d), oracle::to_mask(richardson_kernel(d))));
    }
}

TEST_CASE("kernel_with_source_peeling") {
    auto edgeless = Digraph::from_edge_list(4, {});
    CHECK(kernel_with_source_peeling(edgeless) == edgeless.vertices());
    CHECK(kernel_with_source_peeling(Digraph::from_edge_list(3, {{0, 1}, {1, 2}})) == VertexSet(3, {0, 2}));

    // s = 0 peels t = 1, which leaves u = 2 without in-neighbors.
    auto st = harness::gen_star_triangle(1);
    auto k = kernel_with_source_peeling(st);
    CHECK(k == VertexSet(4, {0, 2}));
    CHECK(oracle::is_kernel(oracle::Matrix(st), oracle::to_mask(k)));

    try {
        kernel_with_source_peeling(kTriangle);
        FAIL("expected KernelNotFound");
    } catch (const KernelNotFound& e) {
        CHECK(e.proven_absent);
        CHECK(e.residual.vertex_count() == 3);
    }
    // isolated vertex is peeled, the triangle residual still has no kernel
    auto tri_plus = Digraph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 0}});
    CHECK_THROWS_AS(kernel_with_source_peeling(tri_plus), KernelNotFound);
}

TEST_CASE("compute_kernel finds a kernel exactly when one exists (n <= 4)") {
    for (std::size_t n = 0; n <= 4; ++n)
        harness::enumerate_digraphs(n, [&](std::uint64_t code, const Digraph& d) {
            oracle::Matrix m(d);
            const bool exists = !oracle::all_kernels(m).empty();
            INFO(n << ":" << code);
            try {
                auto r = compute_kernel(d);
                REQUIRE(exists);
                REQUIRE(oracle::is_kernel(m, oracle::to_mask(*r.kernel)));
            } catch (const KernelNotFound& e) {
                REQUIRE_FALSE(exists);
                CHECK(e.proven_absent);
            }
        });
}

TEST_CASE("exact_kernel") {
    CHECK_FALSE(exact_kernel(kTriangle).kernel.has_value());
    CHECK(exact_kernel(kTwoCycle).kernel == VertexSet(2, {0}));
    CHECK(exact_kernel(Digraph::from_edge_list(3, {})).kernel == VertexSet::full(3));
    CHECK_THROWS_AS(exact_kernel(harness::gen_random(30, 0.1, 1), 24), CapExceeded);
}

TEST_CASE("exact_kernel returns the smallest member list (n <= 4 and random n = 10)") {
    auto check = [](const Digraph& d) {
        oracle::Matrix m(d);
        auto r = exact_kernel(d);
        if (oracle::all_kernels(m).empty()) {
            REQUIRE_FALSE(r.kernel.has_value());
            return;
        }
        REQUIRE(r.kernel.has_value());
        REQUIRE(r.kernel->members() == first_kernel(m));
    };
    for (std::size_t n = 0; n <= 4; ++n)
        harness::enumerate_digraphs(n, [&](std::uint64_t, const Digraph& d) { check(d); });
    for (std::uint64_t seed = 0; seed < 50; ++seed)
        check(harness::gen_random(10, 0.25, seed));
}

TEST_CASE("is_kernel_perfect_oracle") {
    CHECK(is_kernel_perfect_oracle(kSquare));
    CHECK_FALSE(is_kernel_perfect_oracle(kTriangle));
    CHECK(is_kernel_perfect_oracle(Digraph::from_edge_list(4, {})));
    CHECK_THROWS_AS(is_kernel_perfect_oracle(harness::gen_random(13, 0.2, 1)), CapExceeded);

    for (std::size_t n = 0; n <= 4; ++n)
        harness::enumerate_digraphs(n, [&](std::uint64_t, const Digraph& d) {
            REQUIRE(is_kernel_perfect_oracle(d) == oracle::kernel_perfect(oracle::Matrix(d)));
        });
}
