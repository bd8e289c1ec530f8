#include <doctest.h>

#include <numeric>
#include <random>

#include "signbal/census.hpp"
#include "signbal/error.hpp"
#include "support.hpp"

using namespace signbal;

namespace {

void check_against_oracle(const oracle::Dense& dense, const CensusOptions& options) {
    const auto adj = testing_support::to_adjacency(dense);
    const auto want = oracle::census(dense);
    const auto full = full_census(adj, options);
    REQUIRE(full.census.total == want.total);
    for (std::size_t t = 0; t < 4; ++t) REQUIRE(full.census.by_type[t] == want.by_type[t]);
    for (NodeId i = 0; i < adj.n(); ++i) {
        REQUIRE(full.nodes.triangles[i] == want.node_total[i]);
        for (std::size_t t = 0; t < 4; ++t) REQUIRE(full.nodes.by_type[t][i] == want.node_type[t][i]);
        for (NodeId j = 0; j < adj.n(); ++j) {
            if (i == j) continue;
            const auto pc = full.pairs.at(i, j);
            REQUIRE(pc.triangles == static_cast<std::uint32_t>(want.pair_total[i][j]));
            for (std::size_t t = 0; t < 4; ++t)
                REQUIRE(pc.by_type[t] == static_cast<std::uint32_t>(want.pair_type[t][i][j]));
        }
    }
}

}  // namespace

TEST_SUITE("motif_census") {

TEST_CASE("hand-counted networks") {
    // one triangle of each type around a shared hub would share edges, so use
    // four disjoint triangles instead
    const auto adj = parse_edge_list(
        "a1 a2 1\na2 a3 1\na1 a3 1\n"
        "b1 b2 -1\nb2 b3 1\nb1 b3 1\n"
        "c1 c2 -1\nc2 c3 -1\nc1 c3 1\n"
        "d1 d2 -1\nd2 d3 -1\nd1 d3 -1\n");
    const auto c = census(adj);
    CHECK(c.total == 4);
    CHECK(c.by_type == std::array<std::uint64_t, 4>{1, 1, 1, 1});
    CHECK(c.balanced() == 2);

    const auto k4 = parse_edge_list("a b 1\na c 1\na d 1\nb c 1\nb d 1\nc d 1\n");
    CHECK(census(k4).total == 4);
    CHECK(census(k4).by_type[0] == 4);
    CHECK(census(parse_edge_list("a b 1\nb c 1\n")).total == 0);
}

TEST_CASE("both kernels equal the triple-loop oracle") {
    std::uint64_t seed = 0;
    for (const double density : {0.2, 0.5, 0.9})
        for (const double neg : {0.0, 0.3, 0.7, 1.0})
            for (std::size_t n = 3; n <= 14; n += 3) {
                const auto dense = oracle::random_dense(n, density, neg, ++seed);
                check_against_oracle(dense, CensusOptions{});
                check_against_oracle(dense, CensusOptions{0, 1});
            }
    // more than one 64-bit word per row
    check_against_oracle(oracle::random_dense(150, 0.3, 0.4, 77), CensusOptions{});
    check_against_oracle(oracle::random_dense(150, 0.3, 0.4, 77), CensusOptions{0, 3});
}

TEST_CASE("library brute force agrees with the kernels") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto adj = testing_support::random_adjacency(12, 0.6, 0.5, seed);
        const auto bf = brute_force_census(adj);
        const auto full = full_census(adj);
        CHECK(bf.census == full.census);
        CHECK(bf.nodes == full.nodes);
        CHECK(bf.pairs == full.pairs.to_dense());
    }
    CHECK_THROWS_AS(brute_force_census(testing_support::random_adjacency(70, 0.1, 0.1, 1)), InvalidArgument);
}

TEST_CASE("projections sum to the totals") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto adj = testing_support::random_adjacency(25, 0.4, 0.4, seed);
        const auto full = full_census(adj);
        const auto node_sum = std::accumulate(full.nodes.triangles.begin(), full.nodes.triangles.end(), std::uint64_t{0});
        CHECK(node_sum == 3 * full.census.total);
        std::uint64_t pair_sum = 0;
        for (const auto& e : full.pairs.entries) pair_sum += e.triangles;
        CHECK(pair_sum == 3 * full.census.total);
        CHECK(census_from_pairs(full.pairs) == full.census);
        CHECK(nodes_from_pairs(full.pairs) == full.nodes);
        for (std::size_t i = 0; i < adj.n(); ++i)
            CHECK(full.nodes.balanced[i] == full.nodes.by_type[0][i] + full.nodes.by_type[2][i]);
    }
}

TEST_CASE("relabelling nodes permutes projections and keeps totals") {
    std::mt19937_64 gen(8);
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto adj = testing_support::random_adjacency(20, 0.5, 0.4, seed);
        std::vector<NodeId> perm(20);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen);
        const auto a = full_census(adj);
        const auto b = full_census(permute(adj, perm));
        CHECK(a.census.by_type == b.census.by_type);
        for (NodeId i = 0; i < 20; ++i) REQUIRE(a.nodes.balanced[i] == b.nodes.balanced[perm[i]]);
    }
}

TEST_CASE("negating signs reverses the type order") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto adj = testing_support::random_adjacency(18, 0.6, 0.3, seed);
        const auto a = census(adj);
        const auto b = census(negate(adj));
        for (std::size_t t = 0; t < 4; ++t) CHECK(a.by_type[t] == b.by_type[3 - t]);
    }
}

TEST_CASE("thread count does not change the census") {
    const auto adj = testing_support::random_adjacency(200, 0.2, 0.5, 3);
    const auto a = full_census(adj, CensusOptions{10'000, 1});
    const auto b = full_census(adj, CensusOptions{10'000, 4});
    CHECK(a.census == b.census);
    CHECK(a.nodes == b.nodes);
    CHECK(a.pairs.to_dense() == b.pairs.to_dense());
}

}  // TEST_SUITE
