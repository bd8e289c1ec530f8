#include <doctest.h>

#include <numeric>
#include <random>
#include <sstream>

#include "signbal/error.hpp"
#include "signbal/signed_graph.hpp"
#include "support.hpp"

using namespace signbal;

namespace {

ValidationKind kind_of(const RawMatrix& m) {
    try {
        validate(m);
    } catch (const ValidationError& e) {
        return e.kind();
    }
    FAIL("expected a ValidationError");
    return ValidationKind::shape;
}

std::size_t line_of(std::string_view text) {
    try {
        parse_edge_list(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    FAIL("expected a ParseError");
    return 0;
}

}  // namespace

TEST_SUITE("core_graph") {

TEST_CASE("valid matrices are accepted and round-trip") {
    const RawMatrix m{{0, 1, -1}, {1, 0, 0}, {-1, 0, 0}};
    const auto adj = SignedAdjacency::from_matrix(m);
    CHECK(adj.n() == 3);
    CHECK(adj.edge_count() == 2);
    CHECK(adj.entry(0, 2) == -1);
    CHECK(adj.entry(2, 0) == -1);
    CHECK(adj.entry(1, 2) == 0);
    CHECK(adj.to_matrix().data == m.data);
}

TEST_CASE("validation names the violated invariant") {
    CHECK(kind_of(RawMatrix{{0, 2}, {2, 0}}) == ValidationKind::alphabet);
    CHECK(kind_of(RawMatrix{{1, 0}, {0, 0}}) == ValidationKind::nonzero_diagonal);
    CHECK(kind_of(RawMatrix{{0, 1}, {-1, 0}}) == ValidationKind::asymmetric);
    CHECK(kind_of(RawMatrix{{0, 1}, {0, 0}}) == ValidationKind::asymmetric);
    RawMatrix bad(2);
    bad.data.pop_back();
    CHECK(kind_of(bad) == ValidationKind::shape);
    CHECK_THROWS_AS(RawMatrix({{0, 1}, {1}}), ValidationError);
}

TEST_CASE("edge lists build the same network as matrices") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto dense = oracle::random_dense(9, 0.5, 0.4, seed);
        const auto adj = testing_support::to_adjacency(dense);
        const auto edges = adj.edges();
        CHECK(SignedAdjacency::from_edges(adj.n(), edges) == adj);
        for (NodeId i = 0; i < 9; ++i)
            for (NodeId j = 0; j < 9; ++j) REQUIRE(adj.entry(i, j) == dense[i][j]);
        validate(adj);
    }
}

TEST_CASE("from_edges rejects malformed edges") {
    const std::vector<SignedEdge> loop{{1, 1, 1}};
    const std::vector<SignedEdge> range{{0, 3, 1}};
    const std::vector<SignedEdge> sign{{0, 1, 2}};
    const std::vector<SignedEdge> conflict{{0, 1, 1}, {1, 0, -1}};
    const std::vector<SignedEdge> repeat{{0, 1, 1}, {1, 0, 1}};
    CHECK_THROWS_AS(SignedAdjacency::from_edges(3, loop), InvalidArgument);
    CHECK_THROWS_AS(SignedAdjacency::from_edges(3, range), InvalidArgument);
    CHECK_THROWS_AS(SignedAdjacency::from_edges(3, sign), ValidationError);
    CHECK_THROWS_AS(SignedAdjacency::from_edges(3, conflict), InvalidArgument);
    CHECK(SignedAdjacency::from_edges(3, repeat).edge_count() == 1);
}

TEST_CASE("edge-list parsing") {
    const auto adj = parse_edge_list("# comment\nb c -1\na b +1\n\na c 1\nz\n");
    CHECK(adj.n() == 4);
    CHECK(adj.labels() == std::vector<std::string>{"a", "b", "c", "z"});
    CHECK(adj.entry(0, 1) == 1);
    CHECK(adj.entry(1, 2) == -1);
    CHECK(adj.entry(0, 2) == 1);
    CHECK(adj.degree(3) == 0);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(line_of("a b 1\na b c d\n") == 2);
    CHECK(line_of("a b 1\n\nc c 1\n") == 3);
    CHECK(line_of("a b 0\n") == 1);
    CHECK(line_of("a b +2\n") == 1);
    CHECK(line_of("a b 1\nb a -1\n") == 2);
    CHECK_THROWS_AS(parse_edge_list("a b 1\nb a 1\n", ParseOptions{DuplicatePolicy::reject}), ParseError);
    CHECK(parse_edge_list("a b 1\nb a 1\n").edge_count() == 1);
}

TEST_CASE("write then parse is the identity, isolated nodes included") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto adj = testing_support::random_adjacency(3 + seed % 11, 0.3, 0.5, seed);
        const std::string text = to_edge_list(adj);
        const auto back = parse_edge_list(text);
        REQUIRE(back == adj);
        REQUIRE(to_edge_list(back) == text);
    }
}

TEST_CASE("summary of a small network") {
    const auto adj = parse_edge_list("a b 1\nb c -1\na c -1\nd\n");
    const auto s = summarize(adj);
    CHECK(s.n == 4);
    CHECK(s.edges == 3);
    CHECK(s.negative_edges == 2);
    CHECK(s.edge_proportion == doctest::Approx(0.5));
    REQUIRE(s.negative_fraction);
    CHECK(*s.negative_fraction == doctest::Approx(2.0 / 3.0));
    CHECK_FALSE(summarize(parse_edge_list("a\nb\n")).negative_fraction);
    CHECK_THROWS_AS(summarize(parse_edge_list("a\n")), InvalidArgument);
}

TEST_CASE("permutation and negation") {
    std::mt19937_64 gen(5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto adj = testing_support::random_adjacency(10, 0.5, 0.3, seed);
        std::vector<NodeId> perm(10);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen);
        const auto p = permute(adj, perm);
        const auto neg = negate(adj);
        for (NodeId i = 0; i < 10; ++i)
            for (NodeId j = 0; j < 10; ++j) {
                REQUIRE(p.entry(perm[i], perm[j]) == adj.entry(i, j));
                REQUIRE(neg.entry(i, j) == -adj.entry(i, j));
            }
    }
}

TEST_CASE("sign matrices mirror the adjacency") {
    const auto adj = testing_support::random_adjacency(70, 0.4, 0.5, 11);
    const SignMatrices sm(adj);
    for (NodeId i = 0; i < 70; ++i)
        for (NodeId j = 0; j < 70; ++j) {
            REQUIRE(sm.pos(i, j) == (adj.entry(i, j) == 1));
            REQUIRE(sm.neg(i, j) == (adj.entry(i, j) == -1));
        }
}

}  // TEST_SUITE
