#pragma once

// Triangle census by sign type. Triangle types are indexed by their number of
// negative edges: index 0 = type-1 (+++), 1 = type-2 (++-), 2 = type-3 (+--),
// 3 = type-4 (---). Types 1 and 3 are balanced.
//
// Every count is an entry of a product of the sign indicator matrices P and N
// read at an edge (i,j): (P^2)_ij, (N^2)_ij, (PN)_ij, (NP)_ij, which are the
// numbers of third nodes k with the given sign pair (A_ik, A_jk).

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "signbal/signed_graph.hpp"

namespace signbal {

inline constexpr std::size_t kTriangleTypes = 4;

struct TriangleCensus {
    std::size_t n = 0;
    std::uint64_t total = 0;
    std::array<std::uint64_t, kTriangleTypes> by_type{};

    std::uint64_t balanced() const noexcept { return by_type[0] + by_type[2]; }
    friend bool operator==(const TriangleCensus&, const TriangleCensus&) = default;
};

/// Per-node triangle counts (triangles containing node i).
struct NodeProjection {
    std::vector<std::uint64_t> triangles;
    std::vector<std::uint64_t> balanced;
    std::array<std::vector<std::uint64_t>, kTriangleTypes> by_type;

    friend bool operator==(const NodeProjection&, const NodeProjection&) = default;
};

/// Counts over third nodes k for one edge (i, j), i < j.
struct PairCounts {
    NodeId i = 0;
    NodeId j = 0;
    int sign = 0;
    std::uint32_t triangles = 0;
    std::uint32_t balanced = 0;
    std::array<std::uint32_t, kTriangleTypes> by_type{};
};

/// Dense symmetric n x n form of a pair projection.
struct DensePairCounts {
    std::size_t n = 0;
    std::vector<std::uint32_t> triangles;
    std::vector<std::uint32_t> balanced;
    std::array<std::vector<std::uint32_t>, kTriangleTypes> by_type;

    explicit DensePairCounts(std::size_t size = 0);
    std::size_t index(std::size_t i, std::size_t j) const { return i * n + j; }
    friend bool operator==(const DensePairCounts&, const DensePairCounts&) = default;
};

/// Pair counts stored per edge; every non-edge pair has all-zero counts.
struct PairProjection {
    std::size_t n = 0;
    std::vector<PairCounts> entries;  ///< sorted by (i, j), one per edge

    /// Counts for any pair, zeros when (i, j) is not an edge; O(log E).
    PairCounts at(NodeId i, NodeId j) const;
    DensePairCounts to_dense() const;
};

struct CensusOptions {
    /// Bit-matrix kernel up to this many nodes, neighbour-list merging above.
    std::size_t dense_threshold = 10'000;
    unsigned threads = 0;
};

struct FullCensus {
    TriangleCensus census;
    NodeProjection nodes;
    PairProjection pairs;
};

TriangleCensus census(const SignedAdjacency& adj, const CensusOptions& options = {});
NodeProjection node_projection(const SignedAdjacency& adj, const CensusOptions& options = {});
PairProjection pair_projection(const SignedAdjacency& adj, const CensusOptions& options = {});
/// All three from one pass over the edges.
FullCensus full_census(const SignedAdjacency& adj, const CensusOptions& options = {});

/// Derives totals and per-node counts from a pair projection.
TriangleCensus census_from_pairs(const PairProjection& pairs);
NodeProjection nodes_from_pairs(const PairProjection& pairs);

struct BruteForceCensus {
    TriangleCensus census;
    NodeProjection nodes;
    DensePairCounts pairs;
};

inline constexpr std::size_t kBruteForceCap = 64;

/// O(n^3) enumeration of all triples; throws InvalidArgument when n > cap.
BruteForceCensus brute_force_census(const SignedAdjacency& adj, std::size_t cap = kBruteForceCap);

/// Triangle type index (0..3) from the three edge signs (each +1 or -1).
constexpr std::size_t triangle_type(int a, int b, int c) noexcept {
    return static_cast<std::size_t>((a < 0) + (b < 0) + (c < 0));
}

}  // namespace signbal
