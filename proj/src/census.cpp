#include "signbal/census.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include "signbal/error.hpp"
#include "signbal/parallel.hpp"

namespace signbal {

DensePairCounts::DensePairCounts(std::size_t size)
    : n(size), triangles(size * size, 0), balanced(size * size, 0) {
    for (auto& t : by_type) t.assign(size * size, 0);
}

PairCounts PairProjection::at(NodeId i, NodeId j) const {
    if (i > j) std::swap(i, j);
    const auto it = std::lower_bound(entries.begin(), entries.end(), std::pair{i, j},
                                     [](const PairCounts& e, const std::pair<NodeId, NodeId>& key) {
                                         return std::pair{e.i, e.j} < key;
                                     });
    if (it != entries.end() && it->i == i && it->j == j) return *it;
    PairCounts zero;
    zero.i = i;
    zero.j = j;
    return zero;
}

DensePairCounts PairProjection::to_dense() const {
    DensePairCounts d(n);
    for (const auto& e : entries) {
        for (const auto idx : {d.index(e.i, e.j), d.index(e.j, e.i)}) {
            d.triangles[idx] = e.triangles;
            d.balanced[idx] = e.balanced;
            for (std::size_t t = 0; t < kTriangleTypes; ++t) d.by_type[t][idx] = e.by_type[t];
        }
    }
    return d;
}

namespace {

// Common-neighbour counts of an edge split by the signs (A_ik, A_jk).
struct SignPairCounts {
    std::uint32_t pp = 0;  // (P^2)_ij
    std::uint32_t nn = 0;  // (N^2)_ij
    std::uint32_t pn = 0;  // (PN)_ij
    std::uint32_t np = 0;  // (NP)_ij
};

std::uint32_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::uint32_t c = 0;
    for (std::size_t w = 0; w < a.size(); ++w) c += static_cast<std::uint32_t>(std::popcount(a[w] & b[w]));
    return c;
}

SignPairCounts dense_counts(const SignMatrices& m, NodeId i, NodeId j) {
    const auto pi = m.pos_row(i), ni = m.neg_row(i), pj = m.pos_row(j), nj = m.neg_row(j);
    return {and_popcount(pi, pj), and_popcount(ni, nj), and_popcount(pi, nj), and_popcount(ni, pj)};
}

SignPairCounts merge_counts(std::span<const Neighbor> a, std::span<const Neighbor> b) {
    SignPairCounts c;
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->node < ib->node) {
            ++ia;
        } else if (ib->node < ia->node) {
            ++ib;
        } else {
            if (ia->sign > 0)
                (ib->sign > 0 ? c.pp : c.pn) += 1;
            else
                (ib->sign > 0 ? c.np : c.nn) += 1;
            ++ia;
            ++ib;
        }
    }
    return c;
}

void fill_pair(PairCounts& out, const SignPairCounts& c) {
    out.triangles = c.pp + c.nn + c.pn + c.np;
    if (out.sign > 0) {
        out.by_type = {c.pp, c.pn + c.np, c.nn, 0};
        out.balanced = c.pp + c.nn;
    } else {
        out.by_type = {0, c.pp, c.pn + c.np, c.nn};
        out.balanced = c.pn + c.np;
    }
}

}  // namespace

PairProjection pair_projection(const SignedAdjacency& adj, const CensusOptions& options) {
    const std::size_t n = adj.n();
    PairProjection proj;
    proj.n = n;

    // Offsets of each node's upper-triangle edges in the entry array.
    std::vector<std::size_t> start(n + 1, 0);
    for (NodeId i = 0; i < n; ++i) {
        const auto row = adj.neighbors(i);
        start[i + 1] = start[i] + static_cast<std::size_t>(std::count_if(row.begin(), row.end(),
                                                                         [i](const Neighbor& nb) { return nb.node > i; }));
    }
    proj.entries.resize(start[n]);

    const bool dense = n <= options.dense_threshold;
    std::optional<SignMatrices> bits;
    if (dense) bits.emplace(adj);

    parallel_for(n, options.threads, [&](std::size_t row) {
        const auto i = static_cast<NodeId>(row);
        std::size_t slot = start[i];
        for (const auto& nb : adj.neighbors(i)) {
            if (nb.node <= i) continue;
            PairCounts& out = proj.entries[slot++];
            out.i = i;
            out.j = nb.node;
            out.sign = nb.sign;
            fill_pair(out, dense ? dense_counts(*bits, i, nb.node) : merge_counts(adj.neighbors(i), adj.neighbors(nb.node)));
        }
    });
    return proj;
}

TriangleCensus census_from_pairs(const PairProjection& pairs) {
    TriangleCensus c;
    c.n = pairs.n;
    for (const auto& e : pairs.entries) {
        c.total += e.triangles;
        for (std::size_t t = 0; t < kTriangleTypes; ++t) c.by_type[t] += e.by_type[t];
    }
    // Each triangle is seen once from each of its three edges.
    c.total /= 3;
    for (auto& t : c.by_type) t /= 3;
    return c;
}

NodeProjection nodes_from_pairs(const PairProjection& pairs) {
    const std::size_t n = pairs.n;
    NodeProjection p;
    p.triangles.assign(n, 0);
    p.balanced.assign(n, 0);
    for (auto& t : p.by_type) t.assign(n, 0);
    for (const auto& e : pairs.entries) {
        for (const NodeId v : {e.i, e.j}) {
            p.triangles[v] += e.triangles;
            p.balanced[v] += e.balanced;
            for (std::size_t t = 0; t < kTriangleTypes; ++t) p.by_type[t][v] += e.by_type[t];
        }
    }
    // A triangle at apex i is reached through both of its edges at i.
    for (auto& v : p.triangles) v /= 2;
    for (auto& v : p.balanced) v /= 2;
    for (auto& t : p.by_type)
        for (auto& v : t) v /= 2;
    return p;
}

FullCensus full_census(const SignedAdjacency& adj, const CensusOptions& options) {
    FullCensus f;
    f.pairs = pair_projection(adj, options);
    f.census = census_from_pairs(f.pairs);
    f.nodes = nodes_from_pairs(f.pairs);
    return f;
}

TriangleCensus census(const SignedAdjacency& adj, const CensusOptions& options) {
    return census_from_pairs(pair_projection(adj, options));
}

NodeProjection node_projection(const SignedAdjacency& adj, const CensusOptions& options) {
    return nodes_from_pairs(pair_projection(adj, options));
}

BruteForceCensus brute_force_census(const SignedAdjacency& adj, std::size_t cap) {
    const std::size_t n = adj.n();
    if (n > cap) throw InvalidArgument("brute-force census is capped at " + std::to_string(cap) + " nodes");
    const RawMatrix a = adj.to_matrix();

    BruteForceCensus out{{}, {}, DensePairCounts(n)};
    out.census.n = n;
    auto& nodes = out.nodes;
    nodes.triangles.assign(n, 0);
    nodes.balanced.assign(n, 0);
    for (auto& t : nodes.by_type) t.assign(n, 0);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                const int sij = a(i, j), sik = a(i, k), sjk = a(j, k);
                if (sij == 0 || sik == 0 || sjk == 0) continue;
                const std::size_t type = triangle_type(sij, sik, sjk);
                const bool balanced = sij * sik * sjk > 0;
                ++out.census.total;
                ++out.census.by_type[type];
                for (const std::size_t v : {i, j, k}) {
                    ++nodes.triangles[v];
                    nodes.balanced[v] += balanced;
                    ++nodes.by_type[type][v];
                }
                const std::size_t members[3] = {i, j, k};
                for (int x = 0; x < 3; ++x)
                    for (int y = 0; y < 3; ++y) {
                        if (x == y) continue;
                        const std::size_t idx = out.pairs.index(members[x], members[y]);
                        ++out.pairs.triangles[idx];
                        out.pairs.balanced[idx] += balanced;
                        ++out.pairs.by_type[type][idx];
                    }
            }
    return out;
}

}  // namespace signbal
