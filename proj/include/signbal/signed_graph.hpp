#pragma once

// Undirected signed networks: storage, validation, edge-list I/O, summaries.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace signbal {

using NodeId = std::uint32_t;

struct SignedEdge {
    NodeId u;
    NodeId v;
    int sign;  // +1 or -1

    friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

struct Neighbor {
    NodeId node;
    std::int8_t sign;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Row-major n x n integer matrix, as handed over by callers before validation.
struct RawMatrix {
    std::size_t n = 0;
    std::vector<int> data;

    RawMatrix() = default;
    explicit RawMatrix(std::size_t size) : n(size), data(size * size, 0) {}
    RawMatrix(std::initializer_list<std::initializer_list<int>> rows);

    int& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
    int operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

/// Symmetric signed adjacency matrix with zero diagonal and entries in {-1,0,+1}.
/// Stored as sorted per-node neighbour lists; immutable once built.
class SignedAdjacency {
public:
    SignedAdjacency() = default;

    /// Builds from an undirected edge list. Identical duplicates collapse;
    /// conflicting signs, self-loops, out-of-range ids and bad signs throw.
    static SignedAdjacency from_edges(std::size_t n, std::span<const SignedEdge> edges,
                                      std::vector<std::string> labels = {});
    /// Builds from a dense matrix after validate(matrix).
    static SignedAdjacency from_matrix(const RawMatrix& matrix);

    std::size_t n() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

    /// A_ij; O(log deg(i)).
    int entry(NodeId i, NodeId j) const;
    std::span<const Neighbor> neighbors(NodeId i) const {
        return {neighbors_.data() + offsets_[i], neighbors_.data() + offsets_[i + 1]};
    }
    std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }

    /// Node labels in index order (lexicographically sorted).
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Edges with u < v, sorted by (u, v).
    std::vector<SignedEdge> edges() const;
    RawMatrix to_matrix() const;

    friend bool operator==(const SignedAdjacency&, const SignedAdjacency&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<Neighbor> neighbors_;
    std::vector<std::string> labels_;
};

/// Zero-padded decimal labels "0".."n-1" whose lexicographic order is numeric order.
std::vector<std::string> index_labels(std::size_t n);

/// Throws ValidationError naming the first violated invariant: shape, alphabet,
/// diagonal, then symmetry.
void validate(const RawMatrix& matrix);
/// Re-checks the stored invariants of an already-built adjacency.
void validate(const SignedAdjacency& adj);

/// Bit-packed indicator matrices P = 1{A = +1} and N = 1{A = -1}.
class SignMatrices {
public:
    explicit SignMatrices(const SignedAdjacency& adj);

    std::size_t n() const noexcept { return n_; }
    std::size_t words_per_row() const noexcept { return words_; }
    std::span<const std::uint64_t> pos_row(std::size_t i) const { return {pos_.data() + i * words_, words_}; }
    std::span<const std::uint64_t> neg_row(std::size_t i) const { return {neg_.data() + i * words_, words_}; }
    bool pos(std::size_t i, std::size_t j) const { return (pos_[i * words_ + j / 64] >> (j % 64)) & 1u; }
    bool neg(std::size_t i, std::size_t j) const { return (neg_[i * words_ + j / 64] >> (j % 64)) & 1u; }

private:
    std::size_t n_;
    std::size_t words_;
    std::vector<std::uint64_t> pos_;
    std::vector<std::uint64_t> neg_;
};

struct GraphSummary {
    std::size_t n = 0;
    std::size_t edges = 0;
    std::size_t negative_edges = 0;
    double edge_proportion = 0.0;
    /// Fraction of negative signs among present edges; empty when there are no edges.
    std::optional<double> negative_fraction;
};

/// Throws InvalidArgument when n < 2.
GraphSummary summarize(const SignedAdjacency& adj);

enum class DuplicatePolicy {
    merge_identical,  ///< repeated identical rows collapse; conflicting signs throw
    reject,           ///< any repeated pair throws
};

struct ParseOptions {
    DuplicatePolicy duplicates = DuplicatePolicy::merge_identical;
};

/// Parses `u v s` lines (s in {+1, -1, 1}); `#` starts a comment line and a
/// single-token line declares a node without edges. Labels are sorted
/// lexicographically to assign indices.
SignedAdjacency parse_edge_list(std::istream& in, const ParseOptions& options = {});
SignedAdjacency parse_edge_list(std::string_view text, const ParseOptions& options = {});

/// Writes edge-less nodes as single-token lines, then `u v +1|-1` rows sorted
/// by (label_u, label_v) with label_u < label_v.
void write_edge_list(std::ostream& out, const SignedAdjacency& adj);
std::string to_edge_list(const SignedAdjacency& adj);

/// Relabels nodes: node i of the input becomes node perm[i] of the output.
/// The result carries index labels.
SignedAdjacency permute(const SignedAdjacency& adj, std::span<const NodeId> perm);

/// Flips every edge sign.
SignedAdjacency negate(const SignedAdjacency& adj);

}  // namespace signbal
