#include "signbal/signed_graph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "signbal/error.hpp"

namespace signbal {

RawMatrix::RawMatrix(std::initializer_list<std::initializer_list<int>> rows) : n(rows.size()) {
    data.reserve(n * n);
    for (const auto& row : rows) {
        if (row.size() != n) throw ValidationError(ValidationKind::shape, "ragged row");
        data.insert(data.end(), row.begin(), row.end());
    }
}

std::vector<std::string> index_labels(std::size_t n) {
    const std::size_t width = n <= 1 ? 1 : std::to_string(n - 1).size();
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string digits = std::to_string(i);
        labels[i] = std::string(width - digits.size(), '0') + digits;
    }
    return labels;
}

SignedAdjacency SignedAdjacency::from_edges(std::size_t n, std::span<const SignedEdge> edges,
                                            std::vector<std::string> labels) {
    if (labels.empty()) labels = index_labels(n);
    if (labels.size() != n) throw InvalidArgument("label count does not match node count");
    if (n > std::numeric_limits<NodeId>::max()) throw InvalidArgument("too many nodes");

    std::vector<SignedEdge> canon;
    canon.reserve(edges.size());
    for (const auto& e : edges) {
        if (e.u >= n || e.v >= n) throw InvalidArgument("edge endpoint out of range");
        if (e.u == e.v) throw InvalidArgument("self-loop on node " + labels[e.u]);
        if (e.sign != 1 && e.sign != -1) throw ValidationError(ValidationKind::alphabet, "edge sign must be +1 or -1");
        canon.push_back(e.u < e.v ? e : SignedEdge{e.v, e.u, e.sign});
    }
    std::sort(canon.begin(), canon.end(), [](const SignedEdge& a, const SignedEdge& b) {
        return std::tie(a.u, a.v, a.sign) < std::tie(b.u, b.v, b.sign);
    });
    std::vector<SignedEdge> unique;
    unique.reserve(canon.size());
    for (const auto& e : canon) {
        if (!unique.empty() && unique.back().u == e.u && unique.back().v == e.v) {
            if (unique.back().sign != e.sign)
                throw InvalidArgument("conflicting signs for pair (" + labels[e.u] + ", " + labels[e.v] + ")");
            continue;
        }
        unique.push_back(e);
    }

    SignedAdjacency adj;
    adj.n_ = n;
    adj.labels_ = std::move(labels);
    adj.offsets_.assign(n + 1, 0);
    for (const auto& e : unique) {
        ++adj.offsets_[e.u + 1];
        ++adj.offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) adj.offsets_[i + 1] += adj.offsets_[i];
    adj.neighbors_.resize(adj.offsets_[n]);
    std::vector<std::size_t> cursor(adj.offsets_.begin(), adj.offsets_.end() - 1);
    // `unique` is sorted by (u, v), so the v-rows fill in increasing u and the
    // u-rows in increasing v; each row still needs a merge of the two runs.
    for (const auto& e : unique) {
        adj.neighbors_[cursor[e.u]++] = {e.v, static_cast<std::int8_t>(e.sign)};
        adj.neighbors_[cursor[e.v]++] = {e.u, static_cast<std::int8_t>(e.sign)};
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto first = adj.neighbors_.begin() + static_cast<std::ptrdiff_t>(adj.offsets_[i]);
        auto last = adj.neighbors_.begin() + static_cast<std::ptrdiff_t>(adj.offsets_[i + 1]);
        std::sort(first, last, [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    }
    return adj;
}

SignedAdjacency SignedAdjacency::from_matrix(const RawMatrix& matrix) {
    validate(matrix);
    std::vector<SignedEdge> edges;
    for (std::size_t i = 0; i < matrix.n; ++i)
        for (std::size_t j = i + 1; j < matrix.n; ++j)
            if (matrix(i, j) != 0)
                edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), matrix(i, j)});
    return from_edges(matrix.n, edges);
}

int SignedAdjacency::entry(NodeId i, NodeId j) const {
    if (i >= n_ || j >= n_) throw InvalidArgument("node index out of range");
    const auto row = neighbors(i);
    const auto it = std::lower_bound(row.begin(), row.end(), j,
                                     [](const Neighbor& nb, NodeId key) { return nb.node < key; });
    return (it != row.end() && it->node == j) ? it->sign : 0;
}

std::vector<SignedEdge> SignedAdjacency::edges() const {
    std::vector<SignedEdge> out;
    out.reserve(edge_count());
    for (NodeId i = 0; i < n_; ++i)
        for (const auto& nb : neighbors(i))
            if (nb.node > i) out.push_back({i, nb.node, nb.sign});
    return out;
}

RawMatrix SignedAdjacency::to_matrix() const {
    RawMatrix m(n_);
    for (NodeId i = 0; i < n_; ++i)
        for (const auto& nb : neighbors(i)) m(i, nb.node) = nb.sign;
    return m;
}

void validate(const RawMatrix& matrix) {
    const std::size_t n = matrix.n;
    if (matrix.data.size() != n * n) throw ValidationError(ValidationKind::shape, "data size is not n*n");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int a = matrix(i, j);
            if (a != -1 && a != 0 && a != 1)
                throw ValidationError(ValidationKind::alphabet, "A(" + std::to_string(i) + "," + std::to_string(j) +
                                                                    ") = " + std::to_string(a));
        }
    for (std::size_t i = 0; i < n; ++i)
        if (matrix(i, i) != 0)
            throw ValidationError(ValidationKind::nonzero_diagonal, "A(" + std::to_string(i) + "," + std::to_string(i) +
                                                                        ") = " + std::to_string(matrix(i, i)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (matrix(i, j) != matrix(j, i))
                throw ValidationError(ValidationKind::asymmetric,
                                      "A(" + std::to_string(i) + "," + std::to_string(j) + ") != A(" +
                                          std::to_string(j) + "," + std::to_string(i) + ")");
}

void validate(const SignedAdjacency& adj) {
    for (NodeId i = 0; i < adj.n(); ++i) {
        NodeId prev = 0;
        bool first = true;
        for (const auto& nb : adj.neighbors(i)) {
            if (nb.sign != 1 && nb.sign != -1)
                throw ValidationError(ValidationKind::alphabet, "stored sign " + std::to_string(nb.sign));
            if (nb.node == i) throw ValidationError(ValidationKind::nonzero_diagonal, "self-loop at " + std::to_string(i));
            if (!first && nb.node <= prev) throw ValidationError(ValidationKind::shape, "unsorted neighbour list");
            if (adj.entry(nb.node, i) != nb.sign)
                throw ValidationError(ValidationKind::asymmetric,
                                      "pair (" + std::to_string(i) + "," + std::to_string(nb.node) + ")");
            prev = nb.node;
            first = false;
        }
    }
}

SignMatrices::SignMatrices(const SignedAdjacency& adj)
    : n_(adj.n()), words_((adj.n() + 63) / 64), pos_(n_ * words_, 0), neg_(n_ * words_, 0) {
    for (NodeId i = 0; i < n_; ++i)
        for (const auto& nb : adj.neighbors(i)) {
            auto& bits = nb.sign > 0 ? pos_ : neg_;
            bits[i * words_ + nb.node / 64] |= std::uint64_t{1} << (nb.node % 64);
        }
}

GraphSummary summarize(const SignedAdjacency& adj) {
    const std::size_t n = adj.n();
    if (n < 2) throw InvalidArgument("edge proportion is undefined for fewer than 2 nodes");
    GraphSummary s;
    s.n = n;
    for (const auto& e : adj.edges()) {
        ++s.edges;
        if (e.sign < 0) ++s.negative_edges;
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    s.edge_proportion = static_cast<double>(s.edges) / pairs;
    if (s.edges > 0) s.negative_fraction = static_cast<double>(s.negative_edges) / static_cast<double>(s.edges);
    return s;
}

namespace {

struct RawEdge {
    std::string u;
    std::string v;
    int sign;
    std::size_t line;
};

int parse_sign(const std::string& token, std::size_t line) {
    if (token == "+1" || token == "1") return 1;
    if (token == "-1") return -1;
    throw ParseError(line, "sign must be one of +1, -1, 1 (got '" + token + "')");
}

}  // namespace

SignedAdjacency parse_edge_list(std::istream& in, const ParseOptions& options) {
    std::vector<RawEdge> raw;
    std::vector<std::string> lone;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        const auto start = text.find_first_not_of(" \t");
        if (start == std::string::npos || text[start] == '#') continue;

        std::istringstream fields(text);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(std::move(tok));
        if (tokens.size() == 1) {
            lone.push_back(std::move(tokens[0]));
            continue;
        }
        if (tokens.size() != 3) throw ParseError(line_no, "expected 'u v sign', got " + std::to_string(tokens.size()) + " fields");
        if (tokens[0] == tokens[1]) throw ParseError(line_no, "self-loop on node '" + tokens[0] + "'");
        raw.push_back({tokens[0], tokens[1], parse_sign(tokens[2], line_no), line_no});
    }

    std::vector<std::string> labels = lone;
    for (const auto& e : raw) {
        labels.push_back(e.u);
        labels.push_back(e.v);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    auto index_of = [&](const std::string& label) {
        return static_cast<NodeId>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
    };

    // Pair-level checks here so errors can name the offending line.
    std::map<std::pair<NodeId, NodeId>, std::pair<int, std::size_t>> seen;
    std::vector<SignedEdge> edges;
    edges.reserve(raw.size());
    for (const auto& e : raw) {
        NodeId a = index_of(e.u);
        NodeId b = index_of(e.v);
        if (a > b) std::swap(a, b);
        const auto [it, inserted] = seen.try_emplace({a, b}, e.sign, e.line);
        if (!inserted) {
            if (it->second.first != e.sign)
                throw ParseError(e.line, "conflicting sign for pair (" + e.u + ", " + e.v + "), first given on line " +
                                             std::to_string(it->second.second));
            if (options.duplicates == DuplicatePolicy::reject)
                throw ParseError(e.line, "duplicate pair (" + e.u + ", " + e.v + ")");
            continue;
        }
        edges.push_back({a, b, e.sign});
    }
    const std::size_t n = labels.size();
    return SignedAdjacency::from_edges(n, edges, std::move(labels));
}

SignedAdjacency parse_edge_list(std::string_view text, const ParseOptions& options) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const SignedAdjacency& adj) {
    const auto& labels = adj.labels();
    for (NodeId i = 0; i < adj.n(); ++i)
        if (adj.degree(i) == 0) out << labels[i] << '\n';
    // Index order equals label order, so (u, v) order is (label_u, label_v) order.
    for (const auto& e : adj.edges())
        out << labels[e.u] << ' ' << labels[e.v] << ' ' << (e.sign > 0 ? "+1" : "-1") << '\n';
}

std::string to_edge_list(const SignedAdjacency& adj) {
    std::ostringstream out;
    write_edge_list(out, adj);
    return out.str();
}

SignedAdjacency permute(const SignedAdjacency& adj, std::span<const NodeId> perm) {
    if (perm.size() != adj.n()) throw InvalidArgument("permutation size does not match node count");
    std::vector<bool> hit(adj.n(), false);
    for (const NodeId p : perm) {
        if (p >= adj.n() || hit[p]) throw InvalidArgument("not a permutation");
        hit[p] = true;
    }
    auto edges = adj.edges();
    for (auto& e : edges) {
        e.u = perm[e.u];
        e.v = perm[e.v];
    }
    return SignedAdjacency::from_edges(adj.n(), edges);
}

SignedAdjacency negate(const SignedAdjacency& adj) {
    auto edges = adj.edges();
    for (auto& e : edges) e.sign = -e.sign;
    return SignedAdjacency::from_edges(adj.n(), edges, adj.labels());
}

}  // namespace signbal
