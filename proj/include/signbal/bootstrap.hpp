#pragma once

// Node-resampling bootstrap of the studentized ratio. A resample draws node
// indices i_1..i_n uniformly with replacement and sets A*_ab = A_{i_a i_b};
// pairs that hit the same original node (i_a == i_b) carry no edge.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "signbal/inference.hpp"
#include "signbal/signed_graph.hpp"

namespace signbal {

std::vector<NodeId> resample_indices(std::size_t n, std::uint64_t seed);
SignedAdjacency resample_network(const SignedAdjacency& adj, std::span<const NodeId> indices);
SignedAdjacency resample_network(const SignedAdjacency& adj, std::uint64_t seed);

struct BootstrapDistribution {
    Target target = Target::balanced;
    std::vector<double> draws;  ///< T* = (estimate* - estimate) / S*, in replicate order
    std::size_t B = 0;
    std::size_t degenerate = 0;  ///< replicates without triangles or with zero variance
    std::uint64_t seed = 0;
};

struct BootstrapOptions {
    std::size_t replicates = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    CensusOptions census;
};

/// Replicate r uses the stream stream_key(seed, r). Throws InvalidArgument for
/// B < 100 and DegenerateError when more than half the replicates are degenerate.
BootstrapDistribution bootstrap_distribution(const SignedAdjacency& adj, const Studentized& observed,
                                             const BootstrapOptions& options);
BootstrapDistribution bootstrap_distribution(const SignedAdjacency& adj, Target target,
                                             const BootstrapOptions& options);

/// Linear-interpolation quantile (order statistics at positions p (m - 1)) of sorted draws.
double empirical_quantile(std::span<const double> sorted, double p);
/// Fraction of sorted draws <= x.
double empirical_cdf(std::span<const double> sorted, double x);

/// (estimate - t*_{1-a/2} S, estimate - t*_{a/2} S).
Interval bootstrap_interval(const Studentized& observed, const BootstrapDistribution& dist, double level);

/// p-value from the bootstrap law of T: greater = #{T* >= T}/m, less = #{T* <= T}/m.
double bootstrap_p_value(const Studentized& observed, const BootstrapDistribution& dist, double null_value,
                         Alternative alt);

InferenceReport bootstrap_ci(const SignedAdjacency& adj, const InferenceOptions& options,
                             BootstrapDistribution* distribution = nullptr);

/// Single-column CSV with header `t_star`.
void write_draws_csv(std::ostream& out, const BootstrapDistribution& dist);

}  // namespace signbal
