#pragma once

// Sparse signed graphon model: an edge between i and j appears with
// probability rho * F(X_i, X_j) and, given an edge, is negative with
// probability s * G(X_i, X_j), where X_i are i.i.d. U[0,1] latent positions.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "signbal/signed_graph.hpp"

namespace signbal {

using Kernel = std::function<double(double, double)>;
using ParamMap = std::map<std::string, double>;

struct GraphonSpec {
    std::string name;
    ParamMap params;
    Kernel edge;  ///< F
    Kernel sign;  ///< G
    double rho = 1.0;
    double s = 1.0;

    double edge_probability(double x, double y) const { return rho * edge(x, y); }
    double sign_probability(double x, double y) const { return s * sign(x, y); }
};

/// Checks rho, s in (0,1], and symmetry and [0,1] range of rho*F and s*G on a
/// 33x33 grid plus 256 pseudo-random probes; throws InvalidArgument.
void validate(const GraphonSpec& spec);

/// Validated spec from explicit kernels.
GraphonSpec make_graphon(std::string name, Kernel edge, Kernel sign, double rho, double s, ParamMap params = {});

/// Built-in graphons:
///   const-cos         rho*F = 0.8, s*G = 2cos(x^2+y^2)/3 + 0.3
///   logistic-balance  rho*F = edge (default 0.8), s*G = 1/(1+exp(alpha(x-0.4)(y-0.4))); needs alpha
///   sparse-const      F = 1, rho = n^(-1/k), sign part of const-cos; needs n, k
GraphonSpec builtin_spec(std::string_view name, const ParamMap& params = {});
std::vector<std::string> builtin_names();

struct SampledNetwork {
    SignedAdjacency adjacency;
    std::vector<double> latent;  ///< X_i; for tests and debugging only
};

/// Draws A ~ G(n, F, G, rho, s) from the stream keyed by `seed`. Draw order:
/// X_0..X_{n-1}, then pairs i<j row by row, one uniform for presence and,
/// for present edges, one for the sign.
SignedAdjacency sample_network(const GraphonSpec& spec, std::size_t n, std::uint64_t seed);
SampledNetwork sample_network_with_latent(const GraphonSpec& spec, std::size_t n, std::uint64_t seed);

/// Conditional law of a triangle's signs given the three pair-wise negative
/// probabilities; types are indexed by number of negative edges (0..3).
struct TriangleSignLaw {
    double balanced;
    std::array<double, 4> type;
};
TriangleSignLaw triangle_sign_law(double s1, double s2, double s3) noexcept;

struct PopulationMoments {
    double u = 0.0;  ///< P(balanced triangle on a triple)
    double v = 0.0;  ///< P(triangle on a triple)
    double w = 0.0;  ///< u / v
    std::array<double, 4> u_t{};
    std::array<double, 4> w_t{};
    double mc_se_u = 0.0;
    double mc_se_v = 0.0;
    double mc_se_w = 0.0;
    std::array<double, 4> mc_se_w_t{};
    std::uint64_t budget = 0;
};

/// Monte Carlo over latent triples with the exact conditional sign law.
/// Deterministic for a given (spec, budget, seed) regardless of `threads`.
PopulationMoments population_moments(const GraphonSpec& spec, std::uint64_t budget, std::uint64_t seed,
                                     unsigned threads = 0);

}  // namespace signbal
