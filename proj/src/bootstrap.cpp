#include "signbal/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>

#include "signbal/error.hpp"
#include "signbal/parallel.hpp"
#include "signbal/rng.hpp"

namespace signbal {

std::vector<NodeId> resample_indices(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<NodeId> idx(n);
    for (auto& v : idx) v = static_cast<NodeId>(rng.below(n));
    return idx;
}

SignedAdjacency resample_network(const SignedAdjacency& adj, std::span<const NodeId> indices) {
    const std::size_t n = indices.size();
    // copies[v] = new positions drawn from original node v
    std::vector<std::vector<NodeId>> copies(adj.n());
    for (NodeId a = 0; a < n; ++a) {
        if (indices[a] >= adj.n()) throw InvalidArgument("resample index out of range");
        copies[indices[a]].push_back(a);
    }
    std::vector<SignedEdge> edges;
    for (NodeId a = 0; a < n; ++a)
        for (const auto& nb : adj.neighbors(indices[a]))
            for (const NodeId b : copies[nb.node])
                if (b > a) edges.push_back({a, b, nb.sign});
    return SignedAdjacency::from_edges(n, edges);
}

SignedAdjacency resample_network(const SignedAdjacency& adj, std::uint64_t seed) {
    return resample_network(adj, resample_indices(adj.n(), seed));
}

BootstrapDistribution bootstrap_distribution(const SignedAdjacency& adj, const Studentized& observed,
                                             const BootstrapOptions& options) {
    if (options.replicates < 100) throw InvalidArgument("bootstrap needs at least 100 replicates");
    if (adj.n() < 3) throw InvalidArgument("bootstrap needs n >= 3");

    const std::size_t B = options.replicates;
    std::vector<std::optional<double>> slots(B);
    CensusOptions census = options.census;
    census.threads = 1;
    parallel_for(B, options.threads, [&](std::size_t r) {
        const auto resampled = resample_network(adj, stream_key(options.seed, r));
        try {
            const auto full = full_census(resampled, census);
            const auto st = studentize(full, observed.target, 0.0, false);
            slots[r] = (st.estimate - observed.estimate) / st.S_hat;
        } catch (const DegenerateError&) {
        }
    });

    BootstrapDistribution dist;
    dist.target = observed.target;
    dist.B = B;
    dist.seed = options.seed;
    dist.draws.reserve(B);
    for (const auto& s : slots) {
        if (s)
            dist.draws.push_back(*s);
        else
            ++dist.degenerate;
    }
    if (2 * dist.degenerate > B)
        throw DegenerateError(DegeneracyKind::all_replicates, std::to_string(dist.degenerate) + " of " +
                                                                  std::to_string(B) + " bootstrap replicates are degenerate");
    return dist;
}

BootstrapDistribution bootstrap_distribution(const SignedAdjacency& adj, Target target,
                                             const BootstrapOptions& options) {
    const auto full = full_census(adj, options.census);
    return bootstrap_distribution(adj, studentize(full, target, 0.0, false), options);
}

double empirical_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw InvalidArgument("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("quantile level must lie in [0,1]");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double empirical_cdf(std::span<const double> sorted, double x) {
    if (sorted.empty()) throw InvalidArgument("CDF of an empty sample");
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    return static_cast<double>(count) / static_cast<double>(sorted.size());
}

Interval bootstrap_interval(const Studentized& observed, const BootstrapDistribution& dist, double level) {
    if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("confidence level must lie in (0,1)");
    std::vector<double> sorted = dist.draws;
    std::sort(sorted.begin(), sorted.end());
    const double alpha = 1.0 - level;
    const double t_hi = empirical_quantile(sorted, 1.0 - alpha / 2.0);
    const double t_lo = empirical_quantile(sorted, alpha / 2.0);
    return {observed.estimate - t_hi * observed.S_hat, observed.estimate - t_lo * observed.S_hat};
}

double bootstrap_p_value(const Studentized& observed, const BootstrapDistribution& dist, double null_value,
                         Alternative alt) {
    if (dist.draws.empty()) throw InvalidArgument("empty bootstrap distribution");
    const double T = (observed.estimate - null_value) / observed.S_hat;
    const auto m = static_cast<double>(dist.draws.size());
    const double ge = static_cast<double>(std::count_if(dist.draws.begin(), dist.draws.end(), [T](double d) { return d >= T; })) / m;
    const double le = static_cast<double>(std::count_if(dist.draws.begin(), dist.draws.end(), [T](double d) { return d <= T; })) / m;
    switch (alt) {
        case Alternative::greater: return ge;
        case Alternative::less: return le;
        case Alternative::two_sided: return std::min(1.0, 2.0 * std::min(ge, le));
    }
    return ge;
}

InferenceReport bootstrap_ci(const SignedAdjacency& adj, const InferenceOptions& options,
                             BootstrapDistribution* distribution) {
    const auto full = full_census(adj, options.census);
    const Studentized st = studentize(full, options.target, 0.0, true);

    BootstrapOptions bo;
    bo.replicates = options.replicates;
    bo.seed = options.seed;
    bo.threads = options.threads;
    bo.census = options.census;
    BootstrapDistribution dist = bootstrap_distribution(adj, st, bo);
    const Interval ci = bootstrap_interval(st, dist, options.level);

    InferenceReport r;
    r.target = options.target;
    r.n = st.n;
    r.U_hat = st.U_hat;
    r.V_hat = st.V_hat;
    r.estimate = st.estimate;
    r.S_hat = st.S_hat;
    r.a_hat = st.coefficients.a;
    r.b_hat = st.coefficients.b;
    r.c_hat = st.coefficients.c;
    r.level = options.level;
    r.ci_lower = ci.lower;
    r.ci_upper = ci.upper;
    r.method = Method::bootstrap;
    const auto summary = summarize(adj);
    r.baselines = baselines(summary.negative_fraction.value_or(0.0));
    const Alternative alt = baseline_alternative(options.target);
    for (const auto& name : baseline_nulls(options.target)) {
        const double null_value =
            name == "adjusted" ? r.baselines.at(adjusted_baseline_key(options.target)) : r.baselines.at(name);
        r.p_values[name] = bootstrap_p_value(st, dist, null_value, alt);
    }
    if (distribution) *distribution = std::move(dist);
    return r;
}

void write_draws_csv(std::ostream& out, const BootstrapDistribution& dist) {
    out << "t_star\n";
    const auto old = out.precision(17);
    for (const double d : dist.draws) out << d << '\n';
    out.precision(old);
}

}  // namespace signbal
