#include "signbal/graphon.hpp"

#include <cmath>
#include <sstream>

#include "signbal/error.hpp"
#include "signbal/parallel.hpp"
#include "signbal/rng.hpp"

namespace signbal {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr std::uint64_t kProbeSeed = 0x5EEDF00DULL;

std::string probe_location(double x, double y) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << x << ", " << y << ")";
    return os.str();
}

void check_probe(const GraphonSpec& spec, double x, double y) {
    const double pe = spec.edge_probability(x, y);
    const double ps = spec.sign_probability(x, y);
    if (!(pe >= 0.0 && pe <= 1.0))
        throw InvalidArgument(spec.name + ": rho*F outside [0,1] at " + probe_location(x, y));
    if (!(ps >= 0.0 && ps <= 1.0))
        throw InvalidArgument(spec.name + ": s*G outside [0,1] at " + probe_location(x, y));
    if (std::abs(spec.edge(x, y) - spec.edge(y, x)) > kSymmetryTolerance)
        throw InvalidArgument(spec.name + ": F is not symmetric at " + probe_location(x, y));
    if (std::abs(spec.sign(x, y) - spec.sign(y, x)) > kSymmetryTolerance)
        throw InvalidArgument(spec.name + ": G is not symmetric at " + probe_location(x, y));
}

double require(const ParamMap& params, const std::string& key, std::string_view name) {
    const auto it = params.find(key);
    if (it == params.end()) throw InvalidArgument(std::string(name) + ": missing parameter '" + key + "'");
    return it->second;
}

double cos_sign(double x, double y) { return 2.0 * std::cos(x * x + y * y) / 3.0 + 0.3; }

}  // namespace

void validate(const GraphonSpec& spec) {
    if (!spec.edge || !spec.sign) throw InvalidArgument(spec.name + ": missing kernel");
    if (!(spec.rho > 0.0 && spec.rho <= 1.0)) throw InvalidArgument(spec.name + ": rho must lie in (0,1]");
    if (!(spec.s > 0.0 && spec.s <= 1.0)) throw InvalidArgument(spec.name + ": s must lie in (0,1]");
    constexpr int kGrid = 32;
    for (int a = 0; a <= kGrid; ++a)
        for (int b = 0; b <= kGrid; ++b) check_probe(spec, double(a) / kGrid, double(b) / kGrid);
    CounterRng rng(kProbeSeed);
    for (int k = 0; k < 256; ++k) {
        const double x = rng.uniform();
        const double y = rng.uniform();
        check_probe(spec, x, y);
    }
}

GraphonSpec make_graphon(std::string name, Kernel edge, Kernel sign, double rho, double s, ParamMap params) {
    GraphonSpec spec{std::move(name), std::move(params), std::move(edge), std::move(sign), rho, s};
    validate(spec);
    return spec;
}

std::vector<std::string> builtin_names() { return {"const-cos", "logistic-balance", "sparse-const"}; }

GraphonSpec builtin_spec(std::string_view name, const ParamMap& params) {
    const Kernel one = [](double, double) { return 1.0; };
    if (name == "const-cos") {
        return make_graphon(std::string(name), one, cos_sign, 0.8, 1.0, params);
    }
    if (name == "logistic-balance") {
        const double alpha = require(params, "alpha", name);
        const auto edge_it = params.find("edge");
        const double edge = edge_it == params.end() ? 0.8 : edge_it->second;
        Kernel sign = [alpha](double x, double y) { return 1.0 / (1.0 + std::exp(alpha * ((x - 0.4) * (y - 0.4)))); };
        return make_graphon(std::string(name), one, std::move(sign), edge, 1.0, params);
    }
    if (name == "sparse-const") {
        const double n = require(params, "n", name);
        const double k = require(params, "k", name);
        if (!(n >= 1.0) || !(k > 0.0)) throw InvalidArgument("sparse-const: need n >= 1 and k > 0");
        return make_graphon(std::string(name), one, cos_sign, std::pow(n, -1.0 / k), 1.0, params);
    }
    throw InvalidArgument("unknown graphon '" + std::string(name) + "'");
}

SampledNetwork sample_network_with_latent(const GraphonSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("sample_network needs n >= 1");
    CounterRng rng(seed);
    std::vector<double> x(n);
    for (auto& xi : x) xi = rng.uniform();

    std::vector<SignedEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double pe = spec.edge_probability(x[i], x[j]);
            if (!(pe >= 0.0 && pe <= 1.0))
                throw InvalidArgument(spec.name + ": edge probability outside [0,1] at " + probe_location(x[i], x[j]));
            if (!(rng.uniform() < pe)) continue;
            const double ps = spec.sign_probability(x[i], x[j]);
            if (!(ps >= 0.0 && ps <= 1.0))
                throw InvalidArgument(spec.name + ": sign probability outside [0,1] at " + probe_location(x[i], x[j]));
            const int sign = rng.uniform() < ps ? -1 : 1;
            edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), sign});
        }
    }
    return {SignedAdjacency::from_edges(n, edges), std::move(x)};
}

SignedAdjacency sample_network(const GraphonSpec& spec, std::size_t n, std::uint64_t seed) {
    return sample_network_with_latent(spec, n, seed).adjacency;
}

TriangleSignLaw triangle_sign_law(double s1, double s2, double s3) noexcept {
    const double p1 = 1.0 - s1, p2 = 1.0 - s2, p3 = 1.0 - s3;
    TriangleSignLaw law;
    law.type[0] = p1 * p2 * p3;
    law.type[1] = s1 * p2 * p3 + p1 * s2 * p3 + p1 * p2 * s3;
    law.type[2] = p1 * s2 * s3 + s1 * p2 * s3 + s1 * s2 * p3;
    law.type[3] = s1 * s2 * s3;
    law.balanced = (1.0 + (1.0 - 2.0 * s1) * (1.0 - 2.0 * s2) * (1.0 - 2.0 * s3)) / 2.0;
    return law;
}

namespace {

// Sums over one chunk of latent triples. Slot 0 of the numerators is the
// balanced indicator, slots 1..4 the four types.
struct MomentSums {
    double x = 0.0, xx = 0.0;
    std::array<double, 5> y{}, yy{}, xy{};

    void add(const MomentSums& o) {
        x += o.x;
        xx += o.xx;
        for (int k = 0; k < 5; ++k) {
            y[k] += o.y[k];
            yy[k] += o.yy[k];
            xy[k] += o.xy[k];
        }
    }
};

constexpr std::uint64_t kTriplesPerChunk = 1u << 16;

}  // namespace

PopulationMoments population_moments(const GraphonSpec& spec, std::uint64_t budget, std::uint64_t seed,
                                     unsigned threads) {
    if (budget < 1000) throw InvalidArgument("population_moments needs a budget of at least 1000 triples");
    const std::uint64_t chunks = (budget + kTriplesPerChunk - 1) / kTriplesPerChunk;
    std::vector<MomentSums> partial(chunks);

    parallel_for(chunks, threads, [&](std::size_t c) {
        CounterRng rng(stream_key(seed, c));
        const std::uint64_t begin = c * kTriplesPerChunk;
        const std::uint64_t end = std::min(budget, begin + kTriplesPerChunk);
        MomentSums acc;
        for (std::uint64_t t = begin; t < end; ++t) {
            const double x1 = rng.uniform(), x2 = rng.uniform(), x3 = rng.uniform();
            const double pe = spec.edge_probability(x1, x2) * spec.edge_probability(x1, x3) *
                              spec.edge_probability(x2, x3);
            const auto law = triangle_sign_law(spec.sign_probability(x1, x2), spec.sign_probability(x1, x3),
                                               spec.sign_probability(x2, x3));
            const std::array<double, 5> cond{law.balanced, law.type[0], law.type[1], law.type[2], law.type[3]};
            acc.x += pe;
            acc.xx += pe * pe;
            for (int k = 0; k < 5; ++k) {
                const double yk = pe * cond[k];
                acc.y[k] += yk;
                acc.yy[k] += yk * yk;
                acc.xy[k] += pe * yk;
            }
        }
        partial[c] = acc;
    });

    MomentSums total;
    for (const auto& p : partial) total.add(p);

    const double b = static_cast<double>(budget);
    PopulationMoments m;
    m.budget = budget;
    m.v = total.x / b;
    if (!(m.v > 0.0)) throw DegenerateError(DegeneracyKind::no_triangles, "population triangle probability is zero");
    m.mc_se_v = std::sqrt(std::max(0.0, total.xx / b - m.v * m.v) / b);

    // Delta-method standard error of a ratio of means: var(Y - wX) / (B v^2).
    auto ratio_se = [&](int k, double w) {
        const double resid = total.yy[k] - 2.0 * w * total.xy[k] + w * w * total.xx;
        return std::sqrt(std::max(0.0, resid / b) / b) / m.v;
    };
    m.u = total.y[0] / b;
    m.mc_se_u = std::sqrt(std::max(0.0, total.yy[0] / b - m.u * m.u) / b);
    m.w = total.y[0] / total.x;
    m.mc_se_w = ratio_se(0, m.w);
    for (int t = 0; t < 4; ++t) {
        m.u_t[t] = total.y[t + 1] / b;
        m.w_t[t] = total.y[t + 1] / total.x;
        m.mc_se_w_t[t] = ratio_se(t + 1, m.w_t[t]);
    }
    return m;
}

}  // namespace signbal
