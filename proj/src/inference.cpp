#include "signbal/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "signbal/bootstrap.hpp"
#include "signbal/error.hpp"
#include "signbal/normal.hpp"
#include "signbal/rng.hpp"

namespace signbal {

std::string_view to_string(Target t) noexcept {
    switch (t) {
        case Target::balanced: return "balanced";
        case Target::type1: return "type1";
        case Target::type2: return "type2";
        case Target::type3: return "type3";
        case Target::type4: return "type4";
    }
    return "balanced";
}

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::edgeworth: return "edgeworth";
        case Method::normal: return "normal";
        case Method::bootstrap: return "bootstrap";
    }
    return "edgeworth";
}

std::string_view to_string(Alternative a) noexcept {
    switch (a) {
        case Alternative::greater: return "greater";
        case Alternative::less: return "less";
        case Alternative::two_sided: return "two-sided";
    }
    return "greater";
}

Target parse_target(std::string_view s) {
    if (s == "balanced") return Target::balanced;
    if (s == "type1" || s == "type-1") return Target::type1;
    if (s == "type2" || s == "type-2") return Target::type2;
    if (s == "type3" || s == "type-3") return Target::type3;
    if (s == "type4" || s == "type-4") return Target::type4;
    throw InvalidArgument("unknown target '" + std::string(s) + "'");
}

Method parse_method(std::string_view s) {
    if (s == "edgeworth") return Method::edgeworth;
    if (s == "normal") return Method::normal;
    if (s == "bootstrap") return Method::bootstrap;
    throw InvalidArgument("unknown method '" + std::string(s) + "'");
}

Alternative parse_alternative(std::string_view s) {
    if (s == "greater") return Alternative::greater;
    if (s == "less") return Alternative::less;
    if (s == "two-sided" || s == "two_sided") return Alternative::two_sided;
    throw InvalidArgument("unknown alternative '" + std::string(s) + "'");
}

namespace {

std::size_t type_index(Target t) noexcept { return static_cast<std::size_t>(t) - 1; }

double choose3(std::size_t n) {
    const double m = static_cast<double>(n);
    return m * (m - 1.0) * (m - 2.0) / 6.0;
}

double choose2(std::size_t n) {
    const double m = static_cast<double>(n);
    return m * (m - 1.0) / 2.0;
}

}  // namespace

std::uint64_t target_count(const TriangleCensus& c, Target t) noexcept {
    return t == Target::balanced ? c.balanced() : c.by_type[type_index(t)];
}

const std::vector<std::uint64_t>& target_counts(const NodeProjection& p, Target t) noexcept {
    return t == Target::balanced ? p.balanced : p.by_type[type_index(t)];
}

std::uint32_t target_count(const PairCounts& p, Target t) noexcept {
    return t == Target::balanced ? p.balanced : p.by_type[type_index(t)];
}

double Moments::numerator(Target t) const noexcept { return t == Target::balanced ? U_hat : U_hat_t[type_index(t)]; }

double Moments::estimate(Target t) const noexcept { return t == Target::balanced ? ratio : ratio_t[type_index(t)]; }

Moments sample_moments(const TriangleCensus& census) {
    if (census.n < 3) throw InvalidArgument("network moments need n >= 3");
    if (census.total == 0) throw DegenerateError(DegeneracyKind::no_triangles, "the network has no triangles");
    const double triples = choose3(census.n);
    const auto total = static_cast<double>(census.total);
    Moments m;
    m.n = census.n;
    m.U_hat = static_cast<double>(census.balanced()) / triples;
    m.V_hat = total / triples;
    m.ratio = static_cast<double>(census.balanced()) / total;
    for (std::size_t t = 0; t < kTriangleTypes; ++t) {
        m.U_hat_t[t] = static_cast<double>(census.by_type[t]) / triples;
        m.ratio_t[t] = static_cast<double>(census.by_type[t]) / total;
    }
    return m;
}

Projections projections(const FullCensus& full, Target target) {
    const Moments m = sample_moments(full.census);
    const std::size_t n = m.n;
    const double per_node = choose2(n - 1);
    const auto& h = target_counts(full.nodes, target);
    const auto& t = full.nodes.triangles;

    Projections p;
    p.target = target;
    p.n = n;
    p.U = m.numerator(target);
    p.V = m.V_hat;
    p.estimate = m.estimate(target);
    p.pairs_ = &full.pairs;
    p.g1.resize(n);
    p.f1.resize(n);
    p.q1.resize(n);
    p.p1.resize(n);
    const double scale = per_node * p.V;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto hi = static_cast<double>(h[i]);
        const auto ti = static_cast<double>(t[i]);
        p.g1[i] = hi / per_node - p.U;
        p.f1[i] = ti / per_node - p.V;
        // g1/V - U f1/V^2 with the constant terms cancelled exactly.
        p.q1[i] = (hi - p.estimate * ti) / scale;
        p.p1[i] = p.f1[i] / p.V;
        sum_sq += p.q1[i] * p.q1[i];
    }
    p.xi1_sq = sum_sq / static_cast<double>(n);

    const double pair_scale = static_cast<double>(n - 2) * p.V;
    p.edge_q2.resize(full.pairs.entries.size());
    for (std::size_t e = 0; e < full.pairs.entries.size(); ++e) {
        const auto& pc = full.pairs.entries[e];
        p.edge_q2[e] = (static_cast<double>(target_count(pc, target)) - p.estimate * pc.triangles) / pair_scale;
    }
    return p;
}

double Projections::q2(NodeId i, NodeId j) const {
    if (!pairs_) throw InvalidArgument("projections carry no pair counts");
    const PairCounts pc = pairs_->at(i, j);
    const double nm2 = static_cast<double>(n - 2);
    const double g2 = static_cast<double>(target_count(pc, target)) / nm2 - U - g1[i] - g1[j];
    const double f2 = static_cast<double>(pc.triangles) / nm2 - V - f1[i] - f1[j];
    return g2 / V - U * f2 / (V * V);
}

const PairProjection& Projections::pair_counts() const {
    if (!pairs_) throw InvalidArgument("projections carry no pair counts");
    return *pairs_;
}

double variance_estimate(const Projections& proj) {
    const double xi = std::sqrt(proj.xi1_sq);
    if (!(xi > kDegenerateXi))
        throw DegenerateError(DegeneracyKind::zero_variance, "the per-node projections of the ratio are all zero");
    return std::sqrt(9.0 * proj.xi1_sq / static_cast<double>(proj.n));
}

double variance_bracket_form(const TriangleCensus& census, const NodeProjection& nodes, Target target) {
    const Moments m = sample_moments(census);
    const std::size_t n = m.n;
    const double c = choose2(n - 1);
    const double U = m.numerator(target);
    const double V = m.V_hat;
    const auto& h = target_counts(nodes, target);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double inner = static_cast<double>(h[i]) / V - U * static_cast<double>(nodes.triangles[i]) / (V * V);
        const double term = inner / c;
        acc += term * term;
    }
    return 9.0 / static_cast<double>(n) * acc;
}

EdgeworthCoefficients edgeworth_coefficients(const Projections& proj, double c_delta) {
    const double xi = std::sqrt(proj.xi1_sq);
    if (!(xi > kDegenerateXi))
        throw DegenerateError(DegeneracyKind::zero_variance, "the per-node projections of the ratio are all zero");
    const std::size_t n = proj.n;
    const double nd = static_cast<double>(n);

    double s1 = 0.0, s2 = 0.0, s3 = 0.0, qp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = proj.q1[i];
        s1 += q;
        s2 += q * q;
        s3 += q * q * q;
        qp += q * proj.p1[i];
    }

    // sum_{i<j} q1(i) q1(j) q2(i,j) with q2 = edge part - q1(i) - q1(j):
    // the edge part lives on edges only and the rest is
    // sum_{i != j} q1(i)^2 q1(j) = s2 s1 - s3.
    const auto& entries = proj.pair_counts().entries;
    double edge_sum = 0.0;
    for (std::size_t e = 0; e < entries.size(); ++e)
        edge_sum += proj.q1[entries[e].i] * proj.q1[entries[e].j] * proj.edge_q2[e];
    const double pair_sum = edge_sum - (s2 * s1 - s3);

    const double xi3 = xi * xi * xi;
    EdgeworthCoefficients k;
    k.n = n;
    k.a = s3 / nd / xi3;
    k.b = 2.0 / (nd * (nd - 1.0)) * pair_sum / xi3;
    k.c = qp / nd / xi;
    k.c_delta = c_delta;
    k.delta_var = c_delta * std::log(nd) / nd;
    return k;
}

double edgeworth_polynomial(double x, const EdgeworthCoefficients& k) noexcept {
    const double x2 = x * x;
    return k.a * (x2 / 3.0 + 1.0 / 6.0) + k.b * (x2 + 1.0) - 3.0 * k.c * x2;
}

double edgeworth_cdf(double x, const EdgeworthCoefficients& k) noexcept {
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    const double g = normal_cdf(x) + normal_pdf(x) * edgeworth_polynomial(x, k) / std::sqrt(static_cast<double>(k.n));
    return std::clamp(g, 0.0, 1.0);
}

double cornish_fisher_quantile(double alpha, const EdgeworthCoefficients& k, double delta_draw) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("quantile level must lie in (0,1)");
    const double z = normal_quantile(alpha);
    return z - edgeworth_polynomial(z, k) / std::sqrt(static_cast<double>(k.n)) - delta_draw;
}

Studentized studentize(const FullCensus& full, Target target, double c_delta, bool with_coefficients) {
    const Projections proj = projections(full, target);
    Studentized st;
    st.target = target;
    st.n = proj.n;
    st.U_hat = proj.U;
    st.V_hat = proj.V;
    st.estimate = proj.estimate;
    st.S_hat = variance_estimate(proj);
    if (with_coefficients) {
        st.coefficients = edgeworth_coefficients(proj, c_delta);
    } else {
        st.coefficients = EdgeworthCoefficients::zero(proj.n);
        st.coefficients.c_delta = c_delta;
        st.coefficients.delta_var = c_delta * std::log(double(proj.n)) / double(proj.n);
    }
    return st;
}

namespace {

EdgeworthCoefficients method_coefficients(const Studentized& st, Method method) {
    if (method == Method::edgeworth) return st.coefficients;
    if (method == Method::normal) return EdgeworthCoefficients::zero(st.n);
    throw InvalidArgument("analytic formulas cover the edgeworth and normal methods only");
}

void check_level(double level) {
    if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("confidence level must lie in (0,1)");
}

}  // namespace

Interval analytic_interval(const Studentized& st, double level, Method method, double delta_draw) {
    check_level(level);
    const auto k = method_coefficients(st, method);
    const double alpha = 1.0 - level;
    const double q_hi = cornish_fisher_quantile(1.0 - alpha / 2.0, k, delta_draw);
    const double q_lo = cornish_fisher_quantile(alpha / 2.0, k, delta_draw);
    return {st.estimate - q_hi * st.S_hat, st.estimate - q_lo * st.S_hat};
}

double analytic_p_value(const Studentized& st, double null_value, Alternative alt, Method method,
                        double delta_draw) {
    const auto k = method_coefficients(st, method);
    const double T = (st.estimate - null_value) / st.S_hat + delta_draw;
    const double lower = edgeworth_cdf(T, k);
    const double upper = 1.0 - lower;
    switch (alt) {
        case Alternative::greater: return upper;
        case Alternative::less: return lower;
        case Alternative::two_sided: return std::clamp(2.0 * std::min(lower, upper), 0.0, 1.0);
    }
    return upper;
}

double draw_delta(double c_delta, std::size_t n, std::uint64_t seed) {
    if (c_delta < 0.0) throw InvalidArgument("c_delta must be nonnegative");
    if (c_delta == 0.0) return 0.0;
    constexpr std::uint64_t kDeltaStream = 0xDE17A;
    CounterRng rng(stream_key(seed, kDeltaStream));
    const double nd = static_cast<double>(n);
    return std::sqrt(c_delta * std::log(nd) / nd) * rng.normal();
}

std::map<std::string, double> baselines(double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("negative fraction must lie in [0,1]");
    const double p = 1.0 - s;
    return {
        {"baseline50", 0.5},
        {"baseline25", 0.25},
        {"adjusted_balanced", p * p * p + 3.0 * s * s * p},
        {"adjusted_type1", p * p * p},
        {"adjusted_type2", 3.0 * s * p * p},
        {"adjusted_type3", 3.0 * s * s * p},
        {"adjusted_type4", s * s * s},
    };
}

std::string adjusted_baseline_key(Target t) { return "adjusted_" + std::string(to_string(t)); }

Alternative baseline_alternative(Target t) noexcept {
    return (t == Target::type2 || t == Target::type4) ? Alternative::less : Alternative::greater;
}

namespace {

double negative_fraction(const SignedAdjacency& adj) {
    const auto summary = summarize(adj);
    if (!summary.negative_fraction) throw DegenerateError(DegeneracyKind::no_triangles, "the network has no edges");
    return *summary.negative_fraction;
}

}  // namespace

std::vector<std::string> baseline_nulls(Target t) {
    switch (t) {
        case Target::balanced: return {"baseline50", "adjusted"};
        case Target::type2: return {"baseline25", "adjusted"};
        default: return {"adjusted"};
    }
}

InferenceReport confidence_interval(const SignedAdjacency& adj, const InferenceOptions& options) {
    check_level(options.level);
    if (options.method == Method::bootstrap) return bootstrap_ci(adj, options);

    const FullCensus full = full_census(adj, options.census);
    const Studentized st = studentize(full, options.target, options.c_delta);
    const double delta = draw_delta(options.c_delta, st.n, options.seed);
    const Interval ci = analytic_interval(st, options.level, options.method, delta);

    InferenceReport r;
    r.target = options.target;
    r.n = st.n;
    r.U_hat = st.U_hat;
    r.V_hat = st.V_hat;
    r.estimate = st.estimate;
    r.S_hat = st.S_hat;
    if (options.method == Method::edgeworth) {
        r.a_hat = st.coefficients.a;
        r.b_hat = st.coefficients.b;
        r.c_hat = st.coefficients.c;
    }
    r.c_delta = options.c_delta;
    r.delta_draw = delta;
    r.level = options.level;
    r.ci_lower = ci.lower;
    r.ci_upper = ci.upper;
    r.method = options.method;
    r.baselines = baselines(negative_fraction(adj));
    const Alternative alt = baseline_alternative(options.target);
    for (const auto& name : baseline_nulls(options.target)) {
        const double null_value = name == "adjusted" ? r.baselines.at(adjusted_baseline_key(options.target))
                                                     : r.baselines.at(name);
        r.p_values[name] = analytic_p_value(st, null_value, alt, options.method, delta);
    }
    return r;
}

double resolve_null(std::string_view spec, const SignedAdjacency& adj, Target target, std::string* name) {
    std::string label(spec);
    double value = 0.0;
    if (spec == "adjusted") {
        value = baselines(negative_fraction(adj)).at(adjusted_baseline_key(target));
    } else if (spec == "baseline50" || spec == "baseline25" || spec.starts_with("adjusted_")) {
        const auto table = baselines(negative_fraction(adj));
        const auto it = table.find(label);
        if (it == table.end()) throw InvalidArgument("unknown baseline '" + label + "'");
        value = it->second;
    } else {
        char* end = nullptr;
        value = std::strtod(label.c_str(), &end);
        if (label.empty() || end != label.c_str() + label.size() || !std::isfinite(value))
            throw InvalidArgument("null value must be a number, 'adjusted' or a baseline name (got '" + label + "')");
        label = "value";
    }
    if (name) *name = label;
    return value;
}

TestResult balance_test(const SignedAdjacency& adj, std::string_view null_spec, Alternative alt,
                        const InferenceOptions& options) {
    TestResult t;
    t.target = options.target;
    t.method = options.method;
    t.alternative = alt;
    t.null_value = resolve_null(null_spec, adj, options.target, &t.null_name);

    const FullCensus full = full_census(adj, options.census);
    const Studentized st = studentize(full, options.target, options.c_delta, options.method != Method::normal);
    t.n = st.n;
    t.estimate = st.estimate;
    t.S_hat = st.S_hat;
    t.c_delta = options.c_delta;
    t.delta_draw = draw_delta(options.c_delta, st.n, options.seed);
    t.statistic = (st.estimate - t.null_value) / st.S_hat + t.delta_draw;
    if (options.method == Method::bootstrap) {
        BootstrapOptions bo;
        bo.replicates = options.replicates;
        bo.seed = options.seed;
        bo.threads = options.threads;
        bo.census = options.census;
        const auto dist = bootstrap_distribution(adj, st, bo);
        t.p_value = bootstrap_p_value(st, dist, t.null_value, alt);
    } else {
        t.p_value = analytic_p_value(st, t.null_value, alt, options.method, t.delta_draw);
    }
    return t;
}

}  // namespace signbal
