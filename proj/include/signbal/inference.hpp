#pragma once

// Studentized inference for the proportion of balanced (or type-t) triangles.
//
// For a target numerator h (balanced indicator or a type indicator) and the
// triangle indicator, with C = C(n-1, 2):
//   U = #h / C(n,3),  V = #triangles / C(n,3),  estimate = U / V
//   g1(i) = b_i / C - U,           f1(i) = t_i / C - V
//   q1(i) = g1(i)/V - U f1(i)/V^2, p1(i) = f1(i)/V
//   g2(i,j) = h_ij/(n-2) - U - g1(i) - g1(j), f2 likewise with triangle counts
//   q2(i,j) = g2(i,j)/V - U f2(i,j)/V^2
//   xi^2 = mean q1^2,  S^2 = 9 xi^2 / n
// and the empirical Edgeworth expansion of the studentized ratio
//   G(x) = Phi(x) + phi(x) { a (x^2/3 + 1/6) + b (x^2 + 1) - 3 c x^2 } / sqrt(n).

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "signbal/census.hpp"
#include "signbal/signed_graph.hpp"

namespace signbal {

enum class Target { balanced, type1, type2, type3, type4 };
enum class Method { edgeworth, normal, bootstrap };
enum class Alternative { greater, less, two_sided };

std::string_view to_string(Target t) noexcept;
std::string_view to_string(Method m) noexcept;
std::string_view to_string(Alternative a) noexcept;
/// Accepts balanced, type1..type4 and type-1..type-4.
Target parse_target(std::string_view s);
Method parse_method(std::string_view s);
Alternative parse_alternative(std::string_view s);
inline constexpr std::array<Target, 5> kAllTargets{Target::balanced, Target::type1, Target::type2, Target::type3,
                                                   Target::type4};

/// Per-target triangle counts selected from a census.
std::uint64_t target_count(const TriangleCensus& c, Target t) noexcept;
const std::vector<std::uint64_t>& target_counts(const NodeProjection& p, Target t) noexcept;
std::uint32_t target_count(const PairCounts& p, Target t) noexcept;

struct Moments {
    std::size_t n = 0;
    double U_hat = 0.0;  ///< balanced-triangle frequency
    double V_hat = 0.0;  ///< triangle frequency
    std::array<double, kTriangleTypes> U_hat_t{};
    double ratio = 0.0;
    std::array<double, kTriangleTypes> ratio_t{};

    double numerator(Target t) const noexcept;
    double estimate(Target t) const noexcept;
};

/// Throws InvalidArgument for n < 3 and DegenerateError when there are no triangles.
Moments sample_moments(const TriangleCensus& census);

struct Projections {
    Target target = Target::balanced;
    std::size_t n = 0;
    double U = 0.0;  ///< target numerator moment
    double V = 0.0;
    double estimate = 0.0;
    std::vector<double> g1, f1, q1, p1;
    /// Edge part of q2: q2(i,j) = edge_q2(i,j) - q1(i) - q1(j) up to rounding,
    /// where edge_q2 = (h_ij - estimate * t_ij) / ((n-2) V), aligned with pairs.entries.
    std::vector<double> edge_q2;
    double xi1_sq = 0.0;

    /// q2 for any pair straight from its definition; O(log E).
    double q2(NodeId i, NodeId j) const;
    const PairProjection& pair_counts() const;

private:
    friend Projections projections(const FullCensus&, Target);
    const PairProjection* pairs_ = nullptr;
};

/// Requires the FullCensus to outlive the result (q2 reads its pair counts).
Projections projections(const FullCensus& full, Target target);

inline constexpr double kDegenerateXi = 1e-10;

/// sqrt(9 xi^2 / n); DegenerateError when xi <= kDegenerateXi.
double variance_estimate(const Projections& proj);

/// n S^2 evaluated literally as (9/n) sum_i [ b_i/(C V) - U t_i/(C V^2) ]^2.
double variance_bracket_form(const TriangleCensus& census, const NodeProjection& nodes, Target target);

struct EdgeworthCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    std::size_t n = 0;
    double c_delta = 0.0;
    double delta_var = 0.0;  ///< c_delta * log(n) / n

    static EdgeworthCoefficients zero(std::size_t n) { return {0.0, 0.0, 0.0, n, 0.0, 0.0}; }
};

/// Throws DegenerateError when xi <= kDegenerateXi.
EdgeworthCoefficients edgeworth_coefficients(const Projections& proj, double c_delta = 0.0);

/// The polynomial a(x^2/3+1/6) + b(x^2+1) - 3cx^2.
double edgeworth_polynomial(double x, const EdgeworthCoefficients& k) noexcept;
/// Empirical Edgeworth CDF clamped to [0, 1].
double edgeworth_cdf(double x, const EdgeworthCoefficients& k) noexcept;
/// Cornish-Fisher quantile z_alpha - poly(z_alpha)/sqrt(n) - delta_draw.
double cornish_fisher_quantile(double alpha, const EdgeworthCoefficients& k, double delta_draw = 0.0);

/// Everything needed to form intervals and tests for one target on one network.
struct Studentized {
    Target target = Target::balanced;
    std::size_t n = 0;
    double U_hat = 0.0;
    double V_hat = 0.0;
    double estimate = 0.0;
    double S_hat = 0.0;
    EdgeworthCoefficients coefficients;
};

/// Full pipeline for one target; coefficients are left at zero when
/// `with_coefficients` is false.
Studentized studentize(const FullCensus& full, Target target, double c_delta = 0.0, bool with_coefficients = true);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    double length() const noexcept { return upper - lower; }
};

/// (estimate - q_{1-a/2} S, estimate - q_{a/2} S); normal uses z quantiles.
Interval analytic_interval(const Studentized& st, double level, Method method, double delta_draw = 0.0);

/// One- or two-sided p-value of H0: w = null_value. greater = 1 - G(T),
/// less = G(T), two-sided = 2 min(...), with T = (estimate - null)/S + delta.
double analytic_p_value(const Studentized& st, double null_value, Alternative alt, Method method,
                        double delta_draw = 0.0);

/// Realised perturbation sqrt(c_delta log(n) / n) * Z with Z drawn from `seed`.
double draw_delta(double c_delta, std::size_t n, std::uint64_t seed);

inline constexpr double kDefaultCDelta = 0.1;

/// Balance-free baseline values for negative-sign fraction s in [0, 1].
std::map<std::string, double> baselines(double s);
/// Adjusted baseline key for a target (adjusted_balanced, adjusted_type1, ...).
std::string adjusted_baseline_key(Target t);

struct InferenceOptions {
    double level = 0.95;
    Target target = Target::balanced;
    Method method = Method::edgeworth;
    double c_delta = 0.0;
    std::uint64_t seed = 0;
    std::size_t replicates = 1000;  ///< bootstrap only
    unsigned threads = 0;
    CensusOptions census;
};

struct InferenceReport {
    Target target = Target::balanced;
    std::size_t n = 0;
    double U_hat = 0.0;
    double V_hat = 0.0;
    double estimate = 0.0;
    double S_hat = 0.0;
    double a_hat = 0.0;
    double b_hat = 0.0;
    double c_hat = 0.0;
    double c_delta = 0.0;
    double delta_draw = 0.0;
    double level = 0.95;
    double ci_lower = 0.0;
    double ci_upper = 0.0;
    Method method = Method::edgeworth;
    std::map<std::string, double> p_values;
    std::map<std::string, double> baselines;
};

/// Interval, baseline p-values and baselines for one network. The p-value map
/// holds one entry per baseline relevant to the target; the alternative is
/// `greater` for balanced, type1 and type3 and `less` for type2 and type4.
InferenceReport confidence_interval(const SignedAdjacency& adj, const InferenceOptions& options);

Alternative baseline_alternative(Target t) noexcept;
/// Baseline nulls reported for a target: baseline50/baseline25 where defined, then adjusted.
std::vector<std::string> baseline_nulls(Target t);

struct TestResult {
    Target target = Target::balanced;
    std::size_t n = 0;
    Method method = Method::edgeworth;
    Alternative alternative = Alternative::greater;
    std::string null_name;
    double null_value = 0.0;
    double estimate = 0.0;
    double S_hat = 0.0;
    double statistic = 0.0;
    double c_delta = 0.0;
    double delta_draw = 0.0;
    double p_value = 0.0;
};

/// Null values: a number, or "adjusted" (from the network's own negative
/// fraction), or any key of baselines().
double resolve_null(std::string_view spec, const SignedAdjacency& adj, Target target, std::string* name = nullptr);

TestResult balance_test(const SignedAdjacency& adj, std::string_view null_spec, Alternative alt,
                        const InferenceOptions& options);

}  // namespace signbal
