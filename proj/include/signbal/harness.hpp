#pragma once

// Declarative Monte Carlo studies: CI coverage/length, CDF approximation
// accuracy and computing time, over a grid of node counts and (optionally)
// one graphon parameter.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "signbal/graphon.hpp"
#include "signbal/inference.hpp"

namespace signbal {

enum class Study { coverage, cdf, timing };

struct SpecConfig {
    std::string name = "const-cos";
    ParamMap params;
    std::optional<double> rho;
    std::optional<double> s;
};

struct ParamGrid {
    std::string name;
    std::vector<double> values;
};

struct ExperimentConfig {
    Study study = Study::coverage;
    SpecConfig spec;
    std::optional<ParamGrid> grid;
    std::vector<std::size_t> n_grid;
    /// Replications per cell; for the CDF study, the number of networks used
    /// to simulate the true distribution.
    std::size_t replications = 1000;
    double level = 0.95;
    std::vector<Method> methods{Method::edgeworth, Method::normal};
    std::vector<Target> targets{Target::balanced};
    std::uint64_t truth_budget = 10'000'000;
    std::uint64_t seed = 0;
    double c_delta = 0.0;
    std::size_t bootstrap_replicates = 0;
    std::size_t timing_repetitions = 5;
    std::size_t cdf_grid_points = 512;
    unsigned threads = 0;
};

/// Throws InvalidArgument on empty grids, zero replications, or bootstrap
/// requested without a replicate count.
void validate(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Graphon of one grid cell: the base spec with the grid parameter and n
/// merged into its parameters, then rho/s overrides applied.
GraphonSpec cell_spec(const ExperimentConfig& config, std::optional<double> grid_value, std::size_t n);

struct ExperimentRow {
    std::size_t n = 0;
    std::string param_name;
    double param_value = 0.0;
    double rho = 0.0;
    Method method = Method::edgeworth;
    Target target = Target::balanced;
    std::size_t replications = 0;
    std::size_t valid = 0;
    double coverage = 0.0;
    double coverage_se = 0.0;
    double mean_length = 0.0;
    double mean_estimate = 0.0;
    double truth = 0.0;
    double truth_se = 0.0;
    double realized_density = 0.0;
    double realized_negative_fraction = 0.0;
    std::size_t degenerate = 0;
    double wall_time_s = 0.0;
};

std::vector<ExperimentRow> run_coverage(const ExperimentConfig& config);

struct CdfDistance {
    std::size_t n = 0;
    std::string param_name;
    double param_value = 0.0;
    Target target = Target::balanced;
    std::string approximation;  ///< edgeworth, edgeworth_mean, normal, bootstrap
    double sup_distance = 0.0;
    std::size_t truth_replications = 0;
    double dkw_bound = 0.0;  ///< 95% DKW band half-width of the simulated truth
    double truth = 0.0;
};

struct CdfCurvePoint {
    std::size_t n = 0;
    double param_value = 0.0;
    Target target = Target::balanced;
    double x = 0.0;
    double truth = 0.0;
    double edgeworth = 0.0;
    double edgeworth_mean = 0.0;
    double normal = 0.0;
    std::optional<double> bootstrap;
};

struct CdfStudy {
    std::vector<CdfDistance> distances;
    std::vector<CdfCurvePoint> curves;
};

/// The true CDF of T = (estimate - w)/S is the empirical CDF over
/// `replications` simulated networks; `edgeworth` uses the coefficients of one
/// separately drawn observed network, `edgeworth_mean` the coefficients
/// averaged over the simulated networks, and `bootstrap` resamples the
/// observed network.
CdfStudy run_cdf_study(const ExperimentConfig& config);

/// Half-width of the two-sided DKW band at confidence 1 - eta.
double dkw_bound(std::size_t samples, double eta = 0.05);

struct TimingRow {
    std::size_t n = 0;
    Method method = Method::edgeworth;
    double seconds = 0.0;  ///< median over repetitions of the per-analysis time
    std::size_t repetitions = 0;
};

std::vector<TimingRow> run_timing(const ExperimentConfig& config);

void write_coverage_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
void write_coverage_long_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
void write_cdf_csv(std::ostream& out, const CdfStudy& study);
void write_cdf_curves_csv(std::ostream& out, const CdfStudy& study);
void write_cdf_long_csv(std::ostream& out, const CdfStudy& study);
void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows);
void write_timing_long_csv(std::ostream& out, const std::vector<TimingRow>& rows);

/// Runs the configured study and writes its CSV files into `directory`;
/// returns the paths written.
std::vector<std::string> run_study_to_directory(const ExperimentConfig& config, const std::string& directory,
                                                bool plot_data);

}  // namespace signbal
