#include "signbal/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "signbal/bootstrap.hpp"
#include "signbal/error.hpp"
#include "signbal/normal.hpp"
#include "signbal/parallel.hpp"
#include "signbal/rng.hpp"

namespace signbal {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kTruthStream = 0xFFFFFFFF00000001ULL;
constexpr std::uint64_t kObservedStream = 0xFFFFFFFF00000002ULL;
constexpr std::uint64_t kDeltaSubstream = 1;
constexpr std::uint64_t kBootstrapSubstream = 2;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Cell {
    std::size_t index;
    std::size_t n;
    std::optional<double> grid_value;
};

std::vector<Cell> cells_of(const ExperimentConfig& config) {
    std::vector<Cell> cells;
    const std::vector<std::optional<double>> values =
        config.grid ? std::vector<std::optional<double>>(config.grid->values.begin(), config.grid->values.end())
                    : std::vector<std::optional<double>>{std::nullopt};
    for (const auto& v : values)
        for (const std::size_t n : config.n_grid) cells.push_back({cells.size(), n, v});
    return cells;
}

std::string grid_name(const ExperimentConfig& config) { return config.grid ? config.grid->name : std::string(); }

double truth_of(const PopulationMoments& m, Target t) {
    return t == Target::balanced ? m.w : m.w_t[static_cast<std::size_t>(t) - 1];
}

double truth_se_of(const PopulationMoments& m, Target t) {
    return t == Target::balanced ? m.mc_se_w : m.mc_se_w_t[static_cast<std::size_t>(t) - 1];
}

Method parse_method_checked(const std::string& s) { return parse_method(s); }

}  // namespace

void validate(const ExperimentConfig& config) {
    if (config.n_grid.empty()) throw InvalidArgument("n_grid must not be empty");
    for (const auto n : config.n_grid)
        if (n < 3) throw InvalidArgument("every n in n_grid must be at least 3");
    if (config.grid && config.grid->values.empty()) throw InvalidArgument("parameter grid must not be empty");
    if (config.replications < 1) throw InvalidArgument("replications must be at least 1");
    if (config.methods.empty()) throw InvalidArgument("methods must not be empty");
    if (config.targets.empty()) throw InvalidArgument("targets must not be empty");
    if (!(config.level > 0.0 && config.level < 1.0)) throw InvalidArgument("level must lie in (0,1)");
    const bool wants_bootstrap =
        std::find(config.methods.begin(), config.methods.end(), Method::bootstrap) != config.methods.end();
    if (wants_bootstrap && config.bootstrap_replicates < 100)
        throw InvalidArgument("the bootstrap method needs bootstrap_replicates >= 100");
    if (config.c_delta < 0.0) throw InvalidArgument("c_delta must be nonnegative");
    if (config.cdf_grid_points < 2) throw InvalidArgument("cdf_grid_points must be at least 2");
    if (config.timing_repetitions < 1) throw InvalidArgument("timing_repetitions must be at least 1");
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    static const std::vector<std::string> known{
        "study",   "spec",           "grid",   "n_grid",  "replications",         "level",
        "methods", "targets",        "truth_budget", "seed", "c_delta", "bootstrap_replicates",
        "timing_repetitions", "cdf_grid_points", "threads"};
    if (!j.is_object()) throw InvalidArgument("experiment config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw InvalidArgument("unknown config field '" + key + "'");

    ExperimentConfig c;
    try {
        const std::string study = j.value("study", std::string("coverage"));
        if (study == "coverage")
            c.study = Study::coverage;
        else if (study == "cdf")
            c.study = Study::cdf;
        else if (study == "timing")
            c.study = Study::timing;
        else
            throw InvalidArgument("unknown study '" + study + "'");

        if (j.contains("spec")) {
            const auto& s = j.at("spec");
            c.spec.name = s.value("name", std::string("const-cos"));
            if (s.contains("params")) c.spec.params = s.at("params").get<ParamMap>();
            if (s.contains("rho")) c.spec.rho = s.at("rho").get<double>();
            if (s.contains("s")) c.spec.s = s.at("s").get<double>();
        }
        if (j.contains("grid")) {
            ParamGrid g;
            g.name = j.at("grid").at("name").get<std::string>();
            g.values = j.at("grid").at("values").get<std::vector<double>>();
            c.grid = std::move(g);
        }
        c.n_grid = j.at("n_grid").get<std::vector<std::size_t>>();
        c.replications = j.value("replications", c.replications);
        c.level = j.value("level", c.level);
        if (j.contains("methods")) {
            c.methods.clear();
            for (const auto& m : j.at("methods")) c.methods.push_back(parse_method_checked(m.get<std::string>()));
        }
        if (j.contains("targets")) {
            c.targets.clear();
            for (const auto& t : j.at("targets")) c.targets.push_back(parse_target(t.get<std::string>()));
        }
        c.truth_budget = j.value("truth_budget", c.truth_budget);
        c.seed = j.value("seed", c.seed);
        c.c_delta = j.value("c_delta", c.c_delta);
        c.bootstrap_replicates = j.value("bootstrap_replicates", c.bootstrap_replicates);
        c.timing_repetitions = j.value("timing_repetitions", c.timing_repetitions);
        c.cdf_grid_points = j.value("cdf_grid_points", c.cdf_grid_points);
        c.threads = j.value("threads", c.threads);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("bad experiment config: ") + e.what());
    }
    validate(c);
    return c;
}

GraphonSpec cell_spec(const ExperimentConfig& config, std::optional<double> grid_value, std::size_t n) {
    ParamMap params = config.spec.params;
    if (grid_value) params[config.grid->name] = *grid_value;
    if (!params.contains("n")) params["n"] = static_cast<double>(n);
    GraphonSpec spec = builtin_spec(config.spec.name, params);
    if (config.spec.rho) spec.rho = *config.spec.rho;
    if (config.spec.s) spec.s = *config.spec.s;
    validate(spec);
    return spec;
}

namespace {

struct ReplicateOutcome {
    double density = std::nan("");
    double negative_fraction = std::nan("");
    std::vector<char> degenerate;        // per target
    std::vector<double> estimate;        // per target
    std::vector<char> covered;           // per target x method
    std::vector<double> length;          // per target x method
    std::vector<char> method_failed;     // per target x method (bootstrap degeneracy)
    std::vector<double> method_seconds;  // per target x method
    double shared_seconds = 0.0;
};

}  // namespace

std::vector<ExperimentRow> run_coverage(const ExperimentConfig& config) {
    validate(config);
    const std::size_t T = config.targets.size();
    const std::size_t M = config.methods.size();
    std::vector<ExperimentRow> rows;

    for (const Cell& cell : cells_of(config)) {
        const GraphonSpec spec = cell_spec(config, cell.grid_value, cell.n);
        const std::uint64_t cell_key = stream_key(config.seed, cell.index);
        const PopulationMoments truth =
            population_moments(spec, config.truth_budget, stream_key(cell_key, kTruthStream), config.threads);

        std::vector<ReplicateOutcome> outcomes(config.replications);
        parallel_for(config.replications, config.threads, [&](std::size_t r) {
            ReplicateOutcome& out = outcomes[r];
            out.degenerate.assign(T, 0);
            out.estimate.assign(T, std::nan(""));
            out.covered.assign(T * M, 0);
            out.length.assign(T * M, std::nan(""));
            out.method_failed.assign(T * M, 0);
            out.method_seconds.assign(T * M, 0.0);

            const std::uint64_t rep_key = stream_key(cell_key, r);
            const SignedAdjacency adj = sample_network(spec, cell.n, rep_key);
            const auto summary = summarize(adj);
            out.density = summary.edge_proportion;
            if (summary.negative_fraction) out.negative_fraction = *summary.negative_fraction;

            CensusOptions census;
            census.threads = 1;
            const auto shared_start = Clock::now();
            const FullCensus full = full_census(adj, census);
            out.shared_seconds = seconds_since(shared_start);
            const double delta = draw_delta(config.c_delta, cell.n, stream_key(rep_key, kDeltaSubstream));

            for (std::size_t t = 0; t < T; ++t) {
                const Target target = config.targets[t];
                const double w = truth_of(truth, target);
                for (std::size_t m = 0; m < M; ++m) {
                    const Method method = config.methods[m];
                    const auto start = Clock::now();
                    try {
                        const Studentized st = studentize(full, target, config.c_delta, method != Method::normal);
                        out.estimate[t] = st.estimate;
                        Interval ci;
                        if (method == Method::bootstrap) {
                            BootstrapOptions bo;
                            bo.replicates = config.bootstrap_replicates;
                            bo.seed = stream_key(stream_key(rep_key, kBootstrapSubstream), t);
                            bo.threads = 1;
                            bo.census = census;
                            try {
                                ci = bootstrap_interval(st, bootstrap_distribution(adj, st, bo), config.level);
                            } catch (const DegenerateError&) {
                                out.method_failed[t * M + m] = 1;
                                continue;
                            }
                        } else {
                            ci = analytic_interval(st, config.level, method, delta);
                        }
                        out.covered[t * M + m] = ci.lower <= w && w <= ci.upper;
                        out.length[t * M + m] = ci.length();
                    } catch (const DegenerateError&) {
                        out.degenerate[t] = 1;
                    }
                    out.method_seconds[t * M + m] = seconds_since(start);
                }
            }
        });

        double density_sum = 0.0, neg_sum = 0.0;
        std::size_t neg_count = 0;
        for (const auto& o : outcomes) {
            density_sum += o.density;
            if (!std::isnan(o.negative_fraction)) {
                neg_sum += o.negative_fraction;
                ++neg_count;
            }
        }
        const double reps = static_cast<double>(config.replications);

        for (std::size_t t = 0; t < T; ++t) {
            for (std::size_t m = 0; m < M; ++m) {
                ExperimentRow row;
                row.n = cell.n;
                row.param_name = grid_name(config);
                row.param_value = cell.grid_value.value_or(std::nan(""));
                row.rho = spec.rho;
                row.method = config.methods[m];
                row.target = config.targets[t];
                row.replications = config.replications;
                row.truth = truth_of(truth, row.target);
                row.truth_se = truth_se_of(truth, row.target);
                row.realized_density = density_sum / reps;
                row.realized_negative_fraction = neg_count ? neg_sum / static_cast<double>(neg_count) : std::nan("");
                std::size_t covered = 0;
                double length_sum = 0.0, estimate_sum = 0.0, seconds = 0.0;
                for (const auto& o : outcomes) {
                    seconds += o.shared_seconds + o.method_seconds[t * M + m];
                    if (o.degenerate[t] || o.method_failed[t * M + m]) {
                        ++row.degenerate;
                        continue;
                    }
                    ++row.valid;
                    covered += static_cast<std::size_t>(o.covered[t * M + m]);
                    length_sum += o.length[t * M + m];
                    estimate_sum += o.estimate[t];
                }
                if (row.valid > 0) {
                    const double v = static_cast<double>(row.valid);
                    row.coverage = static_cast<double>(covered) / v;
                    row.coverage_se = std::sqrt(row.coverage * (1.0 - row.coverage) / v);
                    row.mean_length = length_sum / v;
                    row.mean_estimate = estimate_sum / v;
                } else {
                    row.coverage = row.coverage_se = row.mean_length = row.mean_estimate = std::nan("");
                }
                row.wall_time_s = seconds;
                rows.push_back(row);
            }
        }
        const bool any_valid = std::any_of(rows.end() - static_cast<std::ptrdiff_t>(T * M), rows.end(),
                                           [](const ExperimentRow& r) { return r.valid > 0; });
        if (!any_valid)
            throw DegenerateError(DegeneracyKind::all_replicates,
                                  "every replicate of cell n=" + std::to_string(cell.n) + " is degenerate");
    }
    return rows;
}

double dkw_bound(std::size_t samples, double eta) {
    if (samples == 0) throw InvalidArgument("DKW bound needs at least one sample");
    return std::sqrt(std::log(2.0 / eta) / (2.0 * static_cast<double>(samples)));
}

CdfStudy run_cdf_study(const ExperimentConfig& config) {
    validate(config);
    const std::size_t T = config.targets.size();
    const bool wants_bootstrap =
        std::find(config.methods.begin(), config.methods.end(), Method::bootstrap) != config.methods.end();
    CdfStudy study;

    std::vector<double> grid(config.cdf_grid_points);
    for (std::size_t g = 0; g < grid.size(); ++g)
        grid[g] = -4.0 + 8.0 * static_cast<double>(g) / static_cast<double>(grid.size() - 1);

    for (const Cell& cell : cells_of(config)) {
        const GraphonSpec spec = cell_spec(config, cell.grid_value, cell.n);
        const std::uint64_t cell_key = stream_key(config.seed, cell.index);
        const PopulationMoments truth =
            population_moments(spec, config.truth_budget, stream_key(cell_key, kTruthStream), config.threads);

        // Studentized statistics and coefficients of every simulated network.
        struct Draw {
            bool ok = false;
            double t = 0.0;
            EdgeworthCoefficients k;
        };
        std::vector<std::vector<Draw>> draws(T, std::vector<Draw>(config.replications));
        parallel_for(config.replications, config.threads, [&](std::size_t r) {
            const SignedAdjacency adj = sample_network(spec, cell.n, stream_key(cell_key, r));
            CensusOptions census;
            census.threads = 1;
            const FullCensus full = full_census(adj, census);
            for (std::size_t t = 0; t < T; ++t) {
                try {
                    const Studentized st = studentize(full, config.targets[t]);
                    draws[t][r] = {true, (st.estimate - truth_of(truth, config.targets[t])) / st.S_hat, st.coefficients};
                } catch (const DegenerateError&) {
                }
            }
        });

        const SignedAdjacency observed = sample_network(spec, cell.n, stream_key(cell_key, kObservedStream));
        const FullCensus observed_full = full_census(observed, CensusOptions{10'000, config.threads});

        for (std::size_t t = 0; t < T; ++t) {
            const Target target = config.targets[t];
            std::vector<double> simulated;
            EdgeworthCoefficients mean_k = EdgeworthCoefficients::zero(cell.n);
            for (const auto& d : draws[t]) {
                if (!d.ok) continue;
                simulated.push_back(d.t);
                mean_k.a += d.k.a;
                mean_k.b += d.k.b;
                mean_k.c += d.k.c;
            }
            if (simulated.empty())
                throw DegenerateError(DegeneracyKind::all_replicates, "every simulated network is degenerate");
            const double count = static_cast<double>(simulated.size());
            mean_k.a /= count;
            mean_k.b /= count;
            mean_k.c /= count;
            std::sort(simulated.begin(), simulated.end());

            const Studentized obs = studentize(observed_full, target);
            std::vector<double> boot_sorted;
            if (wants_bootstrap) {
                BootstrapOptions bo;
                bo.replicates = config.bootstrap_replicates;
                bo.seed = stream_key(stream_key(cell_key, kObservedStream), t);
                bo.threads = config.threads;
                boot_sorted = bootstrap_distribution(observed, obs, bo).draws;
                std::sort(boot_sorted.begin(), boot_sorted.end());
            }

            double d_edge = 0.0, d_mean = 0.0, d_norm = 0.0, d_boot = 0.0;
            for (const double x : grid) {
                CdfCurvePoint p;
                p.n = cell.n;
                p.param_value = cell.grid_value.value_or(std::nan(""));
                p.target = target;
                p.x = x;
                p.truth = empirical_cdf(simulated, x);
                p.edgeworth = edgeworth_cdf(x, obs.coefficients);
                p.edgeworth_mean = edgeworth_cdf(x, mean_k);
                p.normal = normal_cdf(x);
                d_edge = std::max(d_edge, std::abs(p.edgeworth - p.truth));
                d_mean = std::max(d_mean, std::abs(p.edgeworth_mean - p.truth));
                d_norm = std::max(d_norm, std::abs(p.normal - p.truth));
                if (wants_bootstrap) {
                    p.bootstrap = empirical_cdf(boot_sorted, x);
                    d_boot = std::max(d_boot, std::abs(*p.bootstrap - p.truth));
                }
                study.curves.push_back(p);
            }

            auto add = [&](const char* name, double distance) {
                CdfDistance d;
                d.n = cell.n;
                d.param_name = grid_name(config);
                d.param_value = cell.grid_value.value_or(std::nan(""));
                d.target = target;
                d.approximation = name;
                d.sup_distance = distance;
                d.truth_replications = simulated.size();
                d.dkw_bound = dkw_bound(simulated.size());
                d.truth = truth_of(truth, target);
                study.distances.push_back(d);
            };
            add("edgeworth", d_edge);
            add("edgeworth_mean", d_mean);
            add("normal", d_norm);
            if (wants_bootstrap) add("bootstrap", d_boot);
        }
    }
    return study;
}

std::vector<TimingRow> run_timing(const ExperimentConfig& config) {
    validate(config);
    std::vector<TimingRow> rows;
    const Target target = config.targets.front();
    for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
        const std::size_t n = config.n_grid[ni];
        const GraphonSpec spec = cell_spec(config, config.grid ? std::optional(config.grid->values.front()) : std::nullopt, n);
        const std::uint64_t cell_key = stream_key(config.seed, ni);
        const SignedAdjacency adj = sample_network(spec, n, cell_key);
        CensusOptions census;
        census.threads = 1;

        for (const Method method : config.methods) {
            auto analyse = [&] {
                const FullCensus full = full_census(adj, census);
                const Studentized st = studentize(full, target, config.c_delta, method != Method::normal);
                if (method == Method::bootstrap) {
                    BootstrapOptions bo;
                    bo.replicates = config.bootstrap_replicates;
                    bo.seed = stream_key(cell_key, 1);
                    bo.threads = 1;
                    bo.census = census;
                    return bootstrap_interval(st, bootstrap_distribution(adj, st, bo), config.level).length();
                }
                return analytic_interval(st, config.level, method).length();
            };

            // Each repetition loops until at least 20 ms have passed so that
            // sub-millisecond analyses are timed above clock resolution.
            std::vector<double> per_call;
            volatile double sink = 0.0;
            for (std::size_t rep = 0; rep < config.timing_repetitions; ++rep) {
                std::size_t calls = 0;
                const auto start = Clock::now();
                double elapsed = 0.0;
                do {
                    sink = sink + analyse();
                    ++calls;
                    elapsed = seconds_since(start);
                } while (elapsed < 0.02);
                per_call.push_back(elapsed / static_cast<double>(calls));
            }
            std::sort(per_call.begin(), per_call.end());
            rows.push_back({n, method, per_call[per_call.size() / 2], config.timing_repetitions});
        }
    }
    return rows;
}

void write_coverage_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
    out << "n,param_name,param_value,rho,method,target,replications,valid,coverage,coverage_se,mean_length,"
           "mean_estimate,truth,truth_se,realized_density,realized_negative_fraction,degenerate,wall_time_s\n";
    for (const auto& r : rows) {
        out << r.n << ',' << r.param_name << ',' << num(r.param_value) << ',' << num(r.rho) << ','
            << to_string(r.method) << ',' << to_string(r.target) << ',' << r.replications << ',' << r.valid << ','
            << num(r.coverage) << ',' << num(r.coverage_se) << ',' << num(r.mean_length) << ','
            << num(r.mean_estimate) << ',' << num(r.truth) << ',' << num(r.truth_se) << ','
            << num(r.realized_density) << ',' << num(r.realized_negative_fraction) << ',' << r.degenerate << ','
            << num(r.wall_time_s) << '\n';
    }
}

void write_coverage_long_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
    out << "n,param_name,param_value,method,target,metric,value\n";
    for (const auto& r : rows) {
        const std::pair<const char*, double> metrics[] = {
            {"coverage", r.coverage}, {"mean_length", r.mean_length}, {"mean_estimate", r.mean_estimate},
            {"truth", r.truth},       {"realized_density", r.realized_density}};
        for (const auto& [metric, value] : metrics)
            out << r.n << ',' << r.param_name << ',' << num(r.param_value) << ',' << to_string(r.method) << ','
                << to_string(r.target) << ',' << metric << ',' << num(value) << '\n';
    }
}

void write_cdf_csv(std::ostream& out, const CdfStudy& study) {
    out << "n,param_name,param_value,target,approximation,sup_distance,truth_replications,dkw_bound,truth\n";
    for (const auto& d : study.distances)
        out << d.n << ',' << d.param_name << ',' << num(d.param_value) << ',' << to_string(d.target) << ','
            << d.approximation << ',' << num(d.sup_distance) << ',' << d.truth_replications << ','
            << num(d.dkw_bound) << ',' << num(d.truth) << '\n';
}

void write_cdf_curves_csv(std::ostream& out, const CdfStudy& study) {
    out << "n,param_value,target,x,truth,edgeworth,edgeworth_mean,normal,bootstrap\n";
    for (const auto& p : study.curves)
        out << p.n << ',' << num(p.param_value) << ',' << to_string(p.target) << ',' << num(p.x) << ','
            << num(p.truth) << ',' << num(p.edgeworth) << ',' << num(p.edgeworth_mean) << ',' << num(p.normal)
            << ',' << (p.bootstrap ? num(*p.bootstrap) : std::string()) << '\n';
}

void write_cdf_long_csv(std::ostream& out, const CdfStudy& study) {
    out << "n,param_value,target,x,curve,value\n";
    for (const auto& p : study.curves) {
        auto row = [&](const char* curve, double value) {
            out << p.n << ',' << num(p.param_value) << ',' << to_string(p.target) << ',' << num(p.x) << ','
                << curve << ',' << num(value) << '\n';
        };
        row("truth", p.truth);
        row("edgeworth", p.edgeworth);
        row("edgeworth_mean", p.edgeworth_mean);
        row("normal", p.normal);
        if (p.bootstrap) row("bootstrap", *p.bootstrap);
    }
}

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows) {
    out << "n,method,seconds,repetitions\n";
    for (const auto& r : rows)
        out << r.n << ',' << to_string(r.method) << ',' << num(r.seconds) << ',' << r.repetitions << '\n';
}

void write_timing_long_csv(std::ostream& out, const std::vector<TimingRow>& rows) {
    out << "n,method,metric,value\n";
    for (const auto& r : rows)
        out << r.n << ',' << to_string(r.method) << ",log_seconds," << num(std::log(r.seconds)) << '\n';
}

std::vector<std::string> run_study_to_directory(const ExperimentConfig& config, const std::string& directory,
                                                bool plot_data) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);
    std::vector<std::string> written;
    auto emit = [&](const std::string& name, auto&& writer) {
        const std::string path = (fs::path(directory) / name).string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InvalidArgument("cannot write " + path);
        writer(out);
        written.push_back(path);
    };

    switch (config.study) {
        case Study::coverage: {
            const auto rows = run_coverage(config);
            emit("coverage.csv", [&](std::ostream& o) { write_coverage_csv(o, rows); });
            if (plot_data) emit("coverage_long.csv", [&](std::ostream& o) { write_coverage_long_csv(o, rows); });
            break;
        }
        case Study::cdf: {
            const auto study = run_cdf_study(config);
            emit("cdf.csv", [&](std::ostream& o) { write_cdf_csv(o, study); });
            emit("cdf_curves.csv", [&](std::ostream& o) { write_cdf_curves_csv(o, study); });
            if (plot_data) emit("cdf_long.csv", [&](std::ostream& o) { write_cdf_long_csv(o, study); });
            break;
        }
        case Study::timing: {
            const auto rows = run_timing(config);
            emit("timing.csv", [&](std::ostream& o) { write_timing_csv(o, rows); });
            if (plot_data) emit("timing_long.csv", [&](std::ostream& o) { write_timing_long_csv(o, rows); });
            break;
        }
    }
    return written;
}

}  // namespace signbal
