// signbal: command-line front end for sampling, triangle census, interval
// estimation, balance tests and Monte Carlo studies.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "signbal/bootstrap.hpp"
#include "signbal/census.hpp"
#include "signbal/error.hpp"
#include "signbal/graphon.hpp"
#include "signbal/harness.hpp"
#include "signbal/inference.hpp"
#include "signbal/parallel.hpp"
#include "signbal/report_json.hpp"
#include "signbal/signed_graph.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kDegenerate = 3 };

// Problems with input files, as opposed to command-line usage.
class DataError : public signbal::Error {
public:
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json read_json(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(path + ": " + e.what());
    }
}

signbal::SignedAdjacency read_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    return signbal::parse_edge_list(in);
}

template <class F>
auto as_data(F&& f) {
    try {
        return f();
    } catch (const signbal::InvalidArgument& e) {
        throw DataError(e.what());
    }
}

void print_json(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << '\n'; }

void print_table(const nlohmann::ordered_json& j, const std::string& indent = "") {
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            std::cout << indent << key << ":\n";
            print_table(value, indent + "  ");
        } else {
            std::printf("%s%-14s %s\n", indent.c_str(), key.c_str(),
                        value.is_string() ? value.get<std::string>().c_str() : value.dump().c_str());
        }
    }
}

void emit(const nlohmann::ordered_json& j, bool pretty) {
    if (pretty)
        print_table(j);
    else
        print_json(j);
}

struct AnalysisFlags {
    std::string in;
    double level = 0.95;
    std::string target = "balanced";
    std::string method = "edgeworth";
    std::size_t replicates = 1000;
    std::optional<double> c_delta;
    bool perturb = false;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    bool pretty = false;

    signbal::InferenceOptions options() const {
        signbal::InferenceOptions o;
        o.level = level;
        o.target = signbal::parse_target(target);
        o.method = signbal::parse_method(method);
        o.c_delta = c_delta ? *c_delta : (perturb ? signbal::kDefaultCDelta : 0.0);
        o.seed = seed;
        o.replicates = replicates;
        o.threads = threads;
        o.census.threads = threads;
        return o;
    }
};

void add_analysis_flags(CLI::App* cmd, AnalysisFlags& f) {
    cmd->add_option("--in", f.in, "Edge-list file of the observed network")->required();
    cmd->add_option("--target", f.target, "balanced, type1, type2, type3 or type4")->capture_default_str();
    cmd->add_option("--method", f.method, "edgeworth, normal or bootstrap")->capture_default_str();
    cmd->add_option("--replicates", f.replicates, "Bootstrap replicates (method bootstrap, at least 100)")
        ->capture_default_str();
    cmd->add_option("--c-delta", f.c_delta, "Perturbation constant c in delta ~ N(0, c log(n)/n); 0 disables");
    cmd->add_flag("--perturb", f.perturb, "Shorthand for --c-delta 0.1 when --c-delta is not given");
    cmd->add_option("--seed", f.seed, "Seed for the perturbation draw and bootstrap resampling")
        ->capture_default_str();
    cmd->add_option("--threads", f.threads, "Worker threads (0 = SIGNBAL_THREADS or all cores)")
        ->capture_default_str();
    cmd->add_flag("--pretty", f.pretty, "Human-readable table instead of JSON");
}

int run(int argc, char** argv) {
    CLI::App app{"Signed-network triangle balance: sampling, census and inference"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Sample a network from a graphon spec file");
    std::string spec_path, out_path;
    std::optional<std::size_t> sim_n;
    std::uint64_t sim_seed = 0;
    simulate->add_option("--spec", spec_path, "Spec file {name, params, rho, s, n}")->required();
    simulate->add_option("--n", sim_n, "Number of nodes (overrides the spec file's n)");
    simulate->add_option("--seed", sim_seed, "Sampling seed")->capture_default_str();
    simulate->add_option("--out", out_path, "Output edge-list file (stdout when omitted)");

    // census
    auto* census_cmd = app.add_subcommand("census", "Count triangles by sign type");
    std::string census_in;
    bool census_pretty = false;
    unsigned census_threads = 0;
    census_cmd->add_option("--in", census_in, "Edge-list file")->required();
    census_cmd->add_option("--threads", census_threads, "Worker threads (0 = SIGNBAL_THREADS or all cores)");
    census_cmd->add_flag("--pretty", census_pretty, "Human-readable table instead of JSON");

    // ci
    auto* ci = app.add_subcommand("ci", "Confidence interval, baselines and baseline p-values");
    AnalysisFlags ci_flags;
    std::string draws_out;
    add_analysis_flags(ci, ci_flags);
    ci->add_option("--level", ci_flags.level, "Confidence level in (0,1)")->capture_default_str();
    ci->add_option("--draws-out", draws_out, "Write the bootstrap draws to this CSV (method bootstrap)");

    // test
    auto* test = app.add_subcommand("test", "Test H0: w = null against an alternative");
    AnalysisFlags test_flags;
    std::string null_spec = "adjusted";
    std::string alt = "greater";
    add_analysis_flags(test, test_flags);
    test->add_option("--null", null_spec,
                     "Null value: a number, 'adjusted' (from the network's negative fraction) or a baseline key")
        ->capture_default_str();
    test->add_option("--alt", alt, "greater, less or two-sided")->capture_default_str();

    // mc
    auto* mc = app.add_subcommand("mc", "Run a Monte Carlo study described by a JSON config");
    std::string config_path, mc_out;
    bool plot_data = false;
    std::optional<unsigned> mc_threads;
    mc->add_option("--config", config_path, "Experiment config file")->required();
    mc->add_option("--out", mc_out, "Output directory for CSV files")->required();
    mc->add_flag("--plot-data", plot_data, "Also write long-format CSV files");
    mc->add_option("--threads", mc_threads, "Worker threads (overrides the config; 0 = all cores)");

    auto* version = app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    if (*version) {
        std::cout << "signbal " << kVersion << '\n';
        return kOk;
    }

    if (*simulate) {
        const auto file = as_data([&] { return signbal::spec_file_from_json(read_json(spec_path)); });
        const std::optional<std::size_t> n = sim_n ? sim_n : file.n;
        if (!n) throw signbal::InvalidArgument("--n is required when the spec file has no n");
        const auto spec = as_data([&] { return signbal::graphon_from_spec_file(file, n); });
        const auto adj = signbal::sample_network(spec, *n, sim_seed);
        if (out_path.empty()) {
            signbal::write_edge_list(std::cout, adj);
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw DataError("cannot write " + out_path);
            signbal::write_edge_list(out, adj);
        }
        return kOk;
    }

    if (*census_cmd) {
        const auto adj = read_network(census_in);
        signbal::CensusOptions options;
        options.threads = census_threads;
        emit(signbal::to_json(signbal::census(adj, options)), census_pretty);
        return kOk;
    }

    if (*ci) {
        const auto options = ci_flags.options();
        const auto adj = read_network(ci_flags.in);
        if (options.method == signbal::Method::bootstrap) {
            signbal::BootstrapDistribution dist;
            const auto report = signbal::bootstrap_ci(adj, options, &dist);
            if (!draws_out.empty()) {
                std::ofstream out(draws_out, std::ios::binary);
                if (!out) throw DataError("cannot write " + draws_out);
                signbal::write_draws_csv(out, dist);
            }
            emit(signbal::to_json(report), ci_flags.pretty);
        } else {
            if (!draws_out.empty()) throw signbal::InvalidArgument("--draws-out needs --method bootstrap");
            emit(signbal::to_json(signbal::confidence_interval(adj, options)), ci_flags.pretty);
        }
        return kOk;
    }

    if (*test) {
        const auto options = test_flags.options();
        const auto alternative = signbal::parse_alternative(alt);
        const auto adj = read_network(test_flags.in);
        emit(signbal::to_json(signbal::balance_test(adj, null_spec, alternative, options)), test_flags.pretty);
        return kOk;
    }

    if (*mc) {
        auto config = as_data([&] { return signbal::config_from_json(read_json(config_path)); });
        if (mc_threads) config.threads = *mc_threads;
        const auto written = signbal::run_study_to_directory(config, mc_out, plot_data);
        nlohmann::ordered_json j;
        j["files"] = written;
        print_json(j);
        return kOk;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const signbal::DegenerateError& e) {
        std::cerr << "signbal: degenerate: " << e.what() << '\n';
        return kDegenerate;
    } catch (const signbal::InvalidArgument& e) {
        std::cerr << "signbal: usage: " << e.what() << '\n';
        return kUsage;
    } catch (const signbal::Error& e) {
        std::cerr << "signbal: data: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "signbal: data: " << e.what() << '\n';
        return kData;
    }
}
