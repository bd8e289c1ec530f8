#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "signbal/error.hpp"
#include "signbal/harness.hpp"

using namespace signbal;

namespace {

ExperimentConfig small_coverage() {
    ExperimentConfig c;
    c.study = Study::coverage;
    c.n_grid = {30};
    c.replications = 40;
    c.truth_budget = 20'000;
    c.seed = 11;
    return c;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

}  // namespace

TEST_SUITE("mc_harness") {

TEST_CASE("config parsing and validation") {
    const auto j = nlohmann::json::parse(R"({
        "study": "coverage",
        "spec": {"name": "logistic-balance", "params": {"edge": 0.7}},
        "grid": {"name": "alpha", "values": [0, 20]},
        "n_grid": [20, 40],
        "replications": 10,
        "methods": ["edgeworth", "normal"],
        "targets": ["balanced", "type-2"],
        "truth_budget": 5000,
        "seed": 3
    })");
    const auto c = config_from_json(j);
    CHECK(c.grid->values.size() == 2);
    CHECK(c.targets[1] == Target::type2);
    CHECK(cell_spec(c, 20.0, 40).params.at("alpha") == 20.0);

    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n_grid": []})")), InvalidArgument);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n_grid": [20], "bogus": 1})")), InvalidArgument);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n_grid": [20], "methods": ["bootstrap"]})")),
                    InvalidArgument);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"n_grid": [20], "replications": 0})")),
                    InvalidArgument);
}

TEST_CASE("sparse grid cells carry rho = n^(-1/k)") {
    ExperimentConfig c = small_coverage();
    c.spec.name = "sparse-const";
    c.grid = ParamGrid{"k", {3.0, 6.0}};
    CHECK(cell_spec(c, 3.0, 160).rho == doctest::Approx(std::pow(160.0, -1.0 / 3.0)));
    CHECK(cell_spec(c, 6.0, 160).rho == doctest::Approx(std::pow(160.0, -1.0 / 6.0)));
}

TEST_CASE("coverage study rows") {
    const auto rows = run_coverage(small_coverage());
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.valid + r.degenerate == 40);
        CHECK(r.coverage >= 0.0);
        CHECK(r.coverage <= 1.0);
        CHECK(r.realized_density == doctest::Approx(0.8).epsilon(0.05));
    }
    // both analytic intervals share their length on every network
    CHECK(rows[0].mean_length == doctest::Approx(rows[1].mean_length).epsilon(1e-12));
    CHECK(rows[0].truth == rows[1].truth);

    std::ostringstream csv;
    write_coverage_csv(csv, rows);
    CHECK(first_line(csv.str()) ==
          "n,param_name,param_value,rho,method,target,replications,valid,coverage,coverage_se,mean_length,"
          "mean_estimate,truth,truth_se,realized_density,realized_negative_fraction,degenerate,wall_time_s");
}

TEST_CASE("coverage results do not depend on the thread count") {
    auto c = small_coverage();
    c.threads = 1;
    const auto a = run_coverage(c);
    c.threads = 4;
    const auto b = run_coverage(c);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].coverage == b[i].coverage);
        CHECK(a[i].mean_length == b[i].mean_length);
        CHECK(a[i].mean_estimate == b[i].mean_estimate);
        CHECK(a[i].truth == b[i].truth);
    }
}

TEST_CASE("CDF study") {
    ExperimentConfig c = small_coverage();
    c.study = Study::cdf;
    c.replications = 200;
    c.cdf_grid_points = 33;
    const auto study = run_cdf_study(c);
    CHECK(study.distances.size() == 3);
    CHECK(study.curves.size() == 33);
    for (const auto& d : study.distances) {
        CHECK(d.sup_distance >= 0.0);
        CHECK(d.sup_distance <= 1.0);
        CHECK(d.dkw_bound == doctest::Approx(dkw_bound(d.truth_replications)));
    }
    CHECK(study.curves.front().truth <= study.curves.back().truth);
    CHECK(dkw_bound(10'000) == doctest::Approx(std::sqrt(std::log(40.0) / 20'000.0)));
}

TEST_CASE("timing study and output files") {
    ExperimentConfig c = small_coverage();
    c.study = Study::timing;
    c.n_grid = {20, 40};
    c.timing_repetitions = 1;
    const auto dir = std::filesystem::temp_directory_path() / "signbal_harness_test";
    std::filesystem::remove_all(dir);
    const auto files = run_study_to_directory(c, dir.string(), true);
    CHECK(files.size() == 2);
    std::ifstream in(dir / "timing.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,method,seconds,repetitions");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 4);
    std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
