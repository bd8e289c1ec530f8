#include <doctest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "signbal/normal.hpp"
#include "signbal/parallel.hpp"
#include "signbal/rng.hpp"

using namespace signbal;

TEST_SUITE("rng") {

TEST_CASE("first 16 draws for seed 0 match the golden file") {
    std::ifstream in(SIGNBAL_TEST_DATA_DIR "/rng_golden_seed0.txt");
    REQUIRE(in);
    std::vector<std::uint64_t> golden;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') golden.push_back(std::stoull(line, nullptr, 16));
    REQUIRE(golden.size() == 16);
    CounterRng rng(0);
    for (std::size_t k = 0; k < golden.size(); ++k) CHECK(rng() == golden[k]);
    CHECK(golden[0] == 0xE220A8397B1DCDAFULL);
}

TEST_CASE("at(k) agrees with sequential draws") {
    CounterRng seq(12345);
    const CounterRng random_access(12345);
    for (std::uint64_t k = 0; k < 100; ++k) CHECK(seq() == random_access.at(k));
    CHECK(seq.counter() == 100);
}

TEST_CASE("stream keys of neighbouring indices and seeds are distinct") {
    std::set<std::uint64_t> keys;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        for (std::uint64_t idx = 0; idx < 200; ++idx) keys.insert(stream_key(seed, idx));
    CHECK(keys.size() == 4000);
    CHECK(stream_key(1, 0) != stream_key(0, 1));
}

TEST_CASE("uniform draws stay in range and have the right mean") {
    CounterRng rng(7);
    double sum = 0.0;
    const int m = 200000;
    for (int i = 0; i < m; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double o = rng.uniform_open();
        REQUIRE(o > 0.0);
        REQUIRE(o < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / m - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / m));
}

TEST_CASE("below(bound) is unbiased over a small range") {
    CounterRng rng(99);
    std::vector<int> hist(7, 0);
    const int m = 70000;
    for (int i = 0; i < m; ++i) {
        const auto v = rng.below(7);
        REQUIRE(v < 7);
        ++hist[v];
    }
    // chi-square with 6 df; 22.46 is the 0.999 quantile
    double chi = 0.0;
    for (const int h : hist) chi += (h - m / 7.0) * (h - m / 7.0) / (m / 7.0);
    CHECK(chi < 22.46);
}

TEST_CASE("normal draws have unit variance") {
    CounterRng rng(3);
    double s1 = 0.0, s2 = 0.0;
    const int m = 100000;
    for (int i = 0; i < m; ++i) {
        const double z = rng.normal();
        s1 += z;
        s2 += z * z;
    }
    CHECK(std::abs(s1 / m) < 0.02);
    CHECK(std::abs(s2 / m - 1.0) < 0.03);
}

}  // TEST_SUITE

TEST_SUITE("normal") {

TEST_CASE("reference values") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-14));
    CHECK(normal_quantile(0.025) == doctest::Approx(-1.959963984540054).epsilon(1e-14));
    CHECK(normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-14));
}

TEST_CASE("quantile inverts the CDF") {
    for (double p = 1e-6; p < 1.0; p += 0.0371) CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("quantile rejects levels outside (0,1)") {
    CHECK_THROWS(normal_quantile(0.0));
    CHECK_THROWS(normal_quantile(1.0));
    CHECK_THROWS(normal_quantile(-0.5));
}

}  // TEST_SUITE

TEST_SUITE("parallel") {

TEST_CASE("every index runs exactly once") {
    for (const unsigned threads : {1u, 2u, 5u}) {
        std::vector<int> hits(1000, 0);
        parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
        for (const int h : hits) REQUIRE(h == 1);
    }
}

TEST_CASE("exceptions propagate to the caller") {
    CHECK_THROWS_AS(parallel_for(50, 3,
                                 [](std::size_t i) {
                                     if (i == 17) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}

}  // TEST_SUITE
