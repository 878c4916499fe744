#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "csopt/rng.hpp"

using csopt::Rng;

namespace {
constexpr double kEuler = 0.57721566490153286;
constexpr double kPi = 3.14159265358979323846;
} // namespace

TEST_CASE("identical seeds replay identical sequences") {
    Rng a(123), b(123);
    for (int i = 0; i < 1000; ++i) CHECK(a.raw() == b.raw());
    Rng c(123), d(124);
    int differs = 0;
    for (int i = 0; i < 100; ++i) differs += c.raw() != d.raw();
    CHECK(differs > 90);
}

TEST_CASE("derived streams are independent and deterministic") {
    Rng a = Rng::stream(55, 0);
    Rng b = Rng::stream(55, 0);
    CHECK(a.raw() == b.raw());
    Rng c = Rng::stream(55, 1);
    Rng d = Rng::stream(55, 2);
    int differs = 0;
    for (int i = 0; i < 100; ++i) differs += c.raw() != d.raw();
    CHECK(differs > 90);
}

TEST_CASE("uniform01 stays in [0,1) with the right first two moments") {
    Rng rng(9);
    const int n = 200000;
    double sum = 0.0, sumSq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sumSq += u * u;
    }
    const double mean = sum / n;
    const double var = sumSq / n - mean * mean;
    // 5-sigma bands: sd(mean) = 1/sqrt(12 n)
    CHECK(std::abs(mean - 0.5) < 5.0 / std::sqrt(12.0 * n));
    CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("uniformOpen01 avoids both endpoints") {
    Rng rng(10);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniformOpen01();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("below covers its range and rejects nonpositive n") {
    Rng rng(11);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) ++counts[static_cast<std::size_t>(rng.below(7))];
    for (int c : counts) CHECK(std::abs(c - 10000) < 500); // ~5 sigma
    CHECK_THROWS_AS(rng.below(0), std::invalid_argument);
    CHECK_THROWS_AS(rng.below(-3), std::invalid_argument);
}

TEST_CASE("categorical matches its weights") {
    Rng rng(12);
    const std::vector<double> w{1.0, 3.0, 6.0};
    std::vector<int> counts(3, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(rng.categorical(w))];
    const double total = 10.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double p = w[i] / total;
        const double sd = std::sqrt(p * (1 - p) * n);
        CHECK(std::abs(counts[i] - p * n) < 5 * sd);
    }
    CHECK_THROWS_AS(rng.categorical({1.0, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(rng.categorical({0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("gumbel draws match the analytic mean and variance") {
    Rng rng(13);
    const double location = 1.5, scale = 2.0;
    const int n = 400000;
    double sum = 0.0, sumSq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gumbel(location, scale);
        sum += g;
        sumSq += g * g;
    }
    const double mean = sum / n;
    const double var = sumSq / n - mean * mean;
    const double wantMean = location + kEuler * scale;
    const double wantVar = kPi * kPi / 6.0 * scale * scale;
    CHECK(std::abs(mean - wantMean) < 0.02);
    CHECK(std::abs(var / wantVar - 1.0) < 0.02);
}

TEST_CASE("splitmix64 scrambles nearby inputs") {
    CHECK(Rng::splitmix64(0) != Rng::splitmix64(1));
    CHECK(Rng::splitmix64(1) != Rng::splitmix64(2));
    // reference value of the published algorithm for input 0
    CHECK(Rng::splitmix64(0) == 0xE220A8397B1DCDAFULL);
}
