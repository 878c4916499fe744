#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace csopt {

// Deterministic random source. std::mt19937_64 output is fully specified by the
// standard, but the std distributions are not, so all transforms are done here by
// hand to keep generated files byte-identical for a given seed on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Derive an independent stream from (seed, streamId) so the generator pipeline
    // can hand isolated sub-generators to each stage.
    static Rng stream(std::uint64_t seed, std::uint64_t streamId) {
        return Rng(splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (streamId + 1))));
    }

    std::uint64_t raw() { return eng_(); }

    // Uniform on [0, 1)
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1) — never returns an exact endpoint (safe for log/log-log).
    double uniformOpen01() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Integer in [0, n)
    int below(int n) {
        if (n <= 0) throw std::invalid_argument("Rng::below: n must be positive");
        // modulo bias is < 2^-40 for the n used here; acceptable and deterministic
        return static_cast<int>(eng_() % static_cast<std::uint64_t>(n));
    }

    // Index draw from nonnegative weights (need not be normalized).
    int categorical(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw std::invalid_argument("Rng::categorical: negative weight");
            total += w;
        }
        if (total <= 0.0) throw std::invalid_argument("Rng::categorical: zero total weight");
        double u = uniform01() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }

    // Gumbel with the given location and scale via inverse CDF.
    double gumbel(double location, double scale) {
        double u = uniformOpen01();
        return location - scale * std::log(-std::log(u));
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

private:
    std::mt19937_64 eng_;
};

} // namespace csopt
