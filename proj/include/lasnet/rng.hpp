#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>
#include <random>

namespace lasnet {

// Deterministic random source. The engine is std::mt19937_64 (fully specified
// by the standard) and every distribution below is implemented here rather
// than via std::*_distribution, so identical seeds give identical streams on
// every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    // Independent stream derived from (seed, stream_id); used for chains and
    // simulation replicates.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform();

    bool bernoulli(double p);

    // Uniform integer in [0, bound); bound > 0. Rejection sampling, unbiased.
    std::uint64_t uniform_below(std::uint64_t bound);

    // Standard normal (Marsaglia polar method).
    double normal();

    // Gamma(shape, 1), shape > 0 (Marsaglia-Tsang, with the shape<1 boost).
    double gamma(double shape);

    double beta(double alpha, double beta);

    std::array<double, 3> dirichlet(const std::array<double, 3>& alpha);

    // Index draw from normalized probabilities.
    std::size_t categorical(std::span<const double> probs);

    // Fisher-Yates; unbiased and reproducible.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool have_spare_normal_ = false;
};

// SplitMix64 finalizer; used for seed mixing and data fingerprints.
std::uint64_t mix_u64(std::uint64_t x);

}  // namespace lasnet
