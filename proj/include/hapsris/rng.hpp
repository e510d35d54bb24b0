#pragma once

#include <cstdint>
#include <random>

namespace hapsris {

/// SplitMix64 finalizer. Used for every seed derivation in the project so
/// that per-run and per-stream seeds are identical on every platform.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives an independent child seed for (stream, index) from a parent seed.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
    return splitmix64(splitmix64(parent ^ splitmix64(stream)) + index);
}

// Stream tags for derive_seed.
enum class SeedStream : std::uint64_t {
    users = 1,
    ris_allocation = 2,
    kmeans = 3,
    sweep_run = 4,
};

constexpr std::uint64_t derive_seed(std::uint64_t parent, SeedStream stream,
                                    std::uint64_t index) noexcept {
    return derive_seed(parent, static_cast<std::uint64_t>(stream), index);
}

/// Repo-wide generator: std::mt19937_64 (its output sequence is fixed by the
/// standard) with hand-rolled conversions, because the std distributions are
/// implementation-defined and would break cross-platform reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), unbiased (rejection on the top range).
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace hapsris
