#ifndef QLE_RANDOM_HPP
#define QLE_RANDOM_HPP

#include <cstdint>
#include <random>

namespace qle {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Per-(hypothesis, trial) seed: mix(mix(mix(base) ^ f) ^ k).
constexpr std::uint64_t split_seed(std::uint64_t base, std::uint64_t f, std::uint64_t k) noexcept {
    return splitmix64(splitmix64(splitmix64(base) ^ f) ^ k);
}

/// Single-owner random stream. Uses mt19937_64 and converts to doubles by
/// hand so the draws are identical on every standard library.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

} // namespace qle

#endif // QLE_RANDOM_HPP
