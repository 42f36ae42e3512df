#pragma once

#include <cstdint>
#include <vector>

namespace udg {

/// SplitMix64 (Steele, Lea, Flood 2014). Used everywhere a random stream is
/// needed so that generated instances and seeded orders are identical across
/// platforms and standard library implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Unbiased uniform draw from [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t excess = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
        const std::uint64_t limit = UINT64_MAX - excess;
        std::uint64_t x;
        do {
            x = next();
        } while (x > limit);
        return x % n;
    }

    /// Uniform draw from the closed range [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::uint64_t state_;
};

/// In-place Fisher-Yates shuffle driven by SplitMix64.
template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace udg
