#ifndef VIDMINE_RNG_HPP
#define VIDMINE_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace vidmine::rng {

// The <random> distributions are not bit-exact across standard libraries,
// so seeded runs draw through these helpers instead.

// Uniform integer in [0, n). Rejection sampling, unbiased.
inline std::size_t bounded(std::mt19937_64& gen, std::size_t n) {
    const std::uint64_t span = static_cast<std::uint64_t>(n);
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x = gen();
    while (x >= limit)
        x = gen();
    return static_cast<std::size_t>(x % span);
}

// Uniform double in [0, 1) with 53 random bits.
inline double unit_real(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Fisher-Yates shuffle driven by bounded().
template <typename T>
void shuffle(std::vector<T>& items, std::mt19937_64& gen) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = bounded(gen, i);
        std::swap(items[i - 1], items[j]);
    }
}

} // namespace vidmine::rng

#endif
