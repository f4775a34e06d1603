#ifndef SVOL_RNG_HPP
#define SVOL_RNG_HPP

#include <cmath>
#include <cstdint>

namespace svol {

// splitmix64 finalizer (Vigna / Steele-Lea-Flood).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Splittable per-stream generator: stream k of a given seed is a splitmix64
// sequence whose state is derived from (seed, k) by two mixing rounds.  Streams
// are independent of thread scheduling, so parallel simulations that assign one
// stream per path are reproducible at any thread count.
class SplitRng {
public:
    SplitRng(std::uint64_t seed, std::uint64_t stream) {
        state_ = mix64(seed ^ mix64(stream ^ 0x6A09E667F3BCC909ULL));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1], safe for logs
    double next_double_pos() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal();
    double gamma(double shape, double scale);

    // exponential with mean 1
    double exponential() { return -std::log(next_double_pos()); }

private:
    std::uint64_t state_;
};

} // namespace svol

#endif
