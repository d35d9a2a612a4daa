#ifndef POLYSIGN_RNG_HPP
#define POLYSIGN_RNG_HPP

#include <cstdint>

namespace polysign {

// Counter-based generator (splitmix64 applied to seed + counter).  Every
// randomized component draws through one of these so that a single 64-bit
// seed pins the whole experiment; outputs record the generator name.
class SplitMix64 {
public:
    static constexpr const char* kName = "splitmix64";

    explicit SplitMix64(std::uint64_t seed) : seed_(seed), counter_(0) {}

    static std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
        std::uint64_t z = seed + counter * 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() { return at(seed_, counter_++); }

    // uniform in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) {
        // 64-bit multiply-shift; bias is negligible for the bounds used here
        unsigned __int128 p = (unsigned __int128)next() * bound;
        return (std::uint64_t)(p >> 64);
    }

    double next_unit() { return (next() >> 11) * 0x1.0p-53; }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

} // namespace polysign

#endif
