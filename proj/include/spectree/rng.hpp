// Self-contained deterministic RNG (splitmix64). Output is identical on
// every platform, which the byte-reproducibility guarantees rely on;
// std::uniform_int_distribution is implementation-defined and unusable here.
#pragma once

#include <cstdint>

namespace spectree {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform over [0, n), n >= 1; rejection-free modulo is fine here,
    // the bias at 64 bits is far below anything observable
    int below(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

} // namespace spectree
