#pragma once

#include <cstdint>

namespace lpdescent {

/// SplitMix64. This is the single PRNG used anywhere the library needs
/// randomness, so that a seed replays bit-identically on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    int pick_sign() { return (next() & 1) ? 1 : -1; }

    bool chance_half() { return (next() & 1) != 0; }

    /// Derive an independent stream, e.g. one per test case.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 g(seed ^ (0xd1342543de82ef95ULL * (stream + 1)));
        g.next();
        return g.next();
    }

private:
    std::uint64_t state_;
};

} // namespace lpdescent
