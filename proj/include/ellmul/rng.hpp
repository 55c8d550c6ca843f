#pragma once

#include <cstdint>

namespace ellmul {

// Deterministic splitmix64 stream.  std::uniform_int_distribution is not
// pinned down by the standard, so sampling goes through below() to keep
// results identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : base_(seed), state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, n) via rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = ~0ULL - (~0ULL % n);
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % n;
    }

    // Independent child stream; depends on the seed this Rng was built
    // with, not on how much of the parent stream was consumed.
    Rng derive(std::uint64_t tag) const {
        std::uint64_t z = base_ ^ (0x632be59bd9b4e019ULL + tag * 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return Rng(z ^ (z >> 31));
    }

    std::uint64_t seed() const { return base_; }

private:
    std::uint64_t base_;
    std::uint64_t state_;
};

}  // namespace ellmul
