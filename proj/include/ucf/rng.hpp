#pragma once

// Deterministic PRNG (xoshiro256** seeded via splitmix64).  The standard
// <random> distributions are implementation-defined, so all sampling here is
// hand-rolled to keep traces byte-identical across platforms.

#include <cmath>
#include <cstdint>

namespace ucf {

struct Rng {
    uint64_t s[4];

    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& v : s) {
            x += 0x9e3779b97f4a7c15ULL;
            uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            v = z ^ (z >> 31);
        }
    }

    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t next() {
        uint64_t result = rotl(s[1] * 5, 7) * 9;
        uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
    bool coin(double p = 0.5) { return uniform() < p; }
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
};

}  // namespace ucf
