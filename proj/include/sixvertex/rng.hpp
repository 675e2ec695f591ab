#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "convention.hpp"

namespace sixvertex {

// mt19937_64; doubles taken from the top 53 bits so every platform draws the same values
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    double unit() { return double(g_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    cplx complex_uniform(double re_lo, double re_hi, double im_lo, double im_hi) {
        const double re = uniform(re_lo, re_hi);
        return {re, uniform(im_lo, im_hi)};
    }

private:
    std::mt19937_64 g_;
};

// each suite gets its own stream so suites compose in `all` without shifting each other's draws
inline std::uint64_t stream_seed(std::uint64_t seed, std::string_view name) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char ch : name) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return seed ^ h;
}

}  // namespace sixvertex
