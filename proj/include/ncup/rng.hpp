#pragma once

#include <cstdint>
#include <string_view>

#include "ncup/mat.hpp"

namespace ncup {

inline constexpr uint64_t kDefaultSeed = 0x6e63757031ull;  // fixed, never wall clock

inline uint64_t splitmix64(uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

// Self-contained counter-style generator. A sample's stream is fully
// determined by (master seed, stream tag, sample index), so concurrent and
// serial suite runs draw identical values.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    static Rng for_sample(uint64_t master, uint64_t stream, uint64_t index) {
        uint64_t s = master;
        s ^= 0x9E3779B97F4A7C15ull + stream;
        (void)splitmix64(s);
        s ^= 0xD1B54A32D192ED03ull + index;
        (void)splitmix64(s);
        return Rng(s);
    }

    uint64_t next_u64() { return splitmix64(state_); }

    double uniform() {  // [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
    }

    double gaussian() {  // Box-Muller, one value per pair of uniforms
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    cplx cgauss() {  // standard complex Gaussian, E|z|^2 = 1
        double re = gaussian(), im = gaussian();
        return cplx(re, im) * 0.7071067811865475244;
    }

private:
    uint64_t state_;
};

}  // namespace ncup
