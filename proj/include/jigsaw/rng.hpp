#pragma once

// Deterministic random number generation and seed derivation.
//
// Everything in the toolkit that consumes randomness takes an explicit
// stream (Pcg32) or a seed. std::random distributions are avoided because
// their output is implementation-defined; the samplers here produce the
// same sequence on every platform.

#include <cstdint>
#include <cstring>
#include <cmath>
#include <string_view>
#include <vector>
#include <stdexcept>

namespace jigsaw {

// 64-bit FNV-1a. Used for seed derivation and content digests.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
    return fnv1a64(s.data(), s.size(), h);
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Global seed fan-out: module streams are derived as
//   derive_seed(global_seed, "module.purpose")
// so adding a consumer never shifts another module's stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view name) {
    std::uint64_t s = base ^ fnv1a64(name);
    return splitmix64(s);
}

// Worker/epoch stream derivation for parallel data preparation.
inline std::uint64_t derive_stream(std::uint64_t base, std::uint64_t worker, std::uint64_t epoch) {
    std::uint64_t s = base ^ (0x9e3779b97f4a7c15ull * (worker + 1)) ^ (0xc2b2ae3d27d4eb4full * (epoch + 1));
    return splitmix64(s);
}

// PCG-XSH-RR 64/32. Small, fast, reproducible.
class Pcg32 {
public:
    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0x14057b7ef767814full) {
        std::uint64_t sm = seed;
        state_ = splitmix64(sm);
        inc_ = (stream << 1u) | 1u;
        next_u32();
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ull + inc_;
        std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    std::uint64_t next_u64() {
        return (static_cast<std::uint64_t>(next_u32()) << 32) | next_u32();
    }

    // Unbiased integer in [0, bound). Lemire rejection method.
    std::uint32_t bounded(std::uint32_t bound) {
        if (bound == 0) throw std::invalid_argument("Pcg32::bounded: bound must be positive");
        std::uint64_t m = static_cast<std::uint64_t>(next_u32()) * bound;
        auto lo = static_cast<std::uint32_t>(m);
        if (lo < bound) {
            std::uint32_t t = (-bound) % bound;
            while (lo < t) {
                m = static_cast<std::uint64_t>(next_u32()) * bound;
                lo = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    // Uniform in [0, 1).
    double uniform() { return next_u32() * 0x1.0p-32; }

    // Uniform in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Standard normal via Box-Muller; second value cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0, u2 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 1e-12);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Fisher-Yates shuffle.
template <class T>
void shuffle(std::vector<T>& v, Pcg32& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = rng.bounded(static_cast<std::uint32_t>(i));
        std::swap(v[i - 1], v[j]);
    }
}

// k distinct indices drawn from [0, n), in draw order.
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Pcg32& rng) {
    if (k > n) throw std::invalid_argument("sample_without_replacement: k > n");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + rng.bounded(static_cast<std::uint32_t>(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace jigsaw
