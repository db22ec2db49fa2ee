#include "minnorm/rng.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace minnorm {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

// splitmix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t splitmix_next(std::uint64_t& state) {
    state += kGolden;
    return splitmix_mix(state);
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix_next(sm);
}

std::uint64_t RandomStream::derive_seed(std::uint64_t tag) const {
    return splitmix_mix(splitmix_mix(seed_ + kGolden) ^ splitmix_mix(tag + 2 * kGolden));
}

std::uint64_t RandomStream::next_u64() {
    // xoshiro256++ (Blackman, Vigna 2018).
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_angle() {
    return 2.0 * std::numbers::pi * uniform01();
}

std::complex<double> RandomStream::unit_circle() {
    const double phi = uniform_angle();
    return {std::cos(phi), std::sin(phi)};
}

double RandomStream::sign() {
    return (next_u64() >> 63) ? 1.0 : -1.0;
}

std::complex<double> RandomStream::complex_gaussian() {
    // |z|^2 ~ Exp(1), arg uniform: components are N(0, 1/2).
    const double u = 1.0 - uniform01(); // (0, 1], keeps log finite
    const double r = std::sqrt(-std::log(u));
    const double phi = uniform_angle();
    return {r * std::cos(phi), r * std::sin(phi)};
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    // Rejection below 2^64 mod bound keeps the draw unbiased.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next_u64();
        if (r >= threshold) return r % bound;
    }
}

std::vector<std::size_t> RandomStream::permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(i));
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

std::vector<std::size_t> RandomStream::sample_indices(std::size_t l, std::size_t n, Sampling mode) {
    if (l < 1 || n < 1) throw std::invalid_argument("sample_indices: l and n must be positive");
    if (mode == Sampling::without_replacement) {
        if (l > n)
            throw std::invalid_argument("sample_indices: l > n with without-replacement sampling");
        // Partial Fisher-Yates: the first l entries are a uniform sample.
        std::vector<std::size_t> pool(n);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t i = 0; i < l; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(uniform_below(n - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(l);
        return pool;
    }
    std::vector<std::size_t> out(l);
    for (auto& v : out) v = static_cast<std::size_t>(uniform_below(n));
    return out;
}

} // namespace minnorm
