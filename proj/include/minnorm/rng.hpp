#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace minnorm {

/// Seedable deterministic random stream: xoshiro256++ state seeded through
/// splitmix64. The generator algorithm is fixed, so a given seed yields the
/// same draw sequence on every platform and in every build.
///
/// A stream is single-threaded. Independent streams for distinct purposes are
/// derived with substream(tag); streams derived with different tags never
/// share state with each other or with the parent.
class RandomStream {
public:
    enum class Sampling { with_replacement, without_replacement };

    static constexpr std::uint64_t kDefaultSeed = 42;

    explicit RandomStream(std::uint64_t seed = kDefaultSeed);

    std::uint64_t seed() const { return seed_; }

    /// Seed for an independent purpose-tagged stream (splitmix64 mix of the
    /// parent seed and the tag).
    std::uint64_t derive_seed(std::uint64_t tag) const;
    RandomStream substream(std::uint64_t tag) const { return RandomStream(derive_seed(tag)); }

    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01();

    /// Uniform angle in [0, 2*pi).
    double uniform_angle();

    /// e^{i*phi} with phi uniform on [0, 2*pi); |z| = 1 up to rounding.
    std::complex<double> unit_circle();

    /// Fair-coin sign, +1.0 or -1.0.
    double sign();

    /// Standard complex Gaussian: real and imaginary parts independent
    /// N(0, 1/2), so E|z|^2 = 1. Box-Muller on two uniform draws.
    std::complex<double> complex_gaussian();

    /// Unbiased integer in [0, bound); bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Uniform permutation of {0, ..., n-1} (Fisher-Yates).
    std::vector<std::size_t> permutation(std::size_t n);

    /// l indices in {0, ..., n-1}; pairwise distinct in without_replacement
    /// mode (partial Fisher-Yates), i.i.d. otherwise.
    /// Throws std::invalid_argument when l > n in without_replacement mode
    /// or when l < 1 or n < 1.
    std::vector<std::size_t> sample_indices(std::size_t l, std::size_t n, Sampling mode);

private:
    std::uint64_t seed_;
    std::uint64_t state_[4];
};

} // namespace minnorm
