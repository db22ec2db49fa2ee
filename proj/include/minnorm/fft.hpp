#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "minnorm/types.hpp"

namespace minnorm {

/// Unitary discrete Fourier transform plan for a fixed length n:
///   forward: y_j = (1/sqrt(n)) sum_k x_k e^{-2*pi*i*j*k/n}
/// Powers of two run the iterative radix-2 kernels; every other length runs
/// the Bluestein chirp transform over a padded power-of-two plan, so any n is
/// O(n log n). A plan is immutable after construction and safe to share
/// across threads.
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }

    void forward(Complex* x) const;
    void inverse(Complex* x) const;

private:
    void raw_pow2(Complex* x, bool conj_tw) const; // unnormalized, in place
    void raw_bluestein(Complex* x) const;

    std::size_t n_;
    bool pow2_;
    double scale_; // 1/sqrt(n)

    // radix-2 data
    std::vector<std::size_t> bitrev_;
    std::vector<Complex> stage_tw_; // per-stage twiddles, concatenated

    // Bluestein data
    std::unique_ptr<Fft> padded_;
    std::vector<Complex> chirp_;      // e^{-i*pi*k^2/n}, k < n
    std::vector<Complex> chirp_spec_; // unnormalized FFT of the padded conjugate chirp
};

/// Shared plan cache keyed by length.
std::shared_ptr<const Fft> fft_plan(std::size_t n);

/// One-shot unitary DFT / inverse DFT of a vector (any length, O(n log n)).
CVector dft(const CVector& x);
CVector idft(const CVector& x);

} // namespace minnorm
