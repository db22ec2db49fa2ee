#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "minnorm/fft.hpp"
#include "minnorm/rng.hpp"
#include "minnorm/types.hpp"

namespace minnorm {

/// Subsampled randomized Fourier transform T = S·F·D·H with
/// H = Theta·Pi·Z·Theta~·Pi~·Z~: random unit-modulus diagonals, uniform
/// permutations, and chains of n-1 random plane rotations, followed by a
/// random diagonal, the unitary DFT, and selection of l coordinates.
///
/// Only the O(n) parameterization is stored; apply/apply_adjoint run in
/// O(n log n). The operator is immutable after build and safe to apply
/// concurrently from several threads.
struct SrftOperator {
    std::size_t n = 0; ///< ambient dimension (columns)
    std::size_t l = 0; ///< output dimension (rows)
    RandomStream::Sampling mode = RandomStream::Sampling::without_replacement;

    std::vector<Complex> d;          ///< unit-modulus diagonal ahead of the DFT, size n
    std::vector<std::size_t> sample; ///< selected coordinates, size l, 0-based
    std::vector<double> theta;       ///< rotation angles, size n-1
    std::vector<double> theta_tilde;
    std::vector<std::size_t> perm; ///< permutation: (Pi x)_i = x[perm[i]]
    std::vector<std::size_t> perm_tilde;
    std::vector<Complex> zeta; ///< unit-modulus diagonal inside H, size n
    std::vector<Complex> zeta_tilde;

    // derived, filled by finalize()
    std::vector<double> cos_theta, sin_theta;
    std::vector<double> cos_theta_tilde, sin_theta_tilde;
    std::shared_ptr<const Fft> fft;

    /// Precompute rotation cosines/sines and attach the FFT plan. build_srft
    /// calls this; call it manually after filling the fields by hand.
    void finalize();

    /// y = H x (unitary), length n.
    CVector apply_h(const CVector& x) const;

    /// y = T x, length l.
    CVector apply(const CVector& x) const;

    /// y = T* v, length n. Satisfies <T x, v> = <x, T* v>.
    CVector apply_adjoint(const CVector& v) const;

    /// Result column j = T * (column j of M); M must have n rows.
    CMatrix apply_to_columns(const CMatrix& M) const;

    /// Explicit l-by-n matrix of T, built by applying T to each basis vector.
    /// Guarded by `max_n` against accidental huge allocations.
    CMatrix materialize_dense(std::size_t max_n = 2048) const;
};

/// Draw a fresh operator. All randomness comes from purpose-tagged substreams
/// of `stream`, so equal seeds give identical operators.
/// Requires 2 <= n and 1 <= l <= n.
SrftOperator build_srft(std::size_t l, std::size_t n, RandomStream stream,
                        RandomStream::Sampling mode);

} // namespace minnorm
