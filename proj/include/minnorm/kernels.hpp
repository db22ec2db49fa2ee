#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace minnorm::kernels {

using Complex = std::complex<double>;

/// y[i] = x[i] * d[i] (conj variant: y[i] = x[i] * conj(d[i])).
using CmulFn = void (*)(Complex* y, const Complex* x, const Complex* d, std::size_t n);

/// Chain of n-1 plane rotations on adjacent coordinate pairs.
///
/// Forward applies the rotation on pair (n-2, n-1) first and (0, 1) last,
/// each pair (j, j+1) mixed as
///   x[j]   <-  cs[j]*x[j] + sn[j]*x[j+1]
///   x[j+1] <- -sn[j]*x[j] + cs[j]*x[j+1]
/// Adjoint applies the transposed rotations in the opposite order.
using RotationChainFn =
    void (*)(Complex* x, const double* cs, const double* sn, std::size_t n, bool adjoint);

/// One radix-2 butterfly stage over the whole length-n array: for every block
/// of 2*gap entries and j in [0, gap),
///   u = x[b+j]; v = x[b+j+gap] * tw[j];  x[b+j] = u+v;  x[b+j+gap] = u-v.
/// conj_tw selects conjugated twiddles (inverse transform).
using FftStageFn =
    void (*)(Complex* x, const Complex* tw, std::size_t n, std::size_t gap, bool conj_tw);

struct Ops {
    CmulFn cmul;
    CmulFn cmul_conj;
    RotationChainFn rotation_chain;
    FftStageFn fft_stage;
    const char* name;
};

const Ops& scalar_ops();

#if defined(__x86_64__) || defined(_M_X64)
bool avx2_available();
const Ops& avx2_ops(); // only valid to run when avx2_available()
#endif

/// Active backend: best available at first use; MINNORM_KERNELS=scalar|avx2
/// overrides the detection.
const Ops& active();

/// Force a backend by name; returns false (and leaves the backend unchanged)
/// when the name is unknown or unavailable on this machine.
bool select(std::string_view name);

std::string_view active_name();

} // namespace minnorm::kernels
