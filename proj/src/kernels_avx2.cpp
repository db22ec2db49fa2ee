// AVX2+FMA variants of the complex kernels. This translation unit is compiled
// with -mavx2 -mfma; everything stays internal except the Ops table, and the
// dispatcher only hands it out after a runtime CPU check.

#include "minnorm/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace minnorm::kernels {

namespace {

// Two packed complex products: lanes hold [re0, im0, re1, im1].
inline __m256d cmul4(__m256d a, __m256d w) {
    const __m256d wr = _mm256_movedup_pd(w);
    const __m256d wi = _mm256_permute_pd(w, 0xF);
    const __m256d asw = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(wr, a, _mm256_mul_pd(wi, asw));
}

inline const double* dptr(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* dptr(Complex* p) { return reinterpret_cast<double*>(p); }

void cmul_avx2(Complex* y, const Complex* x, const Complex* d, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d a = _mm256_loadu_pd(dptr(x + i));
        const __m256d w = _mm256_loadu_pd(dptr(d + i));
        _mm256_storeu_pd(dptr(y + i), cmul4(a, w));
    }
    for (; i < n; ++i) y[i] = x[i] * d[i];
}

void cmul_conj_avx2(Complex* y, const Complex* x, const Complex* d, std::size_t n) {
    const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d a = _mm256_loadu_pd(dptr(x + i));
        const __m256d w = _mm256_xor_pd(_mm256_loadu_pd(dptr(d + i)), conj_mask);
        _mm256_storeu_pd(dptr(y + i), cmul4(a, w));
    }
    for (; i < n; ++i) y[i] = x[i] * std::conj(d[i]);
}

// Each step rewrites one adjacent complex pair; the chain itself is a
// sequential recurrence, so the vector width covers the pair, not the chain.
void rotation_chain_avx2(Complex* x, const double* cs, const double* sn, std::size_t n,
                         bool adjoint) {
    if (n < 2) return;
    if (!adjoint) {
        const __m256d neg_hi = _mm256_set_pd(-0.0, -0.0, 0.0, 0.0);
        for (std::size_t j = n - 1; j-- > 0;) {
            const __m256d v = _mm256_loadu_pd(dptr(x + j));
            const __m256d sw = _mm256_permute2f128_pd(v, v, 0x01);
            const __m256d sws = _mm256_xor_pd(sw, neg_hi); // [x[j+1], -x[j]]
            const __m256d out = _mm256_fmadd_pd(_mm256_set1_pd(cs[j]), v,
                                                _mm256_mul_pd(_mm256_set1_pd(sn[j]), sws));
            _mm256_storeu_pd(dptr(x + j), out);
        }
    } else {
        const __m256d neg_lo = _mm256_set_pd(0.0, 0.0, -0.0, -0.0);
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const __m256d v = _mm256_loadu_pd(dptr(x + j));
            const __m256d sw = _mm256_permute2f128_pd(v, v, 0x01);
            const __m256d sws = _mm256_xor_pd(sw, neg_lo); // [-x[j+1], x[j]]
            const __m256d out = _mm256_fmadd_pd(_mm256_set1_pd(cs[j]), v,
                                                _mm256_mul_pd(_mm256_set1_pd(sn[j]), sws));
            _mm256_storeu_pd(dptr(x + j), out);
        }
    }
}

void fft_stage_avx2(Complex* x, const Complex* tw, std::size_t n, std::size_t gap,
                    bool conj_tw) {
    if (gap == 1) {
        // First stage: twiddle is 1, butterflies on adjacent entries.
        for (std::size_t base = 0; base < n; base += 2) {
            const Complex u = x[base];
            const Complex v = x[base + 1];
            x[base] = u + v;
            x[base + 1] = u - v;
        }
        return;
    }
    const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    for (std::size_t base = 0; base < n; base += 2 * gap) {
        Complex* lo = x + base;
        Complex* hi = x + base + gap;
        for (std::size_t j = 0; j < gap; j += 2) {
            __m256d w = _mm256_loadu_pd(dptr(tw + j));
            if (conj_tw) w = _mm256_xor_pd(w, conj_mask);
            const __m256d u = _mm256_loadu_pd(dptr(lo + j));
            const __m256d v = cmul4(_mm256_loadu_pd(dptr(hi + j)), w);
            _mm256_storeu_pd(dptr(lo + j), _mm256_add_pd(u, v));
            _mm256_storeu_pd(dptr(hi + j), _mm256_sub_pd(u, v));
        }
    }
}

} // namespace

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Ops& avx2_ops() {
    static const Ops ops{cmul_avx2, cmul_conj_avx2, rotation_chain_avx2, fft_stage_avx2, "avx2"};
    return ops;
}

} // namespace minnorm::kernels

#endif // x86-64
