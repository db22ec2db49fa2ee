#include "minnorm/kernels.hpp"

namespace minnorm::kernels {

namespace {

void cmul_scalar(Complex* y, const Complex* x, const Complex* d, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * d[i];
}

void cmul_conj_scalar(Complex* y, const Complex* x, const Complex* d, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * std::conj(d[i]);
}

void rotation_chain_scalar(Complex* x, const double* cs, const double* sn, std::size_t n,
                           bool adjoint) {
    if (n < 2) return;
    if (!adjoint) {
        for (std::size_t j = n - 1; j-- > 0;) {
            const Complex a = x[j];
            const Complex b = x[j + 1];
            x[j] = cs[j] * a + sn[j] * b;
            x[j + 1] = -sn[j] * a + cs[j] * b;
        }
    } else {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const Complex a = x[j];
            const Complex b = x[j + 1];
            x[j] = cs[j] * a - sn[j] * b;
            x[j + 1] = sn[j] * a + cs[j] * b;
        }
    }
}

void fft_stage_scalar(Complex* x, const Complex* tw, std::size_t n, std::size_t gap,
                      bool conj_tw) {
    for (std::size_t base = 0; base < n; base += 2 * gap) {
        for (std::size_t j = 0; j < gap; ++j) {
            const Complex w = conj_tw ? std::conj(tw[j]) : tw[j];
            const Complex u = x[base + j];
            const Complex v = x[base + j + gap] * w;
            x[base + j] = u + v;
            x[base + j + gap] = u - v;
        }
    }
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{cmul_scalar, cmul_conj_scalar, rotation_chain_scalar, fft_stage_scalar,
                         "scalar"};
    return ops;
}

} // namespace minnorm::kernels
