#include "minnorm/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "minnorm/kernels.hpp"

namespace minnorm {

namespace {

bool is_pow2(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void scale_inplace(Complex* x, std::size_t n, double a) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void conj_inplace(Complex* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::conj(x[i]);
}

} // namespace

Fft::Fft(std::size_t n) : n_(n), pow2_(is_pow2(n)), scale_(n ? 1.0 / std::sqrt(double(n)) : 1.0) {
    if (n == 0) throw std::invalid_argument("Fft: length must be positive");
    if (n == 1) return;
    if (pow2_) {
        bitrev_.resize(n);
        bitrev_[0] = 0;
        for (std::size_t i = 1; i < n; ++i)
            bitrev_[i] = (bitrev_[i >> 1] >> 1) | ((i & 1) ? n >> 1 : 0);
        stage_tw_.reserve(n - 1);
        for (std::size_t gap = 1; gap < n; gap <<= 1)
            for (std::size_t j = 0; j < gap; ++j)
                stage_tw_.push_back(std::polar(1.0, -std::numbers::pi * double(j) / double(gap)));
        return;
    }
    // Bluestein: y_j = w_j * sum_k (x_k w_k) conj(w_{j-k}) with w_t = e^{-i*pi*t^2/n},
    // evaluated as a circular convolution of padded power-of-two length.
    padded_ = std::make_unique<Fft>(next_pow2(2 * n - 1));
    const std::size_t np = padded_->size();
    chirp_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t t = (k * k) % (2 * n); // chirp phase has period 2n
        chirp_[k] = std::polar(1.0, -std::numbers::pi * double(t) / double(n));
    }
    std::vector<Complex> b(np, Complex(0.0, 0.0));
    b[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) b[k] = b[np - k] = std::conj(chirp_[k]);
    padded_->raw_pow2(b.data(), false);
    chirp_spec_ = std::move(b);
}

void Fft::raw_pow2(Complex* x, bool conj_tw) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j) std::swap(x[i], x[j]);
    }
    const auto& ops = kernels::active();
    const Complex* tw = stage_tw_.data();
    for (std::size_t gap = 1; gap < n_; gap <<= 1) {
        ops.fft_stage(x, tw, n_, gap, conj_tw);
        tw += gap;
    }
}

void Fft::raw_bluestein(Complex* x) const {
    const auto& ops = kernels::active();
    const std::size_t np = padded_->size();
    std::vector<Complex> a(np, Complex(0.0, 0.0));
    ops.cmul(a.data(), x, chirp_.data(), n_);
    padded_->raw_pow2(a.data(), false);
    ops.cmul(a.data(), a.data(), chirp_spec_.data(), np);
    padded_->raw_pow2(a.data(), true); // unnormalized inverse
    scale_inplace(a.data(), np, 1.0 / double(np));
    ops.cmul(x, a.data(), chirp_.data(), n_);
}

void Fft::forward(Complex* x) const {
    if (n_ == 1) return;
    if (pow2_)
        raw_pow2(x, false);
    else
        raw_bluestein(x);
    scale_inplace(x, n_, scale_);
}

void Fft::inverse(Complex* x) const {
    if (n_ == 1) return;
    if (pow2_) {
        raw_pow2(x, true);
        scale_inplace(x, n_, scale_);
        return;
    }
    // F^{-1} x = conj(F conj(x)) for the unitary transform.
    conj_inplace(x, n_);
    forward(x);
    conj_inplace(x, n_);
}

std::shared_ptr<const Fft> fft_plan(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const Fft>> cache;
    std::scoped_lock lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<Fft>(n);
    return slot;
}

CVector dft(const CVector& x) {
    CVector y = x;
    fft_plan(static_cast<std::size_t>(x.size()))->forward(y.data());
    return y;
}

CVector idft(const CVector& x) {
    CVector y = x;
    fft_plan(static_cast<std::size_t>(x.size()))->inverse(y.data());
    return y;
}

} // namespace minnorm
