#include "minnorm/srft.hpp"

#include <cmath>
#include <stdexcept>

#include "minnorm/kernels.hpp"

namespace minnorm {

namespace {

// Substream tags for the independently drawn parameter groups.
enum : std::uint64_t {
    kTagD = 1,
    kTagSample = 2,
    kTagTheta = 3,
    kTagThetaTilde = 4,
    kTagPerm = 5,
    kTagPermTilde = 6,
    kTagZeta = 7,
    kTagZetaTilde = 8,
};

std::vector<Complex> draw_unit_diag(RandomStream stream, std::size_t n) {
    std::vector<Complex> d(n);
    for (auto& v : d) v = stream.unit_circle();
    return d;
}

std::vector<double> draw_angles(RandomStream stream, std::size_t count) {
    std::vector<double> a(count);
    for (auto& v : a) v = stream.uniform_angle();
    return a;
}

void gather(Complex* scratch, Complex* x, const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    for (std::size_t i = 0; i < n; ++i) scratch[i] = x[perm[i]];
    std::copy(scratch, scratch + n, x);
}

void scatter(Complex* scratch, Complex* x, const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    for (std::size_t i = 0; i < n; ++i) scratch[perm[i]] = x[i];
    std::copy(scratch, scratch + n, x);
}

// H = Theta Pi Z Theta~ Pi~ Z~, applied right to left.
void apply_h_inplace(const SrftOperator& op, Complex* x, Complex* scratch) {
    const auto& ops = kernels::active();
    const std::size_t n = op.n;
    ops.cmul(x, x, op.zeta_tilde.data(), n);
    gather(scratch, x, op.perm_tilde);
    ops.rotation_chain(x, op.cos_theta_tilde.data(), op.sin_theta_tilde.data(), n, false);
    ops.cmul(x, x, op.zeta.data(), n);
    gather(scratch, x, op.perm);
    ops.rotation_chain(x, op.cos_theta.data(), op.sin_theta.data(), n, false);
}

// H* = Z~* Pi~* Theta~* Z* Pi* Theta*, applied right to left.
void apply_h_adjoint_inplace(const SrftOperator& op, Complex* x, Complex* scratch) {
    const auto& ops = kernels::active();
    const std::size_t n = op.n;
    ops.rotation_chain(x, op.cos_theta.data(), op.sin_theta.data(), n, true);
    scatter(scratch, x, op.perm);
    ops.cmul_conj(x, x, op.zeta.data(), n);
    ops.rotation_chain(x, op.cos_theta_tilde.data(), op.sin_theta_tilde.data(), n, true);
    scatter(scratch, x, op.perm_tilde);
    ops.cmul_conj(x, x, op.zeta_tilde.data(), n);
}

void check_length(const char* what, Index got, std::size_t want) {
    if (static_cast<std::size_t>(got) != want)
        throw std::invalid_argument(std::string(what) + ": length " + std::to_string(got) +
                                    ", expected " + std::to_string(want));
}

} // namespace

void SrftOperator::finalize() {
    const std::size_t chain = n >= 1 ? n - 1 : 0;
    cos_theta.resize(chain);
    sin_theta.resize(chain);
    cos_theta_tilde.resize(chain);
    sin_theta_tilde.resize(chain);
    for (std::size_t j = 0; j < chain; ++j) {
        cos_theta[j] = std::cos(theta[j]);
        sin_theta[j] = std::sin(theta[j]);
        cos_theta_tilde[j] = std::cos(theta_tilde[j]);
        sin_theta_tilde[j] = std::sin(theta_tilde[j]);
    }
    fft = fft_plan(n);
}

SrftOperator build_srft(std::size_t l, std::size_t n, RandomStream stream,
                        RandomStream::Sampling mode) {
    if (n < 2) throw std::invalid_argument("build_srft: n must be at least 2");
    if (l < 1 || l > n) throw std::invalid_argument("build_srft: need 1 <= l <= n");
    SrftOperator op;
    op.n = n;
    op.l = l;
    op.mode = mode;
    op.d = draw_unit_diag(stream.substream(kTagD), n);
    op.sample = stream.substream(kTagSample).sample_indices(l, n, mode);
    op.theta = draw_angles(stream.substream(kTagTheta), n - 1);
    op.theta_tilde = draw_angles(stream.substream(kTagThetaTilde), n - 1);
    op.perm = stream.substream(kTagPerm).permutation(n);
    op.perm_tilde = stream.substream(kTagPermTilde).permutation(n);
    op.zeta = draw_unit_diag(stream.substream(kTagZeta), n);
    op.zeta_tilde = draw_unit_diag(stream.substream(kTagZetaTilde), n);
    op.finalize();
    return op;
}

CVector SrftOperator::apply_h(const CVector& x) const {
    check_length("apply_h", x.size(), n);
    CVector y = x;
    std::vector<Complex> scratch(n);
    apply_h_inplace(*this, y.data(), scratch.data());
    return y;
}

CVector SrftOperator::apply(const CVector& x) const {
    check_length("apply", x.size(), n);
    CVector w = x;
    std::vector<Complex> scratch(n);
    apply_h_inplace(*this, w.data(), scratch.data());
    kernels::active().cmul(w.data(), w.data(), d.data(), n);
    fft->forward(w.data());
    CVector out(static_cast<Index>(l));
    for (std::size_t j = 0; j < l; ++j) out[static_cast<Index>(j)] = w[sample[j]];
    return out;
}

CVector SrftOperator::apply_adjoint(const CVector& v) const {
    check_length("apply_adjoint", v.size(), l);
    CVector w = CVector::Zero(static_cast<Index>(n));
    // S* scatters; repeated indices (with-replacement mode) accumulate.
    for (std::size_t j = 0; j < l; ++j) w[sample[j]] += v[static_cast<Index>(j)];
    fft->inverse(w.data());
    kernels::active().cmul_conj(w.data(), w.data(), d.data(), n);
    std::vector<Complex> scratch(n);
    apply_h_adjoint_inplace(*this, w.data(), scratch.data());
    return w;
}

CMatrix SrftOperator::apply_to_columns(const CMatrix& M) const {
    if (static_cast<std::size_t>(M.rows()) != n)
        throw std::invalid_argument("apply_to_columns: matrix must have n rows");
    CMatrix out(static_cast<Index>(l), M.cols());
    for (Index j = 0; j < M.cols(); ++j) out.col(j) = apply(M.col(j));
    return out;
}

CMatrix SrftOperator::materialize_dense(std::size_t max_n) const {
    if (n > max_n)
        throw std::invalid_argument("materialize_dense: n exceeds the allocation cap");
    CMatrix T(static_cast<Index>(l), static_cast<Index>(n));
    CVector e = CVector::Zero(static_cast<Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
        e[static_cast<Index>(j)] = 1.0;
        T.col(static_cast<Index>(j)) = apply(e);
        e[static_cast<Index>(j)] = 0.0;
    }
    return T;
}

} // namespace minnorm
