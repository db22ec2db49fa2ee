#include "minnorm/lsq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "minnorm/errors.hpp"
#include "minnorm/srft.hpp"

namespace minnorm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Count of R diagonal entries below the scaled rank threshold.
std::size_t deficient_count(const CMatrix& R, std::size_t rows) {
    const Index m = R.cols();
    double dmax = 0.0;
    for (Index j = 0; j < m; ++j) dmax = std::max(dmax, std::abs(R(j, j)));
    const double threshold = double(rows) * kEps * dmax;
    std::size_t count = 0;
    for (Index j = 0; j < m; ++j)
        if (std::abs(R(j, j)) < threshold || R(j, j) == Complex(0.0, 0.0)) ++count;
    return count;
}

// Largest multiplicity among the sampled indices. 1 in without-replacement
// mode; bounds sigma_max of the transform by its square root otherwise.
std::size_t max_multiplicity(std::vector<std::size_t> sample) {
    std::sort(sample.begin(), sample.end());
    std::size_t best = 1, run = 1;
    for (std::size_t i = 1; i < sample.size(); ++i) {
        run = (sample[i] == sample[i - 1]) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

} // namespace

LsqSolution solve_least_squares(const CMatrix& B, const CVector& c, const LsqConfig& cfg) {
    const std::size_t n = static_cast<std::size_t>(B.rows());
    const std::size_t m = static_cast<std::size_t>(B.cols());
    if (m < 1 || n <= m) throw std::invalid_argument("solve_least_squares: B must be tall (n > m >= 1)");
    if (static_cast<std::size_t>(c.size()) != n)
        throw std::invalid_argument("solve_least_squares: c length mismatch");
    if (cfg.sketch_size <= m || cfg.sketch_size > n)
        throw std::invalid_argument("solve_least_squares: sketch size must lie in (m, n]");
    if (!(cfg.tau > 0.0)) throw std::invalid_argument("solve_least_squares: tau must be positive");
    if (cfg.max_iterations < 1)
        throw std::invalid_argument("solve_least_squares: max_iterations must be at least 1");

    const SrftOperator sketch_op = build_srft(cfg.sketch_size, n, cfg.stream, cfg.sampling);
    const CMatrix E = sketch_op.apply_to_columns(B);

    const Eigen::HouseholderQR<CMatrix> qr(E);
    const CMatrix R = qr.matrixQR().topRows(static_cast<Index>(m));
    if (const std::size_t bad = deficient_count(R, n); bad > 0)
        throw RankDeficiencyError("solve_least_squares: sketch QR found " + std::to_string(bad) +
                                      " numerically dependent columns",
                                  bad);
    const auto Rview = R.triangularView<Eigen::Upper>();

    // CG on the normal equations of M = B R'^{-1}. With without-replacement
    // sampling the transform has orthonormal rows, so sigma_min(M) >= 1 and
    // ||M* r||^2 bounds the excess ||B y - c||^2 - min^2 from above; duplicate
    // samples weaken the bound by at most their multiplicity.
    const double dup = double(max_multiplicity(sketch_op.sample));
    const auto apply_m = [&](const CVector& u) -> CVector { return B * Rview.solve(u); };
    const auto apply_m_adj = [&](const CVector& r) -> CVector {
        return Rview.adjoint().solve(B.adjoint() * r);
    };

    LsqSolution sol;
    CVector u = CVector::Zero(static_cast<Index>(m));
    CVector r = c;
    CVector g = apply_m_adj(r);
    CVector dir = g;
    double gg = g.squaredNorm();
    const double floor2 = 1e-28 * c.squaredNorm(); // consistent-system stop
    double rr = r.squaredNorm();
    double excess_est = dup * gg;
    sol.residual_norms.push_back(std::sqrt(rr));
    sol.converged = excess_est <= cfg.tau * std::max(rr - excess_est, 0.0) || rr <= floor2;

    while (!sol.converged && sol.iterations < cfg.max_iterations && gg > 0.0) {
        const CVector q = apply_m(dir);
        const double qq = q.squaredNorm();
        if (qq == 0.0) break;
        const double step = gg / qq;
        u += step * dir;
        r -= step * q;
        rr = r.squaredNorm();
        ++sol.iterations;
        sol.residual_norms.push_back(std::sqrt(rr));
        g = apply_m_adj(r);
        const double gg_next = g.squaredNorm();
        excess_est = dup * gg_next;
        if (excess_est <= cfg.tau * std::max(rr - excess_est, 0.0) || rr <= floor2) {
            sol.converged = true;
            break;
        }
        dir = g + (gg_next / gg) * dir;
        gg = gg_next;
    }

    sol.y = Rview.solve(u);
    const double min_est = std::max(rr - excess_est, 0.0);
    sol.achieved_excess = min_est > 0.0 ? excess_est / min_est : 0.0;
    return sol;
}

CVector least_squares_qr(const CMatrix& B, const CVector& c) {
    const Index n = B.rows();
    const Index m = B.cols();
    if (n < m || m < 1) throw std::invalid_argument("least_squares_qr: B must have n >= m >= 1");
    if (c.size() != n) throw std::invalid_argument("least_squares_qr: c length mismatch");
    const Eigen::ColPivHouseholderQR<CMatrix> qr(B);
    const CMatrix R = qr.matrixQR().topRows(m);
    if (const std::size_t bad = deficient_count(R, static_cast<std::size_t>(n)); bad > 0)
        throw RankDeficiencyError("least_squares_qr: " + std::to_string(bad) +
                                      " numerically dependent columns",
                                  bad);
    const CVector qc = (qr.householderQ().adjoint() * c).head(m);
    return qr.colsPermutation() * R.triangularView<Eigen::Upper>().solve(qc);
}

} // namespace minnorm
