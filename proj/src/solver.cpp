#include "minnorm/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "minnorm/errors.hpp"
#include "minnorm/lsq.hpp"
#include "minnorm/srft.hpp"

namespace minnorm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Substream tags for the two transform realizations.
enum : std::uint64_t { kTagOuterSrft = 11, kTagLsq = 12 };

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t deficient_count(const CMatrix& R, std::size_t rows) {
    double dmax = 0.0;
    for (Index j = 0; j < R.cols(); ++j) dmax = std::max(dmax, std::abs(R(j, j)));
    const double threshold = double(rows) * kEps * dmax;
    std::size_t count = 0;
    for (Index j = 0; j < R.cols(); ++j)
        if (std::abs(R(j, j)) < threshold || R(j, j) == Complex(0.0, 0.0)) ++count;
    return count;
}

} // namespace

void ProblemInstance::validate() const {
    const Index rows = A.rows();
    const Index cols = A.cols();
    if (rows < 1 || rows >= cols)
        throw DimensionError("problem must be underdetermined: 1 <= m < n, got m=" +
                             std::to_string(rows) + ", n=" + std::to_string(cols));
    if (b.size() != rows)
        throw DimensionError("right-hand side length " + std::to_string(b.size()) +
                             " does not match m=" + std::to_string(rows));
    if (!A.allFinite() || !b.allFinite())
        throw DimensionError("matrix and right-hand side entries must be finite");
}

SolveReport solve_randomized(const ProblemInstance& inst, const SolverConfig& cfg) {
    inst.validate();
    const std::size_t m = inst.m();
    const std::size_t n = inst.n();
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw ConfigError("epsilon must lie in (0, 1)");
    if (!(cfg.alpha > 1.0)) throw ConfigError("alpha must exceed 1");
    const std::size_t l = cfg.sketch_size.value_or(4 * m);
    if (l <= m || l >= n)
        throw ConfigError("sketch size l=" + std::to_string(l) + " must satisfy m < l < n (m=" +
                          std::to_string(m) + ", n=" + std::to_string(n) +
                          "); this system is outside the randomized solver's regime - use the "
                          "classical solver instead");

    SolveReport report;
    report.sketch_size = l;
    report.lsq_tau = cfg.epsilon * cfg.epsilon * double(l) / (cfg.alpha * double(n));

    if (inst.b.isZero(0.0)) {
        // Minimal-norm solution of A x = 0 is x = 0.
        report.x = CVector::Zero(static_cast<Index>(n));
        if (cfg.capture_c) report.c = CVector::Zero(static_cast<Index>(n));
        return report;
    }

    const RandomStream root(cfg.seed);
    const CMatrix B = inst.A.adjoint(); // n-by-m, shared by Steps 1, 4, 5

    // Step 1: S = T A*.
    auto t0 = std::chrono::steady_clock::now();
    const SrftOperator T = build_srft(l, n, root.substream(kTagOuterSrft), cfg.sampling);
    const CMatrix S = T.apply_to_columns(B);
    report.step_seconds[0] = seconds_since(t0);

    // Step 2: minimal-norm z solving S* z = b, via QR of the tall sketch.
    t0 = std::chrono::steady_clock::now();
    const Eigen::HouseholderQR<CMatrix> qr(S);
    const CMatrix R = qr.matrixQR().topRows(static_cast<Index>(m));
    if (const std::size_t bad = deficient_count(R, l); bad > 0)
        throw RankDeficiencyError(
            "sketch S = T A* lost rank (" + std::to_string(bad) +
                " dependent columns); the problem matrix is rank deficient",
            bad);
    CVector z = CVector::Zero(static_cast<Index>(l));
    z.head(static_cast<Index>(m)) =
        R.triangularView<Eigen::Upper>().adjoint().solve(inst.b);
    z = qr.householderQ() * z;
    report.step_seconds[1] = seconds_since(t0);

    // Step 3: c = T* z with the same transform realization.
    t0 = std::chrono::steady_clock::now();
    const CVector c = T.apply_adjoint(z);
    report.step_seconds[2] = seconds_since(t0);

    // Step 4: y minimizing ||A* y - c||^2 to relative excess tau.
    t0 = std::chrono::steady_clock::now();
    LsqConfig lsq;
    lsq.sketch_size = l;
    lsq.tau = report.lsq_tau;
    lsq.max_iterations = cfg.lsq_max_iterations;
    lsq.stream = root.substream(kTagLsq);
    lsq.sampling = cfg.sampling;
    const LsqSolution ls = solve_least_squares(B, c, lsq);
    report.lsq_iterations = ls.iterations;
    report.lsq_converged = ls.converged;
    report.step_seconds[3] = seconds_since(t0);

    // Step 5: x = A* y.
    t0 = std::chrono::steady_clock::now();
    report.x = B * ls.y;
    report.step_seconds[4] = seconds_since(t0);

    report.residual_norm = (inst.A * report.x - inst.b).norm();
    const double xnorm = report.x.norm();
    report.c_norm_ratio =
        xnorm > 0.0 ? c.norm() * std::sqrt(double(l) / (cfg.alpha * double(n))) / xnorm : 0.0;
    if (cfg.capture_c) report.c = c;
    return report;
}

CVector solve_classical(const ProblemInstance& inst) {
    inst.validate();
    const Index m = inst.A.rows();
    const Index n = inst.A.cols();
    if (inst.b.isZero(0.0)) return CVector::Zero(n);

    const Eigen::ColPivHouseholderQR<CMatrix> qr(inst.A.adjoint());
    const CMatrix R = qr.matrixQR().topRows(m);
    if (const std::size_t bad = deficient_count(R, static_cast<std::size_t>(n)); bad > 0)
        throw RankDeficiencyError("pivoted QR found rank deficiency (" + std::to_string(bad) +
                                      " dependent columns)",
                                  bad);
    CVector w = CVector::Zero(n);
    w.head(m) = R.triangularView<Eigen::Upper>().adjoint().solve(
        qr.colsPermutation().transpose() * inst.b);
    return qr.householderQ() * w;
}

CVector solve_svd(const ProblemInstance& inst) {
    inst.validate();
    if (inst.m() > 64 || inst.n() > 1024)
        throw std::invalid_argument("solve_svd: desk-scale reference only (m <= 64, n <= 1024)");
    const Eigen::JacobiSVD<CMatrix> svd(inst.A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const CVector coeffs =
        svd.singularValues().cwiseInverse().asDiagonal() * (svd.matrixU().adjoint() * inst.b);
    return svd.matrixV() * coeffs;
}

} // namespace minnorm
