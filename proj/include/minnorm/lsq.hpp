#pragma once

#include <cstddef>
#include <vector>

#include "minnorm/rng.hpp"
#include "minnorm/types.hpp"

namespace minnorm {

/// Configuration for the randomized overdetermined least-squares solve.
struct LsqConfig {
    std::size_t sketch_size = 0; ///< rows of the internal transform; must exceed cols(B)
    double tau = 1e-12;          ///< target relative excess of the squared residual
    std::size_t max_iterations = 300;
    RandomStream stream{RandomStream::kDefaultSeed};
    RandomStream::Sampling sampling = RandomStream::Sampling::without_replacement;
};

struct LsqSolution {
    CVector y;
    double achieved_excess = 0.0; ///< final estimated relative excess
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> residual_norms; ///< ||B y_k - c|| per iterate, non-increasing
};

/// Minimize ||B y - c||^2 over y to relative excess tau or better: sketch
/// E = T'·B with a fresh transform drawn from cfg.stream, QR-factor E, and run
/// conjugate gradients on the normal equations of the preconditioned system
/// B·R'^{-1}. Stops once the spectral bound on the excess (computed from the
/// preconditioned gradient) falls below tau, or at max_iterations (in which
/// case converged is false and the best iterate is returned).
///
/// Throws RankDeficiencyError when the sketch QR reveals numerical rank below
/// cols(B), and std::invalid_argument for inconsistent dimensions.
LsqSolution solve_least_squares(const CMatrix& B, const CVector& c, const LsqConfig& cfg);

/// Reference minimizer via dense column-pivoted Householder QR.
CVector least_squares_qr(const CMatrix& B, const CVector& c);

} // namespace minnorm
