#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "minnorm/rng.hpp"
#include "minnorm/types.hpp"

namespace minnorm {

/// Underdetermined full-rank system A x = b with A m-by-n, m < n.
struct ProblemInstance {
    CMatrix A;
    CVector b;

    std::size_t m() const { return static_cast<std::size_t>(A.rows()); }
    std::size_t n() const { return static_cast<std::size_t>(A.cols()); }

    /// Throws DimensionError unless 1 <= m < n, b has length m, and all
    /// entries are finite.
    void validate() const;
};

struct SolverConfig {
    std::optional<std::size_t> sketch_size; ///< l; defaults to 4m
    double alpha = 4.0;
    double epsilon = 1e-6; ///< target relative precision, in (0, 1)
    std::uint64_t seed = RandomStream::kDefaultSeed;
    RandomStream::Sampling sampling = RandomStream::Sampling::without_replacement;
    std::size_t lsq_max_iterations = 300;
    bool capture_c = false; ///< keep the Step-3 vector in the report (diagnostics)
};

struct SolveReport {
    CVector x;
    std::array<double, 5> step_seconds{};
    double c_norm_ratio = 0.0; ///< ||c|| * sqrt(l/(alpha n)) / ||x||, about 1 when healthy
    double residual_norm = 0.0;
    std::size_t lsq_iterations = 0;
    bool lsq_converged = true;
    std::size_t sketch_size = 0; ///< the l actually used
    double lsq_tau = 0.0;        ///< relative precision requested of Step 4
    CVector c;                   ///< filled only when SolverConfig::capture_c
};

/// Five-step randomized minimal-norm solve: sketch S = T A*, minimal-norm
/// z from S* z = b via QR, c = T* z (same transform realization), y from the
/// randomized least-squares subsolver at tau = eps^2 l / (alpha n), x = A* y.
///
/// Throws ConfigError when the (defaulted) sketch size falls outside (m, n)
/// — use solve_classical in that regime — and RankDeficiencyError when a
/// sketch loses rank.
SolveReport solve_randomized(const ProblemInstance& inst, const SolverConfig& cfg);

/// Classical baseline: column-pivoted Householder QR of A*, minimal-norm
/// solution x = Q (R*)^{-1} P* b.
CVector solve_classical(const ProblemInstance& inst);

/// Reference pseudoinverse solution via full SVD. Desk-scale only
/// (m <= 64, n <= 1024); throws std::invalid_argument beyond the caps.
CVector solve_svd(const ProblemInstance& inst);

} // namespace minnorm
