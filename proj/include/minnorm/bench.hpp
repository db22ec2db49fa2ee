#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "minnorm/rng.hpp"
#include "minnorm/types.hpp"

namespace minnorm {

/// Synthetic test instance A = U Sigma V* with known exact minimal-norm
/// solution p_true (unit norm) and known condition number.
struct GeneratedInstance {
    CMatrix A;
    CVector b;
    CVector p_true;
    double kappa = 1.0;
};

/// Draw the test ensemble: U (m-by-m) and V (n-by-m) from re-orthogonalized
/// Gram-Schmidt on i.i.d. centered complex Gaussians, Sigma_jj =
/// kappa^{-(j-1)/(m-1)}, p_true = (1/sqrt(m)) sum_j s_j v_j with fair-coin
/// signs s_j, b = A p_true. Requires 2 <= m < n and kappa >= 1.
GeneratedInstance generate_instance(std::size_t m, std::size_t n, double kappa,
                                    RandomStream stream);

/// ||x - p_true|| / (kappa * ||p_true||). Throws on zero p_true.
double normalized_error(const CVector& x, const CVector& p_true, double kappa);

struct GridPoint {
    std::size_t m = 0, n = 0, l = 0;
};

struct BenchRow {
    std::size_t m = 0, n = 0, l = 0;
    double t0 = 0.0;   ///< classical solve time, seconds
    double tr = 0.0;   ///< randomized solve time, mean over trials
    double ratio = 0.0;
    double eps0 = 0.0; ///< classical normalized error
    double epsr = 0.0; ///< worst randomized normalized error over trials
    bool ok = false;
    std::string error;
};

struct BenchOptions {
    std::size_t trials = 10;
    double kappa = 1e6;
    std::uint64_t base_seed = RandomStream::kDefaultSeed;
};

/// Solver epsilon that requests Step-4 relative precision
/// (1e-14 * kappa)^2 * m / n, i.e. 1e-14 * kappa * sqrt(alpha m / l).
double bench_epsilon(double kappa, std::size_t m, std::size_t l, double alpha = 4.0);

/// One row per grid point: classical once (t0, eps0), randomized over
/// `trials` derived seeds (tr = mean time, epsr = worst error). Invalid rows
/// come back with ok=false and the error message; the run continues.
/// Deterministic errors given base_seed; times are wall-clock.
std::vector<BenchRow> run_benchmark(const std::vector<GridPoint>& grid, const BenchOptions& opt);

/// CSV with header m,n,l,t0,tr,ratio,eps0,epsr; failed rows are skipped.
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

} // namespace minnorm
