#include "minnorm/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "minnorm/errors.hpp"
#include "minnorm/solver.hpp"

namespace minnorm {

namespace {

enum : std::uint64_t { kTagU = 21, kTagV = 22, kTagSigns = 23 };

CMatrix gaussian_matrix(RandomStream stream, Index rows, Index cols) {
    CMatrix X(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) X(i, j) = stream.complex_gaussian();
    return X;
}

// Modified Gram-Schmidt with a second projection sweep per column.
void orthonormalize_columns(CMatrix& X) {
    for (Index j = 0; j < X.cols(); ++j) {
        auto v = X.col(j);
        for (int sweep = 0; sweep < 2; ++sweep)
            for (Index i = 0; i < j; ++i) v -= X.col(i).dot(v) * X.col(i);
        const double norm = v.norm();
        if (!(norm > 0.0))
            throw std::runtime_error("orthonormalize_columns: degenerate Gaussian draw");
        v /= norm;
    }
}

double time_call(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

GeneratedInstance generate_instance(std::size_t m, std::size_t n, double kappa,
                                    RandomStream stream) {
    if (m < 2) throw std::invalid_argument("generate_instance: m must be at least 2");
    if (m >= n) throw std::invalid_argument("generate_instance: need m < n");
    if (!(kappa >= 1.0)) throw std::invalid_argument("generate_instance: kappa must be >= 1");

    CMatrix U = gaussian_matrix(stream.substream(kTagU), static_cast<Index>(m),
                                static_cast<Index>(m));
    orthonormalize_columns(U);
    CMatrix V = gaussian_matrix(stream.substream(kTagV), static_cast<Index>(n),
                                static_cast<Index>(m));
    orthonormalize_columns(V);

    RVector sigma(static_cast<Index>(m));
    for (std::size_t j = 0; j < m; ++j)
        sigma[static_cast<Index>(j)] = std::pow(kappa, -double(j) / double(m - 1));

    GeneratedInstance inst;
    inst.kappa = kappa;
    inst.A = (U * sigma.asDiagonal()) * V.adjoint();

    RandomStream signs = stream.substream(kTagSigns);
    CVector weights(static_cast<Index>(m));
    const double scale = 1.0 / std::sqrt(double(m));
    for (Index j = 0; j < weights.size(); ++j) weights[j] = signs.sign() * scale;
    inst.p_true = V * weights;
    inst.b = inst.A * inst.p_true;
    return inst;
}

double normalized_error(const CVector& x, const CVector& p_true, double kappa) {
    const double pnorm = p_true.norm();
    if (!(pnorm > 0.0)) throw std::invalid_argument("normalized_error: p_true must be nonzero");
    return (x - p_true).norm() / (kappa * pnorm);
}

double bench_epsilon(double kappa, std::size_t m, std::size_t l, double alpha) {
    return 1e-14 * kappa * std::sqrt(alpha * double(m) / double(l));
}

std::vector<BenchRow> run_benchmark(const std::vector<GridPoint>& grid, const BenchOptions& opt) {
    std::vector<BenchRow> rows;
    rows.reserve(grid.size());
    const RandomStream root(opt.base_seed);
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const GridPoint& g = grid[idx];
        BenchRow row;
        row.m = g.m;
        row.n = g.n;
        row.l = g.l;
        try {
            if (!(g.m < g.l && g.l < g.n))
                throw ConfigError("grid row needs m < l < n");
            if (opt.trials < 1) throw ConfigError("trials must be at least 1");
            const GeneratedInstance gen =
                generate_instance(g.m, g.n, opt.kappa, root.substream(100 + idx));
            const ProblemInstance inst{gen.A, gen.b};

            CVector x0;
            row.t0 = time_call([&] { x0 = solve_classical(inst); });
            row.eps0 = normalized_error(x0, gen.p_true, gen.kappa);

            SolverConfig cfg;
            cfg.sketch_size = g.l;
            cfg.alpha = 4.0;
            cfg.epsilon = bench_epsilon(gen.kappa, g.m, g.l, cfg.alpha);
            double total = 0.0;
            for (std::size_t trial = 0; trial < opt.trials; ++trial) {
                cfg.seed = root.derive_seed(1000 * (idx + 1) + trial);
                SolveReport rep;
                total += time_call([&] { rep = solve_randomized(inst, cfg); });
                row.epsr = std::max(row.epsr, normalized_error(rep.x, gen.p_true, gen.kappa));
            }
            row.tr = total / double(opt.trials);
            row.ratio = row.tr > 0.0 ? row.t0 / row.tr : 0.0;
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "m,n,l,t0,tr,ratio,eps0,epsr\n";
    char line[256];
    for (const BenchRow& r : rows) {
        if (!r.ok) continue;
        std::snprintf(line, sizeof(line), "%zu,%zu,%zu,%.4e,%.4e,%.3f,%.3e,%.3e\n", r.m, r.n, r.l,
                      r.t0, r.tr, r.ratio, r.eps0, r.epsr);
        out << line;
    }
}

} // namespace minnorm
