#include "minnorm/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "minnorm/bench.hpp"
#include "minnorm/kernels.hpp"
#include "minnorm/lsq.hpp"
#include "minnorm/solver.hpp"
#include "minnorm/srft.hpp"
#include "minnorm/types.hpp"

namespace minnorm {

namespace {

using Check = std::function<std::optional<std::string>()>;
using Sampling = RandomStream::Sampling;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

CVector random_cvector(RandomStream& stream, std::size_t n) {
    CVector x(static_cast<Index>(n));
    for (Index i = 0; i < x.size(); ++i) x[i] = stream.complex_gaussian();
    return x;
}

// Direct O(n^2) evaluation of the unitary DFT; the independent reference for
// the fast path.
CVector naive_dft(const CVector& x) {
    const Index n = x.size();
    CVector y = CVector::Zero(n);
    const double scale = 1.0 / std::sqrt(double(n));
    for (Index j = 0; j < n; ++j) {
        Complex acc(0.0, 0.0);
        for (Index k = 0; k < n; ++k) {
            const double phase = -2.0 * std::numbers::pi * double(j) * double(k) / double(n);
            acc += x[k] * std::polar(1.0, phase);
        }
        y[j] = scale * acc;
    }
    return y;
}

SuiteResult run_suite(const std::string& name,
                      const std::vector<std::pair<std::string, Check>>& checks,
                      std::ostream& log) {
    SuiteResult result;
    result.name = name;
    result.total = checks.size();
    for (const auto& [label, check] : checks) {
        std::optional<std::string> failure;
        try {
            failure = check();
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        if (failure)
            result.failures.push_back(label + ": " + *failure);
        else
            ++result.passed;
    }
    log << "suite " << name << ": " << result.passed << "/" << result.total << " passed\n";
    for (const auto& f : result.failures) log << "  FAIL " << f << "\n";
    return result;
}

std::vector<std::pair<std::string, Check>> rng_checks(std::uint64_t seed) {
    return {
        {"seed reproducibility",
         [seed]() -> std::optional<std::string> {
             RandomStream a(seed), b(seed);
             for (int i = 0; i < 1000; ++i)
                 if (a.next_u64() != b.next_u64()) return "u64 sequences diverged";
             RandomStream c(seed), d(seed);
             for (int i = 0; i < 100; ++i)
                 if (c.unit_circle() != d.unit_circle()) return "unit-circle sequences diverged";
             if (RandomStream(seed).permutation(257) != RandomStream(seed).permutation(257))
                 return "permutations diverged";
             return std::nullopt;
         }},
        {"unit-circle modulus",
         [seed]() -> std::optional<std::string> {
             RandomStream s(seed);
             for (int i = 0; i < 10000; ++i) {
                 const double dev = std::abs(std::abs(s.unit_circle()) - 1.0);
                 if (dev > 1e-15) return "modulus deviation " + fmt(dev);
             }
             return std::nullopt;
         }},
        {"without-replacement distinctness",
         [seed]() -> std::optional<std::string> {
             RandomStream s(seed);
             for (std::size_t n : {1u, 2u, 7u, 64u, 501u}) {
                 for (std::size_t l = 1; l <= n; l += std::max<std::size_t>(1, n / 3)) {
                     auto idx = s.sample_indices(l, n, Sampling::without_replacement);
                     std::sort(idx.begin(), idx.end());
                     if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
                         return "duplicate index at l=" + std::to_string(l) +
                                ", n=" + std::to_string(n);
                     if (idx.back() >= n) return "index out of range";
                 }
             }
             return std::nullopt;
         }},
    };
}

std::vector<std::pair<std::string, Check>> kernel_checks(std::uint64_t seed) {
    return {
        {"scalar/simd equivalence",
         [seed]() -> std::optional<std::string> {
             const auto& act = kernels::active();
             const auto& ref = kernels::scalar_ops();
             if (&act == &ref) return std::nullopt; // scalar-only machine
             RandomStream s(seed);
             for (std::size_t n : {1u, 2u, 3u, 8u, 33u, 1024u}) {
                 const CVector x = random_cvector(s, n);
                 const CVector d = random_cvector(s, n);
                 CVector ya(n), yb(n);
                 act.cmul(ya.data(), x.data(), d.data(), n);
                 ref.cmul(yb.data(), x.data(), d.data(), n);
                 double dev = (ya - yb).norm();
                 act.cmul_conj(ya.data(), x.data(), d.data(), n);
                 ref.cmul_conj(yb.data(), x.data(), d.data(), n);
                 dev = std::max(dev, (ya - yb).norm());
                 if (n >= 2) {
                     std::vector<double> cs(n - 1), sn(n - 1);
                     for (std::size_t j = 0; j + 1 < n; ++j) {
                         const double t = s.uniform_angle();
                         cs[j] = std::cos(t);
                         sn[j] = std::sin(t);
                     }
                     for (bool adjoint : {false, true}) {
                         ya = x;
                         yb = x;
                         act.rotation_chain(ya.data(), cs.data(), sn.data(), n, adjoint);
                         ref.rotation_chain(yb.data(), cs.data(), sn.data(), n, adjoint);
                         dev = std::max(dev, (ya - yb).norm());
                     }
                 }
                 if (dev > 1e-13 * std::max(1.0, x.norm()))
                     return "kernel deviation " + fmt(dev) + " at n=" + std::to_string(n);
             }
             // full transforms exercise fft_stage on both backends
             for (std::size_t n : {8u, 64u, 1000u}) {
                 const CVector x = random_cvector(s, n);
                 kernels::select("scalar");
                 const CVector ys = dft(x);
                 kernels::select(act.name);
                 const CVector ya = dft(x);
                 const double dev = (ys - ya).norm();
                 if (dev > 1e-12 * x.norm())
                     return "fft deviation " + fmt(dev) + " at n=" + std::to_string(n);
             }
             return std::nullopt;
         }},
    };
}

std::vector<std::pair<std::string, Check>> srft_checks(std::uint64_t seed, bool corrupt_dft) {
    return {
        {"H unitarity",
         [seed]() -> std::optional<std::string> {
             RandomStream s(seed);
             for (std::size_t n : {2u, 3u, 17u, 64u, 1000u}) {
                 const auto op = build_srft(std::max<std::size_t>(1, n / 2), n, s.substream(n),
                                            Sampling::without_replacement);
                 const CVector x = random_cvector(s, n);
                 const double dev = std::abs(op.apply_h(x).norm() - x.norm());
                 if (dev > 1e-12 * x.norm())
                     return "norm drift " + fmt(dev) + " at n=" + std::to_string(n);
             }
             return std::nullopt;
         }},
        {"adjoint consistency",
         [seed]() -> std::optional<std::string> {
             RandomStream s(seed);
             for (std::size_t n : {5u, 16u, 37u, 128u}) {
                 const std::size_t l = n / 2 + 1;
                 for (auto mode : {Sampling::without_replacement, Sampling::with_replacement}) {
                     const auto op = build_srft(l, n, s.substream(n + (mode == Sampling::with_replacement)), mode);
                     const CVector x = random_cvector(s, n);
                     const CVector v = random_cvector(s, l);
                     const Complex lhs = op.apply(x).dot(v);
                     const Complex rhs = x.dot(op.apply_adjoint(v));
                     if (std::abs(lhs - rhs) > 1e-12 * x.norm() * v.norm())
                         return "pairing mismatch " + fmt(std::abs(lhs - rhs));
                 }
             }
             return std::nullopt;
         }},
        {"adjoint isometry (without replacement)",
         [seed]() -> std::optional<std::string> {
             RandomStream s(seed);
             for (std::size_t n : {6u, 32u, 100u}) {
                 const std::size_t l = n / 3 + 1;
                 const auto op = build_srft(l, n, s.substream(n), Sampling::without_replacement);
                 const CVector v = random_cvector(s, l);
                 const double dev = std::abs(op.apply_adjoint(v).norm() - v.norm());
                 if (dev > 1e-12 * v.norm()) return "isometry drift " + fmt(dev);
             }
             return std::nullopt;
         }},
        {"fast path equals dense path",
         [seed]() -> std::optional<std::string> {
             RandomStream s(seed);
             for (std::size_t n = 2; n <= 64; ++n) {
                 for (std::uint64_t rep = 0; rep < 3; ++rep) {
                     const std::size_t l = 1 + (n * (rep + 1)) / 4;
                     const auto op = build_srft(std::min(l, n), n, s.substream(16 * n + rep),
                                                Sampling::without_replacement);
                     const CMatrix dense = op.materialize_dense();
                     const CVector x = random_cvector(s, n);
                     const double dev = (op.apply(x) - dense * x).cwiseAbs().maxCoeff();
                     if (dev > 1e-12)
                         return "deviation " + fmt(dev) + " at n=" + std::to_string(n);
                 }
             }
             return std::nullopt;
         }},
        {"dft matches the direct formula",
         [seed, corrupt_dft]() -> std::optional<std::string> {
             RandomStream s(seed);
             for (std::size_t n = 1; n <= 40; ++n) {
                 const CVector x = random_cvector(s, n);
                 CVector fast = dft(x);
                 if (corrupt_dft) fast[0] += Complex(1e-6, 0.0); // fault-injection hook
                 const double dev = (fast - naive_dft(x)).norm();
                 if (dev > 1e-13 * std::max(1.0, x.norm()))
                     return "deviation " + fmt(dev) + " at n=" + std::to_string(n);
                 if (std::abs(fast.norm() - x.norm()) > 1e-12 * x.norm())
                     return "isometry drift at n=" + std::to_string(n);
             }
             return std::nullopt;
         }},
        {"sketched least singular value bound",
         [seed]() -> std::optional<std::string> {
             RandomStream s(seed);
             for (std::size_t m : {2u, 4u, 8u}) {
                 const std::size_t n = 64 * m;
                 const std::size_t l = 4 * m;
                 const double bound = std::sqrt(double(l) / (4.0 * double(n)));
                 std::size_t hold = 0;
                 for (std::uint64_t trial = 0; trial < 100; ++trial) {
                     RandomStream ts = s.substream(1000 * m + trial);
                     CMatrix Q(static_cast<Index>(n), static_cast<Index>(m));
                     for (Index j = 0; j < Q.cols(); ++j)
                         for (Index i = 0; i < Q.rows(); ++i) Q(i, j) = ts.complex_gaussian();
                     const Eigen::HouseholderQR<CMatrix> qr(Q);
                     const CMatrix thinQ =
                         qr.householderQ() * CMatrix::Identity(Q.rows(), Q.cols());
                     const auto op = build_srft(l, n, ts.substream(7), Sampling::without_replacement);
                     const CMatrix TQ = op.apply_to_columns(thinQ);
                     const Eigen::JacobiSVD<CMatrix> svd(TQ);
                     if (svd.singularValues().minCoeff() >= bound) ++hold;
                 }
                 if (hold < 95)
                     return "bound held only " + std::to_string(hold) + "/100 at m=" +
                            std::to_string(m);
             }
             return std::nullopt;
         }},
    };
}

LsqConfig small_lsq_config(std::size_t l, double tau, RandomStream stream) {
    LsqConfig cfg;
    cfg.sketch_size = l;
    cfg.tau = tau;
    cfg.stream = stream;
    return cfg;
}

// Tall random matrix with prescribed condition number, plus a right-hand side
// with a genuine residual component.
std::pair<CMatrix, CVector> lsq_instance(RandomStream& s, std::size_t n, std::size_t m,
                                         double kappa) {
    const GeneratedInstance gen = generate_instance(m, n, kappa, s.substream(3));
    CMatrix B = gen.A.adjoint();
    CVector c = B * random_cvector(s, m) + 0.3 * random_cvector(s, n);
    c /= c.norm();
    return {std::move(B), std::move(c)};
}

std::vector<std::pair<std::string, Check>> lsq_checks(std::uint64_t seed) {
    return {
        {"excess contract vs dense reference",
         [seed]() -> std::optional<std::string> {
             RandomStream s(seed);
             for (std::uint64_t trial = 0; trial < 20; ++trial) {
                 RandomStream ts = s.substream(trial);
                 const std::size_t m = 2 + trial % 12;
                 const std::size_t n = 16 * m + 8 * (trial % 5);
                 const double kappa = std::pow(10.0, double(trial % 7));
                 auto [B, c] = lsq_instance(ts, n, m, kappa);
                 const double tau = std::pow(10.0, -4.0 - double(trial % 3) * 4.0);
                 const auto sol =
                     solve_least_squares(B, c, small_lsq_config(4 * m, tau, ts.substream(9)));
                 const double best = (B * least_squares_qr(B, c) - c).squaredNorm();
                 const double got = (B * sol.y - c).squaredNorm();
                 if (got - best > tau * best + 1e-24)
                     return "excess " + fmt(got - best) + " above tau*min " + fmt(tau * best);
             }
             return std::nullopt;
         }},
        {"residual monotonicity",
         [seed]() -> std::optional<std::string> {
             RandomStream s(seed + 1);
             auto [B, c] = lsq_instance(s, 96, 8, 1e3);
             const auto sol =
                 solve_least_squares(B, c, small_lsq_config(32, 1e-14, s.substream(9)));
             for (std::size_t k = 1; k < sol.residual_norms.size(); ++k)
                 if (sol.residual_norms[k] >
                     sol.residual_norms[k - 1] * (1.0 + 1e-12))
                     return "residual grew at iteration " + std::to_string(k);
             return std::nullopt;
         }},
        {"seed determinism",
         [seed]() -> std::optional<std::string> {
             RandomStream s(seed + 2);
             auto [B, c] = lsq_instance(s, 80, 6, 1e2);
             const auto cfg = small_lsq_config(24, 1e-10, RandomStream(seed + 3));
             const CVector y1 = solve_least_squares(B, c, cfg).y;
             const CVector y2 = solve_least_squares(B, c, cfg).y;
             if (std::memcmp(y1.data(), y2.data(), sizeof(Complex) * y1.size()) != 0)
                 return "two identical runs differ";
             return std::nullopt;
         }},
    };
}

std::vector<std::pair<std::string, Check>> minnorm_checks(std::uint64_t seed) {
    const auto small_instance = [seed](std::uint64_t trial) {
        RandomStream ts = RandomStream(seed).substream(5000 + trial);
        const std::size_t m = 2 + trial % 7;
        const std::size_t n = m * (8 + 8 * (trial % 4));
        const double kappa = (trial % 2) ? 1e3 : 1.0;
        return generate_instance(m, n, kappa, ts);
    };
    const auto solve_small = [seed](const GeneratedInstance& gen, std::uint64_t trial,
                                    bool capture) {
        SolverConfig cfg;
        cfg.epsilon = 1e-6;
        cfg.seed = RandomStream(seed).derive_seed(9000 + trial);
        cfg.capture_c = capture;
        return solve_randomized(ProblemInstance{gen.A, gen.b}, cfg);
    };
    return {
        {"intermediate vector stays consistent (A c = b)",
         [=]() -> std::optional<std::string> {
             for (std::uint64_t trial = 0; trial < 25; ++trial) {
                 const auto gen = small_instance(trial);
                 const auto rep = solve_small(gen, trial, true);
                 const double defect = (gen.A * rep.c - gen.b).norm();
                 if (defect > 1e-10 * gen.kappa * gen.b.norm())
                     return "defect " + fmt(defect) + " at trial " + std::to_string(trial);
             }
             return std::nullopt;
         }},
        {"energy bound on ||c||",
         [=]() -> std::optional<std::string> {
             std::size_t hold = 0;
             for (std::uint64_t trial = 0; trial < 100; ++trial) {
                 const auto gen = small_instance(trial);
                 const auto rep = solve_small(gen, trial, true);
                 const CVector p = solve_svd(ProblemInstance{gen.A, gen.b});
                 const double limit = std::sqrt(4.0 * double(gen.A.cols()) /
                                                double(rep.sketch_size)) *
                                      p.norm() * (1.0 + 1e-10);
                 if (rep.c.norm() <= limit) ++hold;
             }
             if (hold < 99) return "held only " + std::to_string(hold) + "/100";
             return std::nullopt;
         }},
        {"Pythagorean identity",
         [=]() -> std::optional<std::string> {
             for (std::uint64_t trial = 0; trial < 25; ++trial) {
                 const auto gen = small_instance(trial);
                 const auto rep = solve_small(gen, trial, true);
                 const CVector p = solve_svd(ProblemInstance{gen.A, gen.b});
                 const double lhs =
                     (rep.c - p).squaredNorm() + (p - rep.x).squaredNorm();
                 const double rhs = (rep.c - rep.x).squaredNorm();
                 if (std::abs(lhs - rhs) > 1e-10 * std::max(rhs, 1e-300))
                     return "defect " + fmt(std::abs(lhs - rhs) / rhs);
             }
             return std::nullopt;
         }},
        {"solution lies in the row space",
         [=]() -> std::optional<std::string> {
             for (std::uint64_t trial = 0; trial < 10; ++trial) {
                 const auto gen = small_instance(trial);
                 const auto rep = solve_small(gen, trial, false);
                 const Eigen::JacobiSVD<CMatrix> svd(gen.A, Eigen::ComputeFullV);
                 const CMatrix null_basis = svd.matrixV().rightCols(gen.A.cols() - gen.A.rows());
                 const double overlap = (null_basis.adjoint() * rep.x).cwiseAbs().maxCoeff();
                 if (overlap > 1e-12 * rep.x.norm()) return "null-space overlap " + fmt(overlap);
             }
             return std::nullopt;
         }},
        {"accuracy vs reference solution",
         [=]() -> std::optional<std::string> {
             for (std::uint64_t trial = 0; trial < 50; ++trial) {
                 const auto gen = small_instance(trial);
                 const auto rep = solve_small(gen, trial, false);
                 const CVector p = solve_svd(ProblemInstance{gen.A, gen.b});
                 if ((rep.x - p).norm() > 1e-6 * p.norm())
                     return "missed target at trial " + std::to_string(trial);
             }
             return std::nullopt;
         }},
        {"seed determinism (bitwise)",
         [=]() -> std::optional<std::string> {
             const auto gen = small_instance(0);
             const auto r1 = solve_small(gen, 0, false);
             const auto r2 = solve_small(gen, 0, false);
             if (std::memcmp(r1.x.data(), r2.x.data(), sizeof(Complex) * r1.x.size()) != 0)
                 return "two identical runs differ";
             return std::nullopt;
         }},
    };
}

std::vector<std::pair<std::string, Check>> bench_checks(std::uint64_t seed) {
    return {
        {"generated singular values match the prescription",
         [seed]() -> std::optional<std::string> {
             for (std::uint64_t trial = 0; trial < 5; ++trial) {
                 const std::size_t m = 3 + trial;
                 const double kappa = std::pow(10.0, 2.0 + double(trial));
                 const auto gen =
                     generate_instance(m, 16 * m, kappa, RandomStream(seed).substream(trial));
                 const Eigen::JacobiSVD<CMatrix> svd(gen.A);
                 for (std::size_t j = 0; j < m; ++j) {
                     const double want = std::pow(kappa, -double(j) / double(m - 1));
                     const double got = svd.singularValues()[static_cast<Index>(j)];
                     if (std::abs(got - want) > 1e-10 * want)
                         return "sigma_" + std::to_string(j + 1) + " off by " +
                                fmt(std::abs(got - want) / want);
                 }
                 const double kappa_got = svd.singularValues().maxCoeff() /
                                          svd.singularValues().minCoeff();
                 if (std::abs(kappa_got - kappa) > 1e-8 * kappa)
                     return "condition number off";
                 if (std::abs(gen.p_true.norm() - 1.0) > 1e-12) return "p_true not unit norm";
             }
             return std::nullopt;
         }},
        {"p_true is the minimal-norm solution",
         [seed]() -> std::optional<std::string> {
             for (std::uint64_t trial = 0; trial < 5; ++trial) {
                 const auto gen = generate_instance(2 + trial, 32 + 16 * trial, 1e3,
                                                    RandomStream(seed).substream(50 + trial));
                 const CVector p = solve_svd(ProblemInstance{gen.A, gen.b});
                 if ((gen.p_true - p).norm() > 1e-9 * gen.kappa * p.norm())
                     return "mismatch " + fmt((gen.p_true - p).norm());
             }
             return std::nullopt;
         }},
        {"error monotonicity in epsilon",
         [seed]() -> std::optional<std::string> {
             for (std::uint64_t trial = 0; trial < 3; ++trial) {
                 const auto gen =
                     generate_instance(4, 128, 1e3, RandomStream(seed).substream(80 + trial));
                 const ProblemInstance inst{gen.A, gen.b};
                 SolverConfig cfg;
                 cfg.seed = RandomStream(seed).derive_seed(90 + trial);
                 cfg.epsilon = 1e-2;
                 const double loose =
                     normalized_error(solve_randomized(inst, cfg).x, gen.p_true, gen.kappa);
                 cfg.epsilon = 1e-3;
                 const double tight =
                     normalized_error(solve_randomized(inst, cfg).x, gen.p_true, gen.kappa);
                 if (tight > 10.0 * loose + 1e-18)
                     return "tightening epsilon worsened the error (" + fmt(loose) + " -> " +
                            fmt(tight) + ")";
             }
             return std::nullopt;
         }},
    };
}

} // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts, std::ostream& log) {
    std::vector<SuiteResult> results;
    results.push_back(run_suite("rng", rng_checks(opts.seed), log));
    results.push_back(run_suite("kernels", kernel_checks(opts.seed), log));
    results.push_back(run_suite("srft", srft_checks(opts.seed, opts.corrupt_dft), log));
    results.push_back(run_suite("lsq", lsq_checks(opts.seed), log));
    results.push_back(run_suite("minnorm", minnorm_checks(opts.seed), log));
    results.push_back(run_suite("bench", bench_checks(opts.seed), log));
    return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    for (const auto& r : results)
        if (r.passed != r.total) return false;
    return true;
}

} // namespace minnorm
