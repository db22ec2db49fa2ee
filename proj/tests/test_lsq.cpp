#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "minnorm/bench.hpp"
#include "minnorm/errors.hpp"
#include "minnorm/lsq.hpp"
#include "test_support.hpp"

using namespace minnorm;
using testsupport::random_cmatrix;
using testsupport::random_cvector;

namespace {

LsqConfig config(std::size_t l, double tau, std::uint64_t seed) {
    LsqConfig cfg;
    cfg.sketch_size = l;
    cfg.tau = tau;
    cfg.stream = RandomStream(seed);
    return cfg;
}

// Tall matrix with prescribed condition number via the generator ensemble.
CMatrix conditioned_tall(std::size_t n, std::size_t m, double kappa, std::uint64_t seed) {
    return generate_instance(m, n, kappa, RandomStream(seed)).A.adjoint();
}

} // namespace

TEST_CASE("consistent systems solve to near-zero residual") {
    RandomStream s(301);
    const CMatrix B = conditioned_tall(96, 8, 10.0, 41);
    const CVector c = B * random_cvector(s, 8);
    const auto sol = solve_least_squares(B, c, config(32, 1e-12, 43));
    CHECK(sol.converged);
    CHECK((B * sol.y - c).norm() <= 1e-10 * c.norm());
}

TEST_CASE("orthonormal columns reduce to the adjoint projection") {
    RandomStream s(303);
    CMatrix B = random_cmatrix(s, 64, 6);
    const Eigen::HouseholderQR<CMatrix> qr(B);
    B = qr.householderQ() * CMatrix::Identity(64, 6);
    const CVector c = random_cvector(s, 64);
    const auto sol = solve_least_squares(B, c, config(24, 1e-14, 45));
    CHECK((sol.y - B.adjoint() * c).norm() <= 1e-10 * c.norm());
}

TEST_CASE("excess stays below tau against the dense reference") {
    RandomStream s(305);
    const CMatrix B = conditioned_tall(64, 8, 1e3, 47);
    const CVector c = random_cvector(s, 64);
    const double tau = 1e-10;
    const auto sol = solve_least_squares(B, c, config(32, tau, 49));
    const double best = (B * least_squares_qr(B, c) - c).squaredNorm();
    const double got = (B * sol.y - c).squaredNorm();
    CHECK(sol.converged);
    CHECK(got - best <= tau * best + 1e-24 * c.squaredNorm());
    CHECK(sol.achieved_excess <= tau);
}

TEST_CASE("excess contract holds across condition numbers and tolerances") {
    for (std::uint64_t trial = 0; trial < 12; ++trial) {
        RandomStream s(400 + trial);
        const std::size_t m = 2 + trial % 8;
        const std::size_t n = 16 * m;
        const double kappa = std::pow(10.0, double(trial % 7));
        const CMatrix B = conditioned_tall(n, m, kappa, 500 + trial);
        CVector c = B * random_cvector(s, m) + 0.25 * random_cvector(s, n);
        c /= c.norm();
        const double tau = std::pow(10.0, -4.0 - 4.0 * double(trial % 3));
        const auto sol = solve_least_squares(B, c, config(4 * m, tau, 600 + trial));
        const double best = (B * least_squares_qr(B, c) - c).squaredNorm();
        const double got = (B * sol.y - c).squaredNorm();
        CHECK(got - best <= tau * best + 1e-24);
    }
}

TEST_CASE("residual norms never increase") {
    RandomStream s(307);
    const CMatrix B = conditioned_tall(128, 12, 1e4, 51);
    CVector c = B * random_cvector(s, 12) + 0.5 * random_cvector(s, 128);
    const auto sol = solve_least_squares(B, c, config(48, 1e-14, 53));
    REQUIRE(sol.residual_norms.size() >= 2);
    for (std::size_t k = 1; k < sol.residual_norms.size(); ++k)
        CHECK(sol.residual_norms[k] <= sol.residual_norms[k - 1] * (1.0 + 1e-12));
}

TEST_CASE("fixed seed gives a bitwise-identical solution") {
    RandomStream s(309);
    const CMatrix B = conditioned_tall(80, 6, 1e2, 55);
    const CVector c = random_cvector(s, 80);
    const auto cfg = config(24, 1e-10, 57);
    const CVector y1 = solve_least_squares(B, c, cfg).y;
    const CVector y2 = solve_least_squares(B, c, cfg).y;
    CHECK(std::memcmp(y1.data(), y2.data(), sizeof(Complex) * y1.size()) == 0);
}

TEST_CASE("rank deficiency is detected and named") {
    RandomStream s(311);
    CMatrix B = random_cmatrix(s, 48, 5);
    B.col(4) = B.col(0); // dependent column
    const CVector c = random_cvector(s, 48);
    try {
        (void)solve_least_squares(B, c, config(20, 1e-10, 59));
        FAIL("expected RankDeficiencyError");
    } catch (const RankDeficiencyError& e) {
        CHECK(e.deficient_columns() >= 1);
    }
    CHECK_THROWS_AS((void)least_squares_qr(B, c), RankDeficiencyError);
}

TEST_CASE("iteration cap returns the best iterate unconverged") {
    RandomStream s(313);
    const CMatrix B = conditioned_tall(96, 8, 1e5, 61);
    CVector c = B * random_cvector(s, 8) + random_cvector(s, 96);
    auto cfg = config(32, 1e-30, 63); // unreachable tolerance
    cfg.max_iterations = 2;
    const auto sol = solve_least_squares(B, c, cfg);
    CHECK_FALSE(sol.converged);
    CHECK(sol.iterations == 2);
    CHECK(sol.y.allFinite());
}

TEST_CASE("bad arguments are rejected") {
    RandomStream s(315);
    const CMatrix B = random_cmatrix(s, 16, 4);
    const CVector c = random_cvector(s, 16);
    CHECK_THROWS_AS((void)solve_least_squares(B, random_cvector(s, 15), config(8, 1e-8, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)solve_least_squares(B, c, config(4, 1e-8, 1)),
                    std::invalid_argument); // sketch not larger than m
    CHECK_THROWS_AS((void)solve_least_squares(B, c, config(8, -1.0, 1)), std::invalid_argument);
    CHECK_THROWS_AS((void)solve_least_squares(CMatrix::Zero(4, 4), CVector::Zero(4),
                                              config(8, 1e-8, 1)),
                    std::invalid_argument); // not tall
}

TEST_CASE("dense reference: embedded identity and scalar projections") {
    CMatrix B = CMatrix::Zero(7, 3);
    B.topRows(3) = CMatrix::Identity(3, 3);
    RandomStream s(317);
    const CVector c = random_cvector(s, 7);
    CHECK((least_squares_qr(B, c) - c.head(3)).norm() <= 1e-14 * c.norm());

    const CMatrix b1 = testsupport::random_cmatrix(s, 9, 1);
    const CVector c1 = random_cvector(s, 9);
    const Complex want = b1.col(0).dot(c1) / b1.col(0).squaredNorm();
    CHECK(std::abs(least_squares_qr(b1, c1)[0] - want) <= 1e-13);
}

TEST_CASE("dense reference beats random perturbations") {
    RandomStream s(319);
    const CMatrix B = conditioned_tall(40, 5, 1e2, 65);
    const CVector c = random_cvector(s, 40);
    const CVector y = least_squares_qr(B, c);
    const double best = (B * y - c).norm();
    for (int probe = 0; probe < 100; ++probe) {
        const CVector w = y + 1e-3 * random_cvector(s, 5);
        CHECK(best <= (B * w - c).norm() + 1e-12);
    }
}
