#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "minnorm/fft.hpp"
#include "minnorm/srft.hpp"
#include "test_support.hpp"

using namespace minnorm;
using Sampling = RandomStream::Sampling;
using testsupport::random_cvector;

TEST_CASE("build draws the right field counts and is deterministic") {
    const auto op = build_srft(2, 2, RandomStream(5), Sampling::without_replacement);
    CHECK(op.theta.size() == 1);
    CHECK(op.theta_tilde.size() == 1);
    CHECK(op.d.size() == 2);
    CHECK(op.zeta.size() == 2);
    CHECK(op.zeta_tilde.size() == 2);
    CHECK(op.sample.size() == 2);

    const auto a = build_srft(5, 16, RandomStream(77), Sampling::without_replacement);
    const auto b = build_srft(5, 16, RandomStream(77), Sampling::without_replacement);
    CHECK(a.d == b.d);
    CHECK(a.sample == b.sample);
    CHECK(a.theta == b.theta);
    CHECK(a.perm == b.perm);
    CHECK(a.zeta_tilde == b.zeta_tilde);
}

TEST_CASE("unit-modulus and bijection invariants hold") {
    const auto op = build_srft(4, 8, RandomStream(9), Sampling::without_replacement);
    for (const auto& v : op.d) CHECK(std::abs(std::abs(v) - 1.0) <= 1e-15);
    for (const auto& v : op.zeta) CHECK(std::abs(std::abs(v) - 1.0) <= 1e-15);
    for (const auto& v : op.zeta_tilde) CHECK(std::abs(std::abs(v) - 1.0) <= 1e-15);
    auto idx = op.sample;
    std::sort(idx.begin(), idx.end());
    CHECK(std::adjacent_find(idx.begin(), idx.end()) == idx.end());
    auto p = op.perm;
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == i);
}

TEST_CASE("build rejects bad shapes") {
    CHECK_THROWS_AS(build_srft(9, 8, RandomStream(1), Sampling::without_replacement),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_srft(1, 1, RandomStream(1), Sampling::without_replacement),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_srft(0, 8, RandomStream(1), Sampling::without_replacement),
                    std::invalid_argument);
}

TEST_CASE("identity parameters collapse H to the identity and T to the DFT") {
    const std::size_t n = 8;
    const auto op = testsupport::trivial_srft(n, n);
    RandomStream s(11);
    const CVector x = random_cvector(s, n);
    CHECK((op.apply_h(x) - x).norm() == 0.0);
    CHECK((op.apply(x) - dft(x)).norm() <= 1e-14 * x.norm());
    const CVector v = random_cvector(s, n);
    CHECK((op.apply_adjoint(v) - idft(v)).norm() <= 1e-14 * v.norm());
}

TEST_CASE("H is unitary for random operators") {
    RandomStream s(13);
    for (std::size_t n : {2u, 3u, 17u, 64u, 1000u}) {
        const auto op = build_srft(1, n, s.substream(n), Sampling::without_replacement);
        const CVector x = random_cvector(s, n);
        const CVector hx = op.apply_h(x);
        CHECK(std::abs(hx.norm() - x.norm()) <= 1e-12 * x.norm());
    }
}

TEST_CASE("small H matches the explicit product of its six factors") {
    RandomStream s(17);
    for (std::uint64_t rep = 0; rep < 20; ++rep) {
        const auto op = build_srft(2, 3, s.substream(rep), Sampling::without_replacement);
        const CMatrix H = testsupport::dense_h_matrix(op);
        const CVector x = random_cvector(s, 3);
        CHECK((op.apply_h(x) - H * x).norm() <= 1e-13 * x.norm());
    }
}

TEST_CASE("fast apply matches the dense factor-product matrix") {
    RandomStream s(19);
    for (auto mode : {Sampling::without_replacement, Sampling::with_replacement}) {
        const auto op = build_srft(3, 8, s.substream(mode == Sampling::with_replacement), mode);
        const CMatrix T = testsupport::dense_srft_matrix(op);
        const CVector x = random_cvector(s, 8);
        CHECK((op.apply(x) - T * x).norm() <= 1e-13 * x.norm());
        const CVector v = random_cvector(s, 3);
        CHECK((op.apply_adjoint(v) - T.adjoint() * v).norm() <= 1e-13 * v.norm());
        const CMatrix M = testsupport::random_cmatrix(s, 8, 2);
        CHECK((op.apply_to_columns(M) - T * M).norm() <= 1e-13 * M.norm());
    }
}

TEST_CASE("adjoint pairing and contraction properties") {
    RandomStream s(23);
    for (std::size_t n : {6u, 32u, 100u}) {
        const std::size_t l = n / 2;
        const auto op = build_srft(l, n, s.substream(n), Sampling::without_replacement);
        const CVector x = random_cvector(s, n);
        const CVector v = random_cvector(s, l);
        const Complex lhs = op.apply(x).dot(v);
        const Complex rhs = x.dot(op.apply_adjoint(v));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * x.norm() * v.norm());
        CHECK(op.apply(x).norm() <= x.norm() * (1.0 + 1e-12));
        CHECK(std::abs(op.apply_adjoint(v).norm() - v.norm()) <= 1e-12 * v.norm());
    }
}

TEST_CASE("columnwise application is independent per column") {
    RandomStream s(29);
    const auto op = build_srft(4, 12, s.substream(1), Sampling::without_replacement);
    const CVector x = random_cvector(s, 12);
    CMatrix M(12, 2);
    M.col(0) = x;
    M.col(1) = x;
    const CMatrix Y = op.apply_to_columns(M);
    CHECK((Y.col(0) - op.apply(x)).norm() == 0.0);
    CHECK((Y.col(1) - op.apply(x)).norm() == 0.0);
    const CMatrix single = op.apply_to_columns(M.leftCols(1));
    CHECK((single.col(0) - op.apply(x)).norm() == 0.0);
}

TEST_CASE("materialized matrix: DFT case, orthonormal rows, consistency") {
    const auto trivial = testsupport::trivial_srft(6, 6);
    CHECK((trivial.materialize_dense() - testsupport::dense_dft_matrix(6)).norm() <= 1e-13);

    RandomStream s(31);
    const auto op = build_srft(5, 16, s.substream(3), Sampling::without_replacement);
    const CMatrix T = op.materialize_dense();
    const CMatrix gram = T * T.adjoint();
    CHECK((gram - CMatrix::Identity(5, 5)).norm() <= 1e-12);
    const CVector x = random_cvector(s, 16);
    CHECK((T * x - op.apply(x)).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("materialization cap and length mismatches are rejected") {
    RandomStream s(37);
    const auto op = build_srft(2, 8, s.substream(1), Sampling::without_replacement);
    CHECK_THROWS_AS(op.materialize_dense(4), std::invalid_argument);
    CHECK_THROWS_AS(op.apply(CVector::Zero(7)), std::invalid_argument);
    CHECK_THROWS_AS(op.apply_h(CVector::Zero(9)), std::invalid_argument);
    CHECK_THROWS_AS(op.apply_adjoint(CVector::Zero(3)), std::invalid_argument);
    CHECK_THROWS_AS(op.apply_to_columns(CMatrix::Zero(7, 2)), std::invalid_argument);
}

TEST_CASE("with-replacement duplicates accumulate in the adjoint") {
    auto op = testsupport::trivial_srft(2, 4);
    op.mode = Sampling::with_replacement;
    op.sample = {1, 1};
    CVector v(2);
    v << Complex(1.0, 0.0), Complex(2.0, 0.0);
    // S* v puts 3 at coordinate 1; the rest is the inverse DFT of that vector.
    CVector expect = CVector::Zero(4);
    expect[1] = Complex(3.0, 0.0);
    CHECK((op.apply_adjoint(v) - idft(expect)).norm() <= 1e-14);
}
