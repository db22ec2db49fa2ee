#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "minnorm/errors.hpp"
#include "minnorm/matrix_market.hpp"
#include "test_support.hpp"

using namespace minnorm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("minnorm_mm_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("matrices and vectors round-trip to byte-identical files") {
    TempDir dir;
    RandomStream s(401);
    const CMatrix A = testsupport::random_cmatrix(s, 5, 3);
    const std::string f1 = dir.file("a1.mtx"), f2 = dir.file("a2.mtx");
    write_matrix_market(f1, A);
    const CMatrix back = read_matrix_market(f1);
    REQUIRE(back.rows() == 5);
    REQUIRE(back.cols() == 3);
    CHECK((back - A).norm() == 0.0); // 17 significant digits: exact
    write_matrix_market(f2, back);
    CHECK(slurp(f1) == slurp(f2));

    const CVector v = testsupport::random_cvector(s, 7);
    const std::string fv = dir.file("v.mtx");
    write_matrix_market(fv, v);
    CHECK((read_vector_market(fv) - v).norm() == 0.0);
}

TEST_CASE("header and size-line problems carry locations") {
    TempDir dir;
    const std::string f = dir.file("bad.mtx");

    spit(f, "%%MatrixMarket matrix coordinate real general\n2 2\n");
    try {
        (void)read_matrix_market(f);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }

    spit(f, "%%MatrixMarket matrix array complex general\n% comment line\n2 x\n");
    try {
        (void)read_matrix_market(f);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() >= 3);
    }
}

TEST_CASE("entry problems carry locations") {
    TempDir dir;
    const std::string f = dir.file("entries.mtx");
    spit(f, "%%MatrixMarket matrix array complex general\n2 1\n1.0 0.0\n2.0 bogus\n");
    try {
        (void)read_matrix_market(f);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(e.column() == 5);
    }

    spit(f, "%%MatrixMarket matrix array complex general\n2 1\n1.0 0.0\n");
    CHECK_THROWS_AS((void)read_matrix_market(f), ParseError);

    spit(f, "%%MatrixMarket matrix array complex general\n2 1\n1.0 0.0 9\n2.0 0.0\n");
    CHECK_THROWS_AS((void)read_matrix_market(f), ParseError);
}

TEST_CASE("comments and blank lines are skipped; case-insensitive header") {
    TempDir dir;
    const std::string f = dir.file("ok.mtx");
    spit(f,
         "%%matrixmarket MATRIX Array Complex General\n"
         "% generated by hand\n"
         "\n"
         "2 2\n"
         "1 0\n-2 0.5\n% interior comment\n0 0\n3.5 -1\n");
    const CMatrix A = read_matrix_market(f);
    CHECK(A(0, 0) == Complex(1.0, 0.0));
    CHECK(A(1, 0) == Complex(-2.0, 0.5));
    CHECK(A(0, 1) == Complex(0.0, 0.0));
    CHECK(A(1, 1) == Complex(3.5, -1.0));
}

TEST_CASE("vector readers reject matrices and missing files") {
    TempDir dir;
    const std::string f = dir.file("m.mtx");
    RandomStream s(403);
    write_matrix_market(f, testsupport::random_cmatrix(s, 3, 2));
    CHECK_THROWS_AS((void)read_vector_market(f), DimensionError);
    CHECK_THROWS_AS((void)read_matrix_market(dir.file("absent.mtx")), ParseError);
}
