// Integration tests driving the installed CLI binary end to end.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#ifndef MINNORM_CLI_PATH
#error "MINNORM_CLI_PATH must point at the CLI binary"
#endif

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("minnorm_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args, const std::string& stdout_file = "/dev/null") {
    const std::string cmd =
        std::string(MINNORM_CLI_PATH) + " " + args + " > " + stdout_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("gen/solve/baseline/oracle pipeline round-trips") {
    TempDir dir;
    const std::string prefix = dir.file("inst");
    CHECK(run("gen --m 4 --n 64 --kappa 1e3 --seed 5 --out " + prefix) == 0);
    CHECK(fs::exists(prefix + "_A.mtx"));
    CHECK(fs::exists(prefix + "_b.mtx"));
    CHECK(fs::exists(prefix + "_p.mtx"));

    const std::string x = dir.file("x.mtx");
    CHECK(run("solve " + prefix + "_A.mtx " + prefix + "_b.mtx --seed 7 --epsilon 1e-8 --out " +
              x,
              dir.file("solve.json")) == 0);
    CHECK(fs::exists(x));
    const std::string report = slurp(dir.file("solve.json"));
    CHECK(report.find("\"residual_norm\"") != std::string::npos);
    CHECK(report.find("\"lsq_converged\": true") != std::string::npos);

    CHECK(run("oracle " + prefix + "_A.mtx " + prefix + "_b.mtx --residual --solution " + x,
              dir.file("res.json")) == 0);
    CHECK(slurp(dir.file("res.json")).find("\"relative_residual\"") != std::string::npos);

    const std::string xb = dir.file("xb.mtx");
    CHECK(run("baseline " + prefix + "_A.mtx " + prefix + "_b.mtx --out " + xb) == 0);
    const std::string xo = dir.file("xo.mtx");
    CHECK(run("oracle " + prefix + "_A.mtx " + prefix + "_b.mtx --out " + xo) == 0);
    CHECK(fs::exists(xb));
    CHECK(fs::exists(xo));
}

TEST_CASE("repeated seeded solves are byte-identical") {
    TempDir dir;
    const std::string prefix = dir.file("inst");
    REQUIRE(run("gen --m 3 --n 48 --seed 9 --out " + prefix) == 0);
    const std::string x1 = dir.file("x1.mtx"), x2 = dir.file("x2.mtx");
    CHECK(run("solve " + prefix + "_A.mtx " + prefix + "_b.mtx --seed 11 --out " + x1) == 0);
    CHECK(run("solve " + prefix + "_A.mtx " + prefix + "_b.mtx --seed 11 --out " + x2) == 0);
    const std::string b1 = slurp(x1);
    CHECK(!b1.empty());
    CHECK(b1 == slurp(x2));

    // different seed changes the randomized path but not the solution quality
    const std::string x3 = dir.file("x3.mtx");
    CHECK(run("solve " + prefix + "_A.mtx " + prefix + "_b.mtx --seed 12 --out " + x3) == 0);
    CHECK(slurp(x3) != b1);
}

TEST_CASE("exit codes distinguish parse, dimension, and configuration failures") {
    TempDir dir;
    const std::string bad = dir.file("bad.mtx");
    std::ofstream(bad) << "%%MatrixMarket matrix array complex general\n2 2\n1 0\nnot-a-number 0\n";
    const std::string prefix = dir.file("inst");
    REQUIRE(run("gen --m 2 --n 24 --seed 3 --out " + prefix) == 0);

    CHECK(run("solve " + bad + " " + prefix + "_b.mtx") == 2);               // parse
    CHECK(run("solve " + dir.file("missing.mtx") + " " + prefix + "_b.mtx") == 2);
    CHECK(run("baseline " + prefix + "_A.mtx " + prefix + "_A.mtx") == 3);   // b is a matrix
    const std::string small = dir.file("small");
    REQUIRE(run("gen --m 2 --n 6 --seed 3 --out " + small) == 0);
    // default l = 4m = 8 >= n = 6: outside the randomized regime
    CHECK(run("solve " + small + "_A.mtx " + small + "_b.mtx") == 4);
    CHECK(run("solve " + small + "_A.mtx " + small + "_b.mtx --sampling sometimes") == 4);
    CHECK(run("gen --m 10 --n 4 --out " + dir.file("x")) == 3);              // bad dims
    CHECK(run("totally-unknown-subcommand") == 4);
    CHECK(run("solve --unknown-flag 1") == 4);
}

TEST_CASE("bench emits the CSV header and is seed-deterministic in its errors") {
    TempDir dir;
    const std::string csv1 = dir.file("b1.csv"), csv2 = dir.file("b2.csv");
    const std::string args = "bench --grid 4:64:16,4:8:16 --trials 2 --kappa 1e3 --seed 21";
    CHECK(run(args, csv1) == 4); // second grid row is invalid -> nonzero exit
    CHECK(run(args, csv2) == 4);
    const std::string text1 = slurp(csv1);
    CHECK(text1.rfind("m,n,l,t0,tr,ratio,eps0,epsr\n", 0) == 0);
    CHECK(text1.find("4,64,16,") != std::string::npos);
    // timings differ run to run; the error columns must not
    const auto tail = [](const std::string& csv) {
        const auto pos = csv.find_last_of(',');
        return csv.substr(pos);
    };
    CHECK(tail(text1) == tail(slurp(csv2)));

    CHECK(run("bench --grid 4:64:16 --trials 1 --kappa 1 --seed 22", dir.file("b3.csv")) == 0);
}

TEST_CASE("MINNORM_SEED provides the fallback seed") {
    TempDir dir;
    const std::string prefix = dir.file("env");
    const std::string cmd = std::string("MINNORM_SEED=77 ") + MINNORM_CLI_PATH + " gen --m 2 --n 24 --out " +
                            prefix + " > " + dir.file("env.json") + " 2>/dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(slurp(dir.file("env.json")).find("\"seed\": 77") != std::string::npos);
}
