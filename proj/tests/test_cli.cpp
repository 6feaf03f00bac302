#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "bwpuzzle/cli.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using bwpuzzle::run_cli;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("bwpuzzle_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }

    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    fs::path dir;
};

const std::string kParams = "100000,100,50,5,3000,256";

const char* kSmallSweep =
    "N = 2000\nn = 20\nL = 10\nm = 2\nV = 10\nq_H = 400\ntrials = 2\nseed = 5\nA = 2,4\n";

}  // namespace

TEST_F(CliTest, GenSolveVerifyRoundTrip) {
    ASSERT_EQ(cli({"make-content", "--N", "100000", "--out", path("c.bin"), "--seed", "3"}).code, 0);
    EXPECT_EQ(fs::file_size(path("c.bin")), 12500u);
    ASSERT_EQ(cli({"gen", "--params", kParams, "--content", path("c.bin"), "--out", path("p.bin"), "--secret",
                   path("s.bin"), "--seed", "9"})
                  .code,
              0);
    const auto solved = cli({"solve", "--content", path("c.bin"), "--puzzles", path("p.bin"), "--out", path("a.bin")});
    ASSERT_EQ(solved.code, 0) << solved.err;
    EXPECT_NE(solved.out.find("solved 5 puzzles"), std::string::npos);
    const auto v = cli({"verify", "--secret", path("s.bin"), "--answers", path("a.bin")});
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("accepted (5/5 correct)"), std::string::npos);

    // Swapping two answers breaks verification.
    auto answers = slurp(path("a.bin"));
    const auto rec = answers.size() / 5;
    std::swap_ranges(answers.begin(), answers.begin() + rec, answers.begin() + rec);
    std::ofstream(path("a.bin"), std::ios::binary | std::ios::trunc) << answers;
    const auto bad = cli({"verify", "--secret", path("s.bin"), "--answers", path("a.bin")});
    EXPECT_EQ(bad.code, bwpuzzle::kExitRejected);
    EXPECT_NE(bad.out.find("rejected"), std::string::npos);
}

TEST_F(CliTest, GenIsDeterministic) {
    ASSERT_EQ(cli({"make-content", "--N", "100000", "--out", path("c.bin")}).code, 0);
    for (const char* tag : {"1", "2"})
        ASSERT_EQ(cli({"gen", "--params", kParams, "--content", path("c.bin"), "--out", path(std::string("p") + tag),
                       "--secret", path(std::string("s") + tag), "--seed", "11"})
                      .code,
                  0);
    EXPECT_EQ(slurp(path("p1")), slurp(path("p2")));
    EXPECT_EQ(slurp(path("s1")), slurp(path("s2")));
    ASSERT_EQ(cli({"gen", "--params", kParams, "--content", path("c.bin"), "--out", path("p3"), "--secret",
                   path("s3"), "--seed", "12"})
                  .code,
              0);
    EXPECT_NE(slurp(path("p1")), slurp(path("p3")));
}

TEST_F(CliTest, WrongSizeContentFails) {
    ASSERT_EQ(cli({"make-content", "--N", "99992", "--out", path("c.bin")}).code, 0);
    const auto r = cli({"gen", "--params", kParams, "--content", path("c.bin"), "--out", path("p"), "--secret",
                        path("s")});
    EXPECT_EQ(r.code, bwpuzzle::kExitData);
    EXPECT_NE(r.err.find("content file"), std::string::npos);
}

TEST_F(CliTest, MissingFileAndUsageErrors) {
    EXPECT_EQ(cli({"gen", "--params", kParams, "--content", path("none"), "--out", path("p"), "--secret", path("s")})
                  .code,
              bwpuzzle::kExitIo);
    EXPECT_EQ(cli({"gen", "--content", path("none"), "--out", path("p"), "--secret", path("s")}).code,
              bwpuzzle::kExitUsage);
    EXPECT_EQ(cli({"no-such-command"}).code, bwpuzzle::kExitUsage);
    EXPECT_EQ(cli({}).code, bwpuzzle::kExitUsage);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, SimulateDeterministicAndGolden) {
    write("sweep.cfg", kSmallSweep);
    const auto a = cli({"simulate", path("sweep.cfg")});
    const auto b = cli({"simulate", path("sweep.cfg")});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("# bwpuzzle sweep v1\nA,P,members,strategy_bits,formula_bits,bound_bits,", 0), 0u);
    EXPECT_EQ(a.out, slurp(testsupport::fixture("sweep_small.csv")));

    ASSERT_EQ(cli({"simulate", path("sweep.cfg"), "--csv", path("out.csv")}).code, 0);
    EXPECT_EQ(slurp(path("out.csv")), a.out);
}

TEST_F(CliTest, SimulateSigmaZeroGivesZeroBits) {
    write("sweep.cfg", std::string(kSmallSweep) + "sigma = 0\n");
    const auto r = cli({"simulate", path("sweep.cfg")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
        ASSERT_GE(cells.size(), 4u);
        EXPECT_EQ(std::stod(cells[3]), 0.0) << line;
        ++rows;
    }
    EXPECT_EQ(rows, 2);
}

TEST_F(CliTest, SimulateReportsInfeasibleRows) {
    write("sweep.cfg", "N = 2000\nn = 20\nL = 10\nm = 2\nV = 10\nq_H = 10\ntrials = 1\nA = 1,20\n");
    const auto r = cli({"simulate", path("sweep.cfg")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("infeasible"), std::string::npos);
    write("bad.cfg", "N = 2000\nbogus = 1\n");
    EXPECT_EQ(cli({"simulate", path("bad.cfg")}).code, bwpuzzle::kExitUsage);
}

TEST_F(CliTest, BoundsCsvAndVacuousSigma) {
    const auto r = cli({"bounds", "--A", "1,10,100", "--csv", path("b.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(slurp(path("b.csv")));
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[0], "# bwpuzzle bounds v1");
    EXPECT_EQ(lines[2].rfind("1,10,", 0), 0u);
    EXPECT_EQ(lines[4].rfind("100,1000,", 0), 0u);

    const auto v = cli({"bounds", "--sigma", "0"});
    ASSERT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("multi total           0\n"), std::string::npos);
    EXPECT_NE(v.out.find("multi raw             -"), std::string::npos);
}

TEST_F(CliTest, CheckParams) {
    const auto ok = cli({"check-params", "--N", "1e7", "--n", "1e4", "--L", "100", "--m", "1e4", "--qH", "4000",
                         "--A", "1000000"});
    EXPECT_EQ(ok.code, 0) << ok.out;
    EXPECT_NE(ok.out.find("all PASS"), std::string::npos);
    const auto bad = cli({"check-params", "--N", "1e6"});
    EXPECT_EQ(bad.code, bwpuzzle::kExitRejected);
    EXPECT_NE(bad.out.find("range_N"), std::string::npos);
}

TEST_F(CliTest, BenchRejectsShortDuration) {
    EXPECT_EQ(cli({"bench", "--duration", "0.5"}).code, bwpuzzle::kExitUsage);
}

TEST_F(CliTest, BinaryRuns) {
    const std::string cmd = std::string(BWPUZZLE_CLI) + " check-params --N 1e6 > " + path("o.txt") + " 2>&1";
    const int status = std::system(cmd.c_str());
    ASSERT_TRUE(WIFEXITED(status));
    EXPECT_EQ(WEXITSTATUS(status), 1);
    EXPECT_NE(slurp(path("o.txt")).find("range_N"), std::string::npos);
}
