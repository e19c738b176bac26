#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
    int status = -1;
    std::string out;
};

Result run(const std::string& args) {
    Result r;
    const std::string cmd = std::string(SETSHAPE_EXE) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("setshape-cli-" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& bytes) const {
        const auto p = path_ / name;
        std::ofstream(p, std::ios::binary) << bytes;
        return p.string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    static std::string read(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), {}};
    }

private:
    fs::path path_;
};

}  // namespace

TEST(Cli, Table1Csv) {
    const Result r = run("table1");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out,
              "alphabet_size,n,k,method,i_x_bits,i_y_bits,diff_bits,i_x_std_error,i_y_std_error\n"
              "2,2,1,exact,1.000,1.377,-0.377,,\n"
              "3,3,1,exact,2.893,2.885,0.009,,\n"
              "4,4,1,exact,5.296,5.050,0.246,,\n"
              "5,5,1,exact,8.070,7.708,0.362,,\n"
              "6,6,1,exact,11.137,10.223,0.915,,\n"
              "7,7,1,exact,14.448,13.387,1.061,,\n");
}

TEST(Cli, Table1Json) {
    const Result r = run("table1 --format json");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_TRUE(j.is_array());
    ASSERT_EQ(j.size(), 6u);
    EXPECT_EQ(j[1]["alphabet_size"], 3);
    EXPECT_NEAR(j[1]["i_x_bits"].get<double>(), 2.893, 5e-4);
}

TEST(Cli, RankAndUnrank) {
    Result r = run("rank -a 2 11");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "0\n");
    r = run("unrank -a 2 -n 2 3");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "10\n");
    for (int rank : {0, 17, 200, 728}) {
        const Result s = run("unrank -a 3 -n 6 " + std::to_string(rank));
        ASSERT_EQ(s.status, 0);
        std::string str = s.out.substr(0, s.out.size() - 1);
        EXPECT_EQ(run("rank -a 3 " + str).out, std::to_string(rank) + "\n");
    }
    EXPECT_EQ(run("unrank -a 2 -n 2 4").status, 3);
    EXPECT_EQ(run("rank -a 2 13").status, 3);
}

TEST(Cli, ShapeTextFile) {
    TempDir dir;
    const Result r = run("shape --text -a 2 -n 2 --order-k 1 " + dir.write("in.txt", "11"));
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "111");
}

TEST(Cli, UnshapeRejectsStringOutsideImage) {
    TempDir dir;
    EXPECT_EQ(run("unshape --text -a 2 -n 2 --order-k 1 " + dir.write("bad.txt", "010")).status, 3);
}

TEST(Cli, ShapeUnshapeRoundTripBinary) {
    TempDir dir;
    std::mt19937_64 rng(12);
    std::string bytes(4 * 30, '\0');
    for (auto& b : bytes) b = static_cast<char>(rng() % 5);
    const auto in = dir.write("in.bin", bytes);
    const auto mid = dir.file("mid.bin");
    const auto back = dir.file("back.bin");
    ASSERT_EQ(run("shape -a 5 -n 30 --order-k 2 -o " + mid + " " + in).status, 0);
    EXPECT_EQ(TempDir::read(mid).size(), 4u * 32u);
    ASSERT_EQ(run("unshape -a 5 -n 30 --order-k 2 -o " + back + " " + mid).status, 0);
    EXPECT_EQ(TempDir::read(back), bytes);
}

TEST(Cli, ShapeRejectsBadInput) {
    TempDir dir;
    EXPECT_EQ(run("shape --text -a 2 -n 2 " + dir.write("odd.txt", "101")).status, 3);
    EXPECT_EQ(run("shape --text -a 2 -n 2 " + dir.write("sym.txt", "12")).status, 3);
}

TEST(Cli, EncodeDecodeRoundTrip) {
    TempDir dir;
    const auto in = dir.write("in.txt", "0120120111220");
    const auto packed = dir.file("packed.bin");
    const auto out = dir.file("out.txt");
    ASSERT_EQ(run("encode --text -a 3 -o " + packed + " " + in).status, 0);
    ASSERT_EQ(run("decode --text -o " + out + " " + packed).status, 0);
    EXPECT_EQ(TempDir::read(out), "0120120111220");
    std::string bytes = TempDir::read(packed);
    bytes.resize(bytes.size() - 1);
    EXPECT_EQ(run("decode " + dir.write("cut.bin", bytes)).status, 3);
}

TEST(Cli, ResourceCapExitCode) {
    EXPECT_EQ(run("table2 -a 10 --method exact").status, 4);
}

TEST(Cli, InvalidArgumentsExitCode) {
    EXPECT_EQ(run("table2 --bogus").status, 2);
    EXPECT_EQ(run("table2 --method fast").status, 2);
    EXPECT_EQ(run("no-such-command").status, 2);
    EXPECT_EQ(run("unrank -a 2 3").status, 2);
}

TEST(Cli, Figure1Series) {
    const Result r = run("figure1");
    ASSERT_EQ(r.status, 0);
    ASSERT_EQ(r.out.rfind("rank,i_x_bits,i_y_bits\n", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 59049 + 1);
}

TEST(Cli, Table2AutoUsesBothMethods) {
    const Result exact = run("table2 -a 3 --method auto -M 1000");
    ASSERT_EQ(exact.status, 0);
    EXPECT_NE(exact.out.find("3,100,1,exact,157.044,157.034,"), std::string::npos) << exact.out;
    const Result mc = run("table2 -a 8 --method auto -M 1000 --seed 2");
    ASSERT_EQ(mc.status, 0);
    EXPECT_NE(mc.out.find("8,100,1,monte-carlo,"), std::string::npos) << mc.out;
}

TEST(Cli, CodecExperimentJson) {
    const Result r = run("codec-experiment --format json --seed 5");
    ASSERT_EQ(r.status, 0);
    const auto j = nlohmann::json::parse(r.out);
    for (const char* field : {"alphabet_size", "n", "k", "samples", "seed", "generator", "mean_bits_raw",
                              "mean_bits_shaped", "mean_emp_info_raw", "mean_emp_info_shaped", "delta_bits",
                              "bits_per_symbol_raw", "bits_per_symbol_shaped", "std_error_emp_info_raw",
                              "std_error_emp_info_shaped"})
        EXPECT_TRUE(j.contains(field)) << field;
    EXPECT_NEAR(j["mean_emp_info_raw"].get<double>(), 14.263,
                3 * j["std_error_emp_info_raw"].get<double>() + 5e-4);
    EXPECT_NEAR(j["mean_emp_info_shaped"].get<double>(), 14.136,
                3 * j["std_error_emp_info_shaped"].get<double>() + 5e-4);
    EXPECT_EQ(run("codec-experiment --format json --seed 5").out, r.out);
}

TEST(Cli, SeededOutputIndependentOfThreads) {
    const std::string cmd = "table2 --method mc -M 20000 --seed 4 -a 4";
    const Result one = run(cmd + " --threads 1");
    ASSERT_EQ(one.status, 0);
    EXPECT_EQ(run(cmd + " --threads 8").out, one.out);
}
