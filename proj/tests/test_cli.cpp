#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "oracle/oracle_values.hpp"
#include "qharm/qharm.hpp"

namespace {

namespace fs = std::filesystem;
using namespace qharm;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QHARM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qharm_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }
  static std::string slurp(const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  }
  fs::path dir_;
};

TEST_F(CliTest, EvalExamples) {
  EXPECT_EQ(run("eval jv --z 0 --qbase 0.25 --v 0").out, "1\n");
  EXPECT_EQ(run("eval pochhammer --a 0.5 --q 0.5 --n 1").out, "0.5\n");
  const auto c = run("eval c_qv --q 0.5 --v 0");
  EXPECT_EQ(c.code, 0);
  EXPECT_NEAR(std::stod(c.out), oracle::c_q0p5_v0, 1e-14);
  EXPECT_NEAR(std::stod(run("eval B_qv --q 0.5 --v 0").out), oracle::B_q0p5_v0, 1e-13);
  EXPECT_NEAR(std::stod(run("eval qexp --z -2 --q 0.5").out), oracle::qexp_zm2_q0p5, 1e-15);
  EXPECT_NEAR(std::stod(run("eval gauss_kernel --x 1 --t 0.25 --q 0.5").out), oracle::gauss_x1_tq2_q0p5_v0, 1e-14);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run("eval nosuch").code, 2);
  EXPECT_EQ(run("eval qexp").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--q 1.5 eval c_qv").code, 2);
  EXPECT_EQ(run("transform " + path("missing.csv")).code, 2);
  EXPECT_EQ(run("convolve a b --route sideways").code, 2);
  EXPECT_EQ(run("verify --only no-such-check").code, 2);
}

TEST_F(CliTest, MalformedCsvExitsTwo) {
  const auto f = write("bad.csv", "n,x,re,im\n0,1,1,0\n1,0.5,oops,0\n");
  EXPECT_EQ(run("transform " + f).code, 2);
}

TEST_F(CliTest, TransformZeroAndTwice) {
  const QLattice L(0.5, -20, 60);
  const auto zero = write("zero.csv", to_csv(LatticeFunction(L)));
  const auto z = run("transform " + zero);
  EXPECT_EQ(z.code, 0);
  EXPECT_EQ(parse_csv(z.out, 0.5).sup_abs(), 0.0);

  std::mt19937_64 rng(61);
  const auto f = random_compact_function(L, rng);
  const auto in = write("f.csv", to_csv(f));
  ASSERT_EQ(run("transform " + in + " --output " + path("ff.csv")).code, 0);
  ASSERT_EQ(run("transform " + path("ff.csv") + " --output " + path("fff.csv")).code, 0);
  const auto back = parse_csv(slurp(path("fff.csv")), 0.5);
  const auto r = interior_range(back.size());
  for (std::size_t i = r.begin; i < r.end; ++i) EXPECT_NEAR(std::abs(back[i] - f[i]), 0.0, 1e-8);
  EXPECT_EQ(slurp(path("ff.csv")), run("transform " + in).out);
}

TEST_F(CliTest, ConvolveRoutesAgree) {
  const QLattice L(0.5, -20, 60);
  std::mt19937_64 rng(62);
  const auto a = write("a.csv", to_csv(random_compact_function(L, rng)));
  const auto b = write("b.csv", to_csv(random_compact_function(L, rng)));
  const auto d = parse_csv(run("convolve " + a + " " + b + " --route direct").out, 0.5);
  const auto s = parse_csv(run("convolve " + a + " " + b).out, 0.5);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(std::abs(d[i] - s[i]), 0.0, 1e-10);
}

TEST_F(CliTest, ProbeIsByteIdentical) {
  const auto a = run("probe-qv --q 0.5 --v 0 --nmin -4 --nmax 6");
  const auto b = run("probe-qv --q 0.5 --v 0 --nmin -4 --nmax 6");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_FALSE(j["negativity_detected"].get<bool>());
  EXPECT_TRUE(j.contains("min_value"));
  EXPECT_TRUE(j.contains("witness"));
}

TEST_F(CliTest, PositivityVerdicts) {
  const QParams p(0.5, 0.0);
  const TransformTable t(p, QLattice(0.5, -20, 60));
  const auto good = write("g.csv", to_csv(gauss_kernel_function(t.lattice(), 1.0, p)));
  const auto j = nlohmann::json::parse(run("positivity " + good).out);
  EXPECT_EQ(j["verdict"], "POSITIVE");
  const auto rho = LatticeFunction::from_exponents(t.lattice(), [](int n) {
    if (n == 2) return -1.0;
    return n >= 0 && n <= 6 ? 0.2 : 0.0;
  });
  const auto bad = write("b.csv", to_csv(fourier_transform(rho, t)));
  const auto k = nlohmann::json::parse(run("positivity " + bad + " --points -3,-2,-1,0,1,2,3,4,5,6,7,8,9,10").out);
  EXPECT_EQ(k["verdict"], "NEGATIVE");
  EXPECT_EQ(k["witness"].size(), 14u);
}

TEST_F(CliTest, BochnerRoundTrip) {
  const QParams p(0.5, 0.0);
  const TransformTable t(p, QLattice(0.5, -20, 60));
  const auto dens = q_gaussian(t.lattice(), 1.0, p);
  std::vector<double> d(dens.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = dens[i].real();
  const auto phi = measure_fourier_transform(QMeasure(t.lattice(), d, p), t);
  const auto in = write("phi.csv", to_csv(phi));
  const auto r = run("bochner " + in + " --levels 10 --measure " + path("m.csv"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["accepted"].get<bool>());
  EXPECT_EQ(j["levels"].size(), 10u);
  const auto m = parse_csv(slurp(path("m.csv")), 0.5);
  const auto range = interior_range(m.size());
  for (std::size_t i = range.begin; i < range.end; ++i) EXPECT_NEAR(m[i].real(), d[i], 1e-6);
}

TEST_F(CliTest, VerifyPassesAndForcedToleranceFails) {
  const auto ok = run("verify --q 0.5 --v 0");
  EXPECT_EQ(ok.code, 0);
  const auto j = nlohmann::json::parse(ok.out);
  EXPECT_EQ(j["entries"].size(), verification_registry().size());
  EXPECT_TRUE(j["all_passed"].get<bool>());

  const auto bad = run("verify --tol 1e-30 --only inversion,plancherel");
  EXPECT_EQ(bad.code, 1);
  const auto k = nlohmann::json::parse(bad.out);
  ASSERT_EQ(k["entries"].size(), 2u);
  for (const auto& e : k["entries"]) {
    EXPECT_EQ(e["status"], "fail");
    EXPECT_NE(e["reproduce"].get<std::string>().find("--only " + e["statement_id"].get<std::string>()),
              std::string::npos);
  }
}

TEST_F(CliTest, VerifySecondOrder) {
  EXPECT_EQ(run("verify --q 0.5 --v 1.5").code, 0);
}

}  // namespace
