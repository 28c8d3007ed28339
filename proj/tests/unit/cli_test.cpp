#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bhlab/io.hpp"
#include "bhlab/randforms.hpp"

namespace bhlab {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "bhlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(BHLAB_TEST_TMPDIR) /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::create_directories(dir_);
  }
  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  fs::path dir_;
};

TEST_F(CliTest, CheckCounterexample) {
  const auto r = run({"check", "1", "18/10", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("INADMISSIBLE witness={1,2} deficit=1/18"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("full_sum=17/9"), std::string::npos) << r.out;
  const auto brute = run({"check", "--brute", "1", "18/10", "3"});
  EXPECT_NE(brute.out.find("INADMISSIBLE witness={1,2} deficit=1/18"), std::string::npos);
}

TEST_F(CliTest, CheckAdmissibleAndClassical) {
  EXPECT_NE(run({"check", "2", "2", "2", "2"}).out.find("ADMISSIBLE"), std::string::npos);
  EXPECT_EQ(run({"check", "2", "2", "2", "2"}).out.find("INADMISSIBLE"), std::string::npos);
  const auto bh = run({"check", "--bh", "3"});
  EXPECT_EQ(bh.code, 0);
  EXPECT_NE(bh.out.find("(3/2,3/2,3/2)"), std::string::npos);
  EXPECT_NE(bh.out.find("ADMISSIBLE deficit=0\n"), std::string::npos);
}

TEST_F(CliTest, CheckJsonAndPartition) {
  const auto r = run({"check", "--json", "--partition", "2", "1", "--", "4/3", "4/3"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find(R"("partition":[2,1],"m":3)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find(R"("admissible":true)"), std::string::npos);
  EXPECT_EQ(run({"check", "--partition", "2", "--", "1", "1"}).code, cli::kExitValidation);
}

TEST_F(CliTest, CheckValidationErrors) {
  EXPECT_EQ(run({"check", "0", "2"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"check", "abc"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"check"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"check", "--bh", "0"}).code, cli::kExitValidation);
  EXPECT_EQ(run({}).code, cli::kExitValidation);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, CheckBruteCapacity) {
  std::vector<std::string> args{"check", "--brute"};
  for (int i = 0; i < 30; ++i) args.push_back("2");
  EXPECT_EQ(run(args).code, cli::kExitCapacity);
}

TEST_F(CliTest, OpnormExamples) {
  const auto lw = write("lw.json", tensor_to_json(littlewood()));
  const auto r = run({"opnorm", "--in", lw, "--mode", "exact"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{\"lower\":2,\"upper\":2,\"exact\":true}\n");

  const auto zero = write("zero.json", tensor_to_json(CoefTensor::zeros(2, 3)));
  EXPECT_EQ(run({"opnorm", "--in", zero}).out, "{\"lower\":0,\"upper\":0,\"exact\":true}\n");

  const auto lin = write("lin.json", R"({"m":1,"n":3,"field":"real","entries":[1,-2,3]})");
  EXPECT_EQ(run({"opnorm", "--in", lin}).out, "{\"lower\":6,\"upper\":6,\"exact\":true}\n");

  const auto cert = run({"opnorm", "--in", lw, "--certificate"});
  EXPECT_NE(cert.out.find("\"certificate\""), std::string::npos);

  const auto sw = run({"opnorm", "--in", lw, "--mode", "sandwich", "--seed", "4"});
  EXPECT_EQ(sw.code, 0);
  EXPECT_NE(sw.out.find("\"lower\":2,"), std::string::npos) << sw.out;
}

TEST_F(CliTest, OpnormErrors) {
  const auto big = write("big.json", tensor_to_json(ones(2, 30)));
  EXPECT_EQ(run({"opnorm", "--in", big}).code, cli::kExitCapacity);
  EXPECT_EQ(run({"opnorm", "--in", big, "--mode", "ascent"}).code, 0);
  EXPECT_EQ(run({"opnorm", "--in", (dir_ / "missing.json").string()}).code, cli::kExitValidation);
  const auto lw = write("lw.json", tensor_to_json(littlewood()));
  EXPECT_EQ(run({"opnorm", "--in", lw, "--mode", "psd"}).code, cli::kExitValidation);
}

TEST_F(CliTest, GenOutputFeedsOtherCommands) {
  const auto path = (dir_ / "ksz.json").string();
  ASSERT_EQ(run({"gen", "--family", "ksz", "--k", "2", "--n", "6", "--seed", "5", "--out", path}).code, 0);
  const auto t = read_tensor_file(path);
  EXPECT_EQ(t, sample_sign_tensor({2, 6, 5}));

  const auto mixed = run({"mixed-norm", "--in", path, "--q", "1", "1", "--json"});
  EXPECT_EQ(mixed.out, "{\"mixed_norm\":36}\n");
  EXPECT_EQ(run({"opnorm", "--in", path}).code, 0);

  const auto stdout_gen = run({"gen", "--family", "littlewood", "--lift-to", "3"});
  EXPECT_EQ(stdout_gen.out, tensor_to_json(lift(littlewood(), 3)) + "\n");
  EXPECT_EQ(run({"gen", "--family", "banana"}).code, cli::kExitValidation);
}

TEST_F(CliTest, MixedNormVariants) {
  const auto lw = write("lw.json", tensor_to_json(littlewood()));
  EXPECT_EQ(run({"mixed-norm", "--in", lw, "--q", "4/3", "4/3"}).out, "mixed_norm=2.82842712474619\n");
  EXPECT_EQ(run({"mixed-norm", "--in", lw, "--flat", "2"}).out, "mixed_norm=2\n");
  EXPECT_EQ(run({"mixed-norm", "--in", lw, "--partition", "2", "--q", "1"}).out, "mixed_norm=2\n");
  EXPECT_EQ(run({"mixed-norm", "--in", lw, "--q", "1"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"mixed-norm", "--in", lw}).code, cli::kExitValidation);
}

TEST_F(CliTest, ScanWritesStableOutputs) {
  const auto prefix = (dir_ / "run").string();
  const std::vector<std::string> args{"scan", "--q", "1", "1", "--family", "ksz", "--n-grid",
                                      "4..12:4", "--seeds", "1..3", "--out", prefix};
  const auto r1 = run(args);
  ASSERT_EQ(r1.code, 0) << r1.err;
  const std::string csv1 = slurp(prefix + ".csv");
  const std::string json1 = slurp(prefix + ".json");
  EXPECT_EQ(csv1.substr(0, csv1.find('\n')),
            "family,k,m,n,seed,mixed_norm,norm_lower,norm_upper,ratio_lo,ratio_hi");
  EXPECT_EQ(std::count(csv1.begin(), csv1.end(), '\n'), 10);
  EXPECT_NE(json1.find("\"predicted_slope\":0.5"), std::string::npos) << json1;
  EXPECT_EQ(json1, r1.out);

  auto threaded = args;
  threaded.insert(threaded.begin(), {"--threads", "3"});
  ASSERT_EQ(run(threaded).code, 0);
  EXPECT_EQ(slurp(prefix + ".csv"), csv1);
  EXPECT_EQ(slurp(prefix + ".json"), json1);
}

TEST_F(CliTest, ScanValidation) {
  EXPECT_EQ(run({"scan", "--family", "ksz", "--n-grid", "4", "8"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"scan", "--q", "1", "1"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"scan", "--q", "1", "1", "--n-grid", "8", "4"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"scan", "--q", "1", "1", "--n-grid", "4..x"}).code, cli::kExitValidation);
  EXPECT_EQ(run({"scan", "--q", "1", "1", "--n-grid", "40"}).code, cli::kExitCapacity);
  EXPECT_EQ(run({"scan", "--q", "1", "1", "--family", "file"}).code, cli::kExitValidation);
}

TEST_F(CliTest, ScanFileFamily) {
  const auto lw = write("lw.json", tensor_to_json(littlewood()));
  const auto r = run({"scan", "--q", "4/3", "4/3", "--family", "file", "--in", lw});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"verdict\":\"inconclusive\""), std::string::npos);
}

TEST_F(CliTest, ThreadsFromEnvironment) {
  ::setenv("BHLAB_THREADS", "2", 1);
  const auto r = run({"check", "1", "1"});
  ::unsetenv("BHLAB_THREADS");
  EXPECT_EQ(r.code, 0);
  ::setenv("BHLAB_THREADS", "many", 1);
  EXPECT_EQ(run({"check", "1", "1"}).code, cli::kExitValidation);
  ::unsetenv("BHLAB_THREADS");
}

}  // namespace
}  // namespace bhlab
