#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace {

std::string src(const std::string& rel) { return std::string(HDLAB_SOURCE_DIR) + "/" + rel; }

int run_cli(const std::string& args, const std::string& out_file) {
  std::string cmd = std::string(HDLAB_BIN) + " " + args + " > " + out_file + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ShippedConfigsReproduceGoldenReports) {
  for (std::string name :
       {std::string("equality_b3"), std::string("hd2_n64"), std::string("hd22_exhaustive_n4")}) {
    std::string out = "/tmp/hdlab_cli_" + name + ".txt";
    int rc = run_cli("run --config " + src("configs/" + name + ".json"), out);
    EXPECT_EQ(rc, 0) << name;
    EXPECT_EQ(slurp(out), slurp(src("tests/golden/report_" + name + ".txt"))) << name;
    // byte-identical on rerun
    std::string out2 = "/tmp/hdlab_cli_" + name + "_rerun.txt";
    run_cli("run --config " + src("configs/" + name + ".json"), out2);
    EXPECT_EQ(slurp(out), slurp(out2));
  }
}

TEST(Cli, FlagsOverrideConfig) {
  std::string out = "/tmp/hdlab_cli_override.txt";
  int rc = run_cli("run --config " + src("configs/hd2_n64.json") + " --trials 10", out);
  EXPECT_EQ(rc, 0);
  EXPECT_NE(slurp(out).find("# cases: 10"), std::string::npos);
  EXPECT_NE(slurp(out).find("\"trials\":10"), std::string::npos);  // exact config echo
}

TEST(Cli, VerifyPassFailAndParseError) {
  std::string out = "/tmp/hdlab_cli_verify.txt";
  EXPECT_EQ(run_cli("verify --code " + src("tests/fixtures/product_slice_8.code") + " --f " +
                        src("tests/fixtures/product_slice_8.f"),
                    out),
            0);
  EXPECT_NE(slurp(out).find("pass"), std::string::npos);

  EXPECT_EQ(run_cli("verify --code " + src("tests/fixtures/product_slice_8_corrupt.code") +
                        " --f " + src("tests/fixtures/product_slice_8.f"),
                    out),
            1);
  std::string text = slurp(out);
  EXPECT_NE(text.find("fail"), std::string::npos);
  EXPECT_NE(text.find("expected f="), std::string::npos);  // the violating pair, verbatim

  EXPECT_EQ(run_cli("verify --code " + src("tests/fixtures/empty.code") + " --f 2:2", out), 2);
}

TEST(Cli, SearchEmitsVerifiedCodes) {
  std::string out = "/tmp/hdlab_cli_search.txt";
  int rc = run_cli("search-codes --f 0:0,1:2,2:4,3:6 --n 3 --m 6 --out-dir /tmp/hdlab_codes",
                   out);
  EXPECT_EQ(rc, 0);
  std::string log = slurp(out);
  EXPECT_NE(log.find("# codes_found:"), std::string::npos);
  EXPECT_EQ(log.find("# codes_found: 0"), std::string::npos);

  // re-verify an emitted file through the verify subcommand
  EXPECT_EQ(run_cli("verify --code /tmp/hdlab_codes/code_0.txt --f 0:0,1:2,2:4,3:6", out), 0);

  // infeasible f: pre-filtered, exhausted, none
  rc = run_cli("search-codes --f 2:0,4:2 --n 4 --m 4", out);
  EXPECT_EQ(rc, 0);
  log = slurp(out);
  EXPECT_NE(log.find("# codes_found: 0"), std::string::npos);
  EXPECT_NE(log.find("# exhausted: true"), std::string::npos);

  // m = 0 with nonzero f: immediately none
  rc = run_cli("search-codes --f 2:2 --n 3 --m 0", out);
  EXPECT_EQ(rc, 0);
  EXPECT_NE(slurp(out).find("# codes_found: 0"), std::string::npos);
}

TEST(Cli, ComposeFromMatrixFiles) {
  // two 3x3 symmetric matrices, alphabet 2
  std::ofstream m1("/tmp/hdlab_m1.mat");
  m1 << "3 2\n0 1 0\n1 0 1\n0 1 0\n";
  m1.close();
  std::ofstream m2("/tmp/hdlab_m2.mat");
  m2 << "3 2\n1 0 0\n0 1 1\n0 1 1\n";
  m2.close();
  std::ofstream cfg("/tmp/hdlab_compose.json");
  cfg << R"({"protocol":"compose","matrices":["/tmp/hdlab_m1.mat","/tmp/hdlab_m2.mat",)"
      << R"("/tmp/hdlab_m1.mat"],"r":1,"delta":0.125,"g":"exists-one",)"
      << R"("trials":60,"seed":5})";
  cfg.close();
  std::string out = "/tmp/hdlab_cli_compose.txt";
  EXPECT_EQ(run_cli("run --config /tmp/hdlab_compose.json", out), 0);
  std::string text = slurp(out);
  EXPECT_NE(text.find("# cases: 60"), std::string::npos);
  EXPECT_NE(text.find("\"g\":\"exists-one\""), std::string::npos);
}

TEST(Cli, HdKSummaryErrorWithinBudget) {
  std::string out = "/tmp/hdlab_cli_hdk_budget.txt";
  ASSERT_EQ(run_cli("run --protocol hd_k --n 64 --k 2 --delta 0.125 --trials 10000 --seed 7",
                    out),
            0);
  std::string text = slurp(out);
  auto pos = text.find("# error_rate: ");
  ASSERT_NE(pos, std::string::npos);
  double rate = std::stod(text.substr(pos + 14));
  EXPECT_LE(rate, 0.145);
}

TEST(Cli, UsageErrors) {
  std::string out = "/tmp/hdlab_cli_usage.txt";
  EXPECT_EQ(run_cli("run --protocol nonsense --trials 1", out), 2);
  EXPECT_EQ(run_cli("frobnicate", out), 2);
  EXPECT_EQ(run_cli("verify --code /nonexistent.code --f 2:2", out), 2);
}
