#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sstream>

#include "qball/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "qball");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = qball::cli::run(int(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, IntegrateExamples) {
  EXPECT_EQ(run({"integrate", "--m", "1", "--n", "1", "f0"}).out, "1\n");
  EXPECT_EQ(run({"integrate", "--m", "1", "--n", "1", "z[1,1]*f0*zs[1,1]"}).out, "q^-2 - 1\n");
  EXPECT_EQ(run({"integrate", "--m", "1", "--n", "1", "--q", "1/2", "z[1,1]*f0*zs[1,1]"}).out, "q^-2 - 1\n3\n");
  EXPECT_EQ(run({"integrate", "--m", "1", "--n", "1", "--format", "json", "--q", "1/2", "z[1,1]*f0*zs[1,1]"}).out,
            "{\"numeric\":\"3\",\"value\":\"q^-2 - 1\"}\n");
}

TEST(Cli, Normalize) {
  EXPECT_EQ(run({"normalize", "--m", "1", "--n", "1", "zs[1,1]*z[1,1]"}).out, "q^2 * z[1,1]*zs[1,1] + (1 - q^2)\n");
  EXPECT_EQ(run({"normalize", "--m", "1", "--n", "1", "--star", "z[1,1]*f0"}).out, "f0*zs[1,1]\n");
  EXPECT_EQ(run({"normalize", "--m", "1", "--n", "1"}, "zs[1,1]*z[1,1]\n").out, "q^2 * z[1,1]*zs[1,1] + (1 - q^2)\n");
  EXPECT_EQ(run({"normalize", "--m", "1", "--n", "1", "--q", "1/2", "zs[1,1]*z[1,1]"}).out,
            "q^2 * z[1,1]*zs[1,1] + (1 - q^2)\n1/4 * z[1,1]*zs[1,1] + 3/4\n");
}

TEST(Cli, Act) {
  const Result r = run({"act", "--m", "1", "--n", "2", "F1 E1", "z[1,1]"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "z[1,1]\n");
  EXPECT_EQ(run({"act", "--m", "1", "--n", "1", "Fn", "z[1,1]*z[1,1]"}).out, "(s^-3 + s) * z[1,1]\n");
}

TEST(Cli, Gram) {
  EXPECT_EQ(run({"gram", "--m", "1", "--n", "1", "--degree", "2"}).out, "[1 - q^2 - q^4 + q^6]\n");
  EXPECT_EQ(run({"gram", "--m", "1", "--n", "2", "--degree", "1", "--q", "1/2"}).out,
            "[1 - q^2, 0]\n[0, 1 - q^2]\n\n[3/4, 0]\n[0, 3/4]\n");
}

TEST(Cli, ErrorsAndExitCodes) {
  Result r = run({"normalize", "--m", "1", "--n", "2", "z[3,1]"});
  EXPECT_EQ(r.code, qball::cli::exit_code::usage);
  EXPECT_NE(r.err.find("z[3,1]"), std::string::npos);
  r = run({"normalize", "--m", "1", "--n", "1", "z[1,1] +"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 1, column 9"), std::string::npos) << r.err;
  EXPECT_EQ(run({"integrate", "--m", "1", "--n", "1", "z[1,1]"}).code, qball::cli::exit_code::not_finite);
  EXPECT_EQ(run({"integrate", "--n", "1", "f0"}).code, 1);
  EXPECT_EQ(run({"integrate", "--m", "1", "--n", "1", "--q", "2", "f0"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, Verify) {
  Result r = run({"verify", "--m", "1", "--n", "2", "--degree", "2"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("invariance: ok"), std::string::npos);
  r = run({"verify", "--m", "1", "--n", "2", "--degree", "2", "--perturb-r-prime"});
  EXPECT_EQ(r.code, qball::cli::exit_code::verify_failed);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, BinaryRuns) {
  std::array<char, 256> buf{};
  std::string out;
  FILE* p = popen(QBALL_CLI_PATH " integrate --m 1 --n 1 f0", "r");
  ASSERT_NE(p, nullptr);
  while (fgets(buf.data(), int(buf.size()), p)) out += buf.data();
  EXPECT_EQ(pclose(p), 0);
  EXPECT_EQ(out, "1\n");
}
