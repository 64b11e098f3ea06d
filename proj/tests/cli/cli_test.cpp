#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + CANTOR_METER_BIN + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string data(const char* name) { return std::string(CANTOR_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("jordan " + data("abs_half.bv")).status, 0);
  EXPECT_EQ(run("covering --mode discrete --c 3 " + data("prefix.machine")).status, 1);
  EXPECT_EQ(run("jordan " + data("corrupt.bv")).status, 2);
  EXPECT_EQ(run("jordan /no/such/file").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("jordan --depth notanumber " + data("abs_half.bv")).status, 2);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, DeterministicWithoutTimings) {
  for (const std::string args : {"jordan " + data("abs_half.bv"), "freer --stages 3 " + data("lebesgue.measure"),
                                 "covering --mode discrete " + data("prefix.machine"),
                                 "covering --mode continuous " + data("sequence.seq"),
                                 "machine --kind plain --query 0110,- --kc-lengths 1,2,3,3 " + data("machine3.txt"),
                                 "sawtooth --depth 9 " + data("events.seq")}) {
    const auto a = run("--no-timings " + args);
    const auto b = run("--no-timings " + args);
    ASSERT_EQ(a.status, 0) << args << "\n" << a.out;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_EQ(a.out.find("timings"), std::string::npos);
    const auto m1 = run("--no-timings --machine-readable " + args);
    const auto m2 = run("--no-timings --machine-readable " + args);
    EXPECT_EQ(m1.out, m2.out) << args;
  }
}

TEST(Cli, MachineReadableRecords) {
  const auto r = run("--machine-readable jordan " + data("abs_half.bv"));
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("command=jordan\n", 0), 0U);
  EXPECT_NE(r.out.find("\ndigest="), std::string::npos);
  EXPECT_NE(r.out.find("\nresult=pass\n"), std::string::npos);
  EXPECT_NE(r.out.find("\ntime."), std::string::npos);
  // Every line is one key=value record.
  std::size_t start = 0;
  while (start < r.out.size()) {
    const auto end = r.out.find('\n', start);
    const std::string line = r.out.substr(start, end - start);
    EXPECT_NE(line.find('='), std::string::npos) << line;
    start = end + 1;
  }
}

TEST(Cli, SeedFromEnvironment) {
  const std::string args = "--no-timings --machine-readable sweep --depth 4 --samples 10";
  const auto a = run(args, "CANTOR_METER_SEED=11");
  const auto b = run(args, "CANTOR_METER_SEED=0xb");
  const auto c = run(args, "CANTOR_METER_SEED=12");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(run(args, "CANTOR_METER_SEED=banana").status, 2);
}

TEST(Cli, FailureShowsWitness) {
  const auto r = run("--no-timings covering --mode discrete --c 3 " + data("prefix.machine"));
  ASSERT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("[FAIL]"), std::string::npos);
  EXPECT_NE(r.out.find("result: FAIL"), std::string::npos);
}
