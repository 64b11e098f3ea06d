#include <gtest/gtest.h>

#include <functional>

#include "cantor/error.hpp"
#include "cantor/report.hpp"
#include "cantor/textio.hpp"
#include "support/generators.hpp"

using namespace cantor;
using cantor::testing::Rng;

namespace {

// Message of the ParseError thrown by f, or "" if none.
std::string parse_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError) << e.what();
    return e.what();
  }
  return "";
}

bool mentions_line(const std::string& msg, int line) {
  return msg.find("line " + std::to_string(line) + ":") != std::string::npos;
}

}  // namespace

TEST(TextRoundTrip, Measures) {
  Rng rng(70);
  for (int trial = 0; trial < 200; ++trial) {
    const auto mu = rng.measure(rng.below(6));
    ASSERT_EQ(parse_measure(format_measure(mu)), mu);
  }
  const std::string staged = "0 1/2^1\n1 0\n@\n0 1\n1 1/2^2\n";
  const auto stages = parse_staged_measure(staged);
  ASSERT_EQ(stages.size(), 2U);
  EXPECT_EQ(stages[1].value(BitString::parse("1")), Dyadic(1, 2));
}

TEST(TextRoundTrip, BvSamples) {
  Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = rng.bv(rng.below(7));
    ASSERT_EQ(parse_bv(format_bv(f)), f);
  }
}

TEST(TextRoundTrip, Machines) {
  Rng rng(72);
  for (int trial = 0; trial < 200; ++trial) {
    const Machine m = trial % 2 ? rng.prefix_machine() : rng.plain_machine(1 + rng.below(8));
    ASSERT_EQ(Machine(m.kind(), parse_machine(format_machine(m))), m);
  }
  const auto e = parse_machine("# comment\n\n- 01 @3\n");
  ASSERT_EQ(e.size(), 1U);
  EXPECT_EQ(e[0].program, BitString());
  EXPECT_EQ(e[0].stage, 3U);
}

TEST(TextRoundTrip, Sequences) {
  Rng rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    IndexSequence a;
    StringSequence s;
    for (int i = 0; i < 8; ++i) {
      a.add(rng.below(10), rng.below(50));
      s.add(rng.below(10), rng.bits_upto(5));
    }
    ASSERT_EQ(parse_index_sequence(format_sequence(a)).sets(), a.sets());
    ASSERT_EQ(parse_string_sequence(format_sequence(s)).sets(), s.sets());
  }
  const auto glued = parse_index_sequence("2:5 6\n2: 7\n");
  EXPECT_EQ(glued.at(2), (std::set<std::uint64_t>{5, 6, 7}));
  EXPECT_EQ(parse_number_list("1,2 3"), (std::vector<std::uint64_t>{1, 2, 3}));
}

TEST(ParseErrors, CarryLineNumbers) {
  EXPECT_TRUE(mentions_line(parse_error([] { parse_measure("0 1\n1 x\n"); }), 2));
  EXPECT_TRUE(mentions_line(parse_error([] { parse_measure("# c\n0 1\n01 1\n"); }), 3));
  EXPECT_TRUE(mentions_line(parse_error([] { parse_measure("0 1\n0 1\n"); }), 2));
  EXPECT_TRUE(mentions_line(parse_error([] { parse_bv("0/2^1 0\n1/2^1 0\n1/2^1 0\n"); }), 3));
  EXPECT_TRUE(mentions_line(parse_error([] { parse_bv("0/2^1 0\n2/2^1 oops\n"); }), 2));
  EXPECT_TRUE(mentions_line(parse_error([] { parse_bv("0/2^1 0\n1/2^2 0\n"); }), 2));
  EXPECT_TRUE(mentions_line(parse_error([] { parse_machine("0 1 @1\n\n10 1 1\n"); }), 3));
  EXPECT_TRUE(mentions_line(parse_error([] { parse_machine("0 1 @0\n"); }), 1));
  EXPECT_TRUE(mentions_line(parse_error([] { parse_machine("0 2 @1\n"); }), 1));
  EXPECT_TRUE(mentions_line(parse_error([] { parse_index_sequence("1: 0\n3 4\n"); }), 2));
  EXPECT_TRUE(mentions_line(parse_error([] { parse_index_sequence("x: 0\n"); }), 1));
  EXPECT_FALSE(parse_error([] { parse_bv("0/2^1 0\n"); }).empty());  // missing grid point
  // A nested error shows its code once.
  const auto msg = parse_error([] { parse_bv("0/2^0 0\n1/2^0 1/2^x\n"); });
  EXPECT_EQ(msg.find("ParseError"), msg.rfind("ParseError"));
}

TEST(ReadFile, MissingIsIo) {
  try {
    read_file("/nonexistent/definitely/not/here");
    FAIL() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(Digest, Fnv1aVectors) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ULL);
  // Chaining equals hashing the concatenation.
  EXPECT_EQ(fnv1a("bar", fnv1a("foo")), fnv1a("foobar"));
}

TEST(RunReport, RenderingIsDeterministicWithoutTimings) {
  auto make = [](double ms) {
    RunReport r("demo");
    r.absorb("input");
    r.note("depth", "3");
    auto& t = r.table("grid", {"k", "value"});
    t.rows.push_back({"0", "1/2^1"});
    t.rows.push_back({"1", "3/2^3"});
    r.check("identity", true);
    r.check("bound", false, "at 01");
    r.time("solve", ms);
    return r;
  };
  const RunReport a = make(1.5), b = make(99.0);
  EXPECT_FALSE(a.passed());
  EXPECT_EQ(a.digest(), b.digest());
  EXPECT_EQ(a.render_text(false), b.render_text(false));
  EXPECT_EQ(a.render_machine(false), b.render_machine(false));
  EXPECT_NE(a.render_machine(true), b.render_machine(true));

  const std::string m = a.render_machine(false);
  EXPECT_NE(m.find("check.1.status=fail\n"), std::string::npos);
  EXPECT_NE(m.find("check.1.witness=at 01\n"), std::string::npos);
  EXPECT_EQ(m.find("check.0.witness"), std::string::npos);
  EXPECT_NE(m.find("table.0.1.value=3/2^3\n"), std::string::npos);
  EXPECT_NE(m.find("result=fail\n"), std::string::npos);
  EXPECT_EQ(m.find("time."), std::string::npos);
  EXPECT_NE(a.render_machine(true).find("time.solve=1.500\n"), std::string::npos);
  EXPECT_NE(a.render_text(true).find("[FAIL] bound  (at 01)"), std::string::npos);
}

TEST(RunReport, FailedCheckNeedsWitness) {
  RunReport r("demo");
  EXPECT_THROW(r.check("x", false), Error);
  r.check("y", true);
  EXPECT_TRUE(r.passed());
}
