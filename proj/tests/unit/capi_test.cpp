#include <gtest/gtest.h>

#include <string>

#include "cantor_meter.h"

namespace {

std::string data(const char* name) { return std::string(CANTOR_DATA_DIR) + "/" + name; }

struct Options {
  cm_options* p = nullptr;
  Options() { EXPECT_EQ(cm_options_create(&p), CM_OK); }
  ~Options() { cm_options_destroy(p); }
};

struct Report {
  cm_report* p = nullptr;
  ~Report() { cm_report_destroy(p); }
};

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(cm_version(), "0.1.0");
  EXPECT_STREQ(cm_status_name(CM_OK), "Ok");
  EXPECT_STREQ(cm_status_name(CM_PARSE_ERROR), "ParseError");
  EXPECT_STREQ(cm_status_name(CM_IO), "Io");
  EXPECT_STREQ(cm_status_name(CM_INTERNAL), "Internal");
  EXPECT_STREQ(cm_status_name(static_cast<cm_status>(55)), "Unknown");
}

TEST(CApi, JordanPasses) {
  Options o;
  ASSERT_EQ(cm_options_add_file(o.p, data("abs_half.bv").c_str()), CM_OK);
  Report r;
  ASSERT_EQ(cm_run_command("jordan", o.p, &r.p), CM_OK) << cm_last_error();
  EXPECT_EQ(cm_report_passed(r.p), 1);
  ASSERT_GT(cm_report_check_count(r.p), 0U);
  const char* name = nullptr;
  const char* witness = nullptr;
  int passed = 0;
  ASSERT_EQ(cm_report_check(r.p, 0, &name, &passed, &witness), CM_OK);
  EXPECT_EQ(passed, 1);
  EXPECT_GT(std::string(name).size(), 0U);
  EXPECT_EQ(cm_report_check(r.p, 1000, &name, &passed, &witness), CM_INVALID_ARGUMENT);
  const std::string text = cm_report_render(r.p, 1, 0);
  EXPECT_NE(text.find("command=jordan\n"), std::string::npos);
  EXPECT_NE(text.find("result=pass\n"), std::string::npos);
  EXPECT_EQ(text.find("time."), std::string::npos);
}

TEST(CApi, SameInputSameDigestAndOutput) {
  auto run = [](const char* file, std::size_t depth) {
    Options o;
    cm_options_add_file(o.p, data(file).c_str());
    cm_options_set_depth(o.p, depth);
    cm_options_set_stages(o.p, 3);
    Report r;
    EXPECT_EQ(cm_run_command("freer", o.p, &r.p), CM_OK) << cm_last_error();
    return std::make_pair(cm_report_digest(r.p), std::string(cm_report_render(r.p, 0, 0)));
  };
  const auto a = run("lebesgue.measure", 8);
  const auto b = run("lebesgue.measure", 8);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.first, run("lebesgue.measure", 9).first);
}

TEST(CApi, ErrorsAreCodes) {
  {
    Options o;
    cm_options_add_file(o.p, data("corrupt.bv").c_str());
    Report r;
    EXPECT_EQ(cm_run_command("jordan", o.p, &r.p), CM_PARSE_ERROR);
    EXPECT_EQ(r.p, nullptr);
    EXPECT_NE(std::string(cm_last_error()).find("line 2"), std::string::npos);
  }
  {
    Options o;
    cm_options_add_file(o.p, "/no/such/file");
    Report r;
    EXPECT_EQ(cm_run_command("jordan", o.p, &r.p), CM_IO);
  }
  {
    Options o;
    Report r;
    EXPECT_EQ(cm_run_command("frobnicate", o.p, &r.p), CM_INVALID_ARGUMENT);
  }
  {
    Options o;
    cm_options_add_file(o.p, data("lebesgue.measure").c_str());
    cm_options_set_stages(o.p, 6);
    cm_options_set_depth(o.p, 4);
    Report r;
    EXPECT_EQ(cm_run_command("freer", o.p, &r.p), CM_DEPTH_EXHAUSTED);
  }
  {
    Options o;
    cm_options_set(o.p, "mode", "continuous");
    cm_options_add_file(o.p, data("full.seq").c_str());
    Report r;
    EXPECT_EQ(cm_run_command("covering", o.p, &r.p), CM_FULL_MEASURE);
  }
  EXPECT_EQ(cm_options_create(nullptr), CM_INVALID_ARGUMENT);
  EXPECT_EQ(cm_run_command(nullptr, nullptr, nullptr), CM_INVALID_ARGUMENT);
  EXPECT_EQ(cm_report_passed(nullptr), 0);
  EXPECT_STREQ(cm_report_render(nullptr, 0, 0), "");
}

TEST(CApi, FailingCheckCarriesWitness) {
  Options o;
  cm_options_set(o.p, "mode", "discrete");
  cm_options_set(o.p, "c", "3");
  cm_options_add_file(o.p, data("prefix.machine").c_str());
  Report r;
  ASSERT_EQ(cm_run_command("covering", o.p, &r.p), CM_OK) << cm_last_error();
  EXPECT_EQ(cm_report_passed(r.p), 0);
  bool saw = false;
  for (std::size_t i = 0; i < cm_report_check_count(r.p); ++i) {
    const char* witness = nullptr;
    int passed = 1;
    ASSERT_EQ(cm_report_check(r.p, i, nullptr, &passed, &witness), CM_OK);
    if (!passed) {
      saw = true;
      EXPECT_GT(std::string(witness).size(), 0U);
    }
  }
  EXPECT_TRUE(saw);
}

TEST(CApi, SweepDependsOnSeedOnly) {
  auto digest_text = [](std::uint64_t seed) {
    Options o;
    cm_options_set_seed(o.p, seed);
    cm_options_set_depth(o.p, 4);
    cm_options_set(o.p, "samples", "20");
    Report r;
    EXPECT_EQ(cm_run_command("sweep", o.p, &r.p), CM_OK) << cm_last_error();
    EXPECT_EQ(cm_report_passed(r.p), 1);
    return std::string(cm_report_render(r.p, 1, 0));
  };
  EXPECT_EQ(digest_text(7), digest_text(7));
  EXPECT_NE(digest_text(7), digest_text(8));
}
