#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ecosim/cycle.hpp"
#include "testutil.hpp"

#ifndef ECOSIM_CLI_PATH
#error "ECOSIM_CLI_PATH must be defined by the build"
#endif

namespace ecosim {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  fs::path out_file = fs::temp_directory_path() / "ecosim_cli_out.txt";
  std::string cmd = std::string(ECOSIM_CLI_PATH) + " " + args + " >" + out_file.string() +
                    " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(out_file);
  std::stringstream buf;
  buf << in.rdbuf();
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, buf.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    out_dir_ = fs::temp_directory_path() /
               ("ecosim_cli_test_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(out_dir_);
    fs::create_directories(out_dir_);
    config_ = (ecosim::testing::data_dir() / "truck.cfg").string();
    hwfet_ = (ecosim::testing::data_dir() / "hwfet.csv").string();
    la92_ = (ecosim::testing::data_dir() / "la92.csv").string();
  }

  void TearDown() override { fs::remove_all(out_dir_); }

  std::string out() const { return out_dir_.string(); }

  fs::path out_dir_;
  std::string config_, hwfet_, la92_;
};

TEST_F(CliTest, SimulateHappyPathWritesTrajectoryAndSummary) {
  RunResult r = run_cli("simulate --config " + config_ + " --cycle " + hwfet_ + " --out " + out());
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_TRUE(fs::exists(out_dir_ / "hwfet_trajectory.csv"));
  EXPECT_TRUE(fs::exists(out_dir_ / "hwfet_summary.txt"));
  EXPECT_NE(r.output.find("fuel_per_100km"), std::string::npos);
}

TEST_F(CliTest, MissingCycleFileNamesPathAndExits3) {
  RunResult r = run_cli("simulate --config " + config_ + " --cycle /nonexistent/xyz.csv --out " +
                        out());
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.output.find("/nonexistent/xyz.csv"), std::string::npos);
}

TEST_F(CliTest, NoSubcommandIsUsageError) {
  RunResult r = run_cli("");
  EXPECT_EQ(r.exit_code, 2);
}

TEST_F(CliTest, UnknownFlagIsUsageError) {
  RunResult r = run_cli("simulate --bogus");
  EXPECT_EQ(r.exit_code, 2);
}

TEST_F(CliTest, OverrideChangesTracking) {
  RunResult a = run_cli("simulate --config " + config_ + " --cycle " + hwfet_ + " --out " + out());
  fs::path first = out_dir_ / "a_summary.txt";
  fs::rename(out_dir_ / "hwfet_summary.txt", first);
  RunResult b = run_cli("simulate --config " + config_ + " --cycle " + hwfet_ + " --out " +
                        out() + " --set driver.kp=2200");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(b.exit_code, 0);
  std::ifstream fa(first), fb(out_dir_ / "hwfet_summary.txt");
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_NE(sa.str(), sb.str());
}

TEST_F(CliTest, UnknownOverrideKeyExits3) {
  RunResult r = run_cli("simulate --config " + config_ + " --cycle " + hwfet_ + " --out " +
                        out() + " --set driver.nope=1");
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.output.find("driver.nope"), std::string::npos);
}

TEST_F(CliTest, MalformedCycleExits3WithLineNumber) {
  fs::path bad = out_dir_ / "bad.csv";
  std::ofstream(bad) << "time_s,speed_mps\n0,0\n1,oops\n";
  RunResult r = run_cli("simulate --config " + config_ + " --cycle " + bad.string() + " --out " +
                        out());
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.output.find(":3"), std::string::npos);
}

TEST_F(CliTest, SmoothRoundTripsAndFeedsSimulate) {
  RunResult r = run_cli("smooth --cycle " + la92_ + " --m 5 --mode preserve-stops --out " + out());
  EXPECT_EQ(r.exit_code, 0) << r.output;
  fs::path smoothed = out_dir_ / "la92_smoothed_m5_preserve-stops.csv";
  ASSERT_TRUE(fs::exists(smoothed));

  DriveCycle cycle = load_cycle(smoothed);  // re-parseable
  EXPECT_EQ(cycle.size(), 1436u);

  RunResult sim = run_cli("simulate --config " + config_ + " --cycle " + smoothed.string() +
                          " --out " + out());
  EXPECT_EQ(sim.exit_code, 0) << sim.output;
}

TEST_F(CliTest, SmoothWithZeroWidthIsSemanticIdentity) {
  RunResult r = run_cli("smooth --cycle " + hwfet_ + " --m 0 --out " + out());
  EXPECT_EQ(r.exit_code, 0);
  DriveCycle orig = load_cycle(hwfet_);
  DriveCycle back = load_cycle(out_dir_ / "hwfet_smoothed_m0_everywhere.csv");
  EXPECT_EQ(back.speeds_m_s, orig.speeds_m_s);
  EXPECT_EQ(back.dt_s, orig.dt_s);
}

TEST_F(CliTest, SweepRowCountAndByteIdenticalReruns) {
  std::string cmd = "sweep --config " + config_ + " --cycle " + la92_ +
                    " --m 0..3 --modes everywhere,preserve-stops --out ";
  RunResult r1 = run_cli(cmd + out() + " --jobs 2");
  EXPECT_EQ(r1.exit_code, 0) << r1.output;
  std::ifstream f1(out_dir_ / "la92_front.csv");
  std::stringstream s1;
  s1 << f1.rdbuf();
  const std::string text = s1.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 9L);  // header + 4*2 rows

  fs::path second = out_dir_ / "again";
  RunResult r2 = run_cli(cmd + second.string() + " --jobs 1");
  EXPECT_EQ(r2.exit_code, 0);
  std::ifstream f2(second / "la92_front.csv");
  std::stringstream s2;
  s2 << f2.rdbuf();
  EXPECT_EQ(s1.str(), s2.str());
}

TEST_F(CliTest, FullSweepHas62Rows) {
  RunResult r = run_cli("sweep --config " + config_ + " --cycle " + la92_ +
                        " --m 0..30 --modes everywhere,preserve-stops --out " + out() +
                        " --jobs 2");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  std::ifstream f(out_dir_ / "la92_front.csv");
  std::stringstream s;
  s << f.rdbuf();
  const std::string text = s.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 63L);  // header + 31*2 rows
}

TEST_F(CliTest, SweepSingleBaselinePoint) {
  RunResult r = run_cli("sweep --config " + config_ + " --cycle " + hwfet_ +
                        " --m 0 --modes everywhere --out " + out());
  EXPECT_EQ(r.exit_code, 0);
  std::ifstream f(out_dir_ / "hwfet_front.csv");
  std::string header, row, extra;
  std::getline(f, header);
  std::getline(f, row);
  EXPECT_FALSE(std::getline(f, extra));
  EXPECT_NE(row.find("hwfet,everywhere,0,"), std::string::npos);
  EXPECT_NE(row.find(",0,0,"), std::string::npos);  // zero savings, zero spacing
}

TEST_F(CliTest, SweepEmitsGnuplotScriptOnRequest) {
  RunResult r = run_cli("sweep --config " + config_ + " --cycle " + hwfet_ +
                        " --m 0,2 --modes everywhere --out " + out() + " --gnuplot");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(fs::exists(out_dir_ / "hwfet_front.gp"));
  EXPECT_TRUE(fs::exists(out_dir_ / "hwfet_front.json"));
}

TEST_F(CliTest, BadMRangeIsInputError) {
  RunResult r = run_cli("sweep --config " + config_ + " --cycle " + hwfet_ +
                        " --m 5..1 --out " + out());
  EXPECT_EQ(r.exit_code, 3);
}

}  // namespace
}  // namespace ecosim
