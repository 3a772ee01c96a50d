#include "ecosim/cycle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "testutil.hpp"

namespace ecosim {
namespace {

using testing::bundled_cycle;
using testing::make_cycle;

DriveCycle parse(const std::string& text) {
  std::istringstream in(text);
  return parse_cycle(in, "test", "test.csv");
}

TEST(ParseCycle, DirectRead) {
  DriveCycle c = parse("time_s,speed_mps\n0,0\n1,5\n2,10\n");
  EXPECT_DOUBLE_EQ(c.dt_s, 1.0);
  EXPECT_EQ(c.speeds_m_s, (std::vector<double>{0, 5, 10}));
}

TEST(ParseCycle, MphHeaderConverts) {
  DriveCycle c = parse("time_s,speed_mph\n0,22.369\n1,22.369\n");
  EXPECT_NEAR(c.speeds_m_s[0], 10.0, 1e-3);
}

TEST(ParseCycle, NonUniformSamplingRejected) {
  EXPECT_THROW(parse("time_s,speed_mps\n0,0\n1,5\n2.5,10\n"), ParseError);
}

TEST(ParseCycle, MalformedRowNamesLine) {
  try {
    parse("time_s,speed_mps\n0,0\n1,abc\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("test.csv:3"), std::string::npos);
  }
}

TEST(ParseCycle, NegativeSpeedRejected) {
  EXPECT_THROW(parse("time_s,speed_mps\n0,0\n1,-2\n"), ParseError);
}

TEST(ParseCycle, UnknownHeaderRejected) {
  EXPECT_THROW(parse("t,v\n0,0\n1,1\n"), ParseError);
}

TEST(ParseCycle, CommentsAndSourceTag) {
  DriveCycle c = parse("# source: somewhere\n# other note\ntime_s,speed_mps\n0,1\n1,2\n");
  EXPECT_EQ(c.source, "somewhere");
}

TEST(WriteCycle, RoundTripsThroughParser) {
  DriveCycle c = make_cycle(0.5, {0, 1.25, 3.75, 2.5}, "rt");
  c.source = "unit test";
  std::ostringstream out;
  write_cycle(c, out);
  std::istringstream in(out.str());
  DriveCycle back = parse_cycle(in, "rt");
  EXPECT_EQ(back.speeds_m_s, c.speeds_m_s);
  EXPECT_DOUBLE_EQ(back.dt_s, c.dt_s);
  EXPECT_EQ(back.source, c.source);
}

TEST(SmoothCycle, ZeroHalfWidthIsIdentity) {
  DriveCycle c = make_cycle(1, {0, 3, 7, 2, 9});
  DriveCycle s = smooth_cycle(c, {0, SmoothingMode::kEverywhere});
  EXPECT_EQ(s.speeds_m_s, c.speeds_m_s);
  s = smooth_cycle(c, {0, SmoothingMode::kPreserveStops});
  EXPECT_EQ(s.speeds_m_s, c.speeds_m_s);
}

TEST(SmoothCycle, HandComputedEverywhereExample) {
  DriveCycle c = make_cycle(1, {0, 10, 20, 30, 40});
  DriveCycle s = smooth_cycle(c, {1, SmoothingMode::kEverywhere});
  ASSERT_EQ(s.size(), 5u);
  EXPECT_DOUBLE_EQ(s.speeds_m_s[0], 10.0 / 3.0);  // endpoint-hold padding
  EXPECT_DOUBLE_EQ(s.speeds_m_s[1], 10.0);
  EXPECT_DOUBLE_EQ(s.speeds_m_s[2], 20.0);
  EXPECT_DOUBLE_EQ(s.speeds_m_s[3], 30.0);
  EXPECT_DOUBLE_EQ(s.speeds_m_s[4], 110.0 / 3.0);
}

TEST(SmoothCycle, HandComputedPreserveStopsExample) {
  DriveCycle c = make_cycle(1, {0, 10, 0});
  DriveCycle s = smooth_cycle(c, {1, SmoothingMode::kPreserveStops});
  EXPECT_EQ(s.speeds_m_s[0], 0.0);
  EXPECT_DOUBLE_EQ(s.speeds_m_s[1], 10.0 / 3.0);
  EXPECT_EQ(s.speeds_m_s[2], 0.0);
}

TEST(SmoothCycle, ConstantCycleUnchangedForAnyWidthAndMode) {
  DriveCycle c = testing::constant_cycle(12.5, 20);
  for (int m : {0, 1, 3, 10, 50}) {
    for (auto mode : {SmoothingMode::kEverywhere, SmoothingMode::kPreserveStops}) {
      DriveCycle s = smooth_cycle(c, {m, mode});
      EXPECT_EQ(s.speeds_m_s, c.speeds_m_s) << "m=" << m;
    }
  }
}

TEST(SmoothCycle, OutputBoundedByInputEnvelope) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> speed(0.0, 30.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(60);
    for (double& x : v) x = speed(rng);
    DriveCycle c = make_cycle(1, v);
    double lo = *std::min_element(v.begin(), v.end());
    double hi = *std::max_element(v.begin(), v.end());
    DriveCycle s = smooth_cycle(c, {trial % 8, SmoothingMode::kEverywhere});
    ASSERT_EQ(s.size(), c.size());
    for (double x : s.speeds_m_s) {
      EXPECT_GE(x, lo - 1e-12);
      EXPECT_LE(x, hi + 1e-12);
    }
  }
}

TEST(SmoothCycle, PreserveStopsKeepsZeroSetExactly) {
  DriveCycle la92 = bundled_cycle("la92");
  DriveCycle s = smooth_cycle(la92, {9, SmoothingMode::kPreserveStops});
  for (std::size_t k = 0; k < la92.size(); ++k) {
    if (la92.speeds_m_s[k] == 0.0) {
      EXPECT_EQ(s.speeds_m_s[k], 0.0) << "k=" << k;
    }
  }
}

TEST(SmoothCycle, PreserveStopsWindowReadsOriginalTrace) {
  // The zero at k=2 participates in k=1's window even though it is
  // itself copied through unsmoothed.
  DriveCycle c = make_cycle(1, {6, 6, 0, 6, 6});
  DriveCycle s = smooth_cycle(c, {1, SmoothingMode::kPreserveStops});
  EXPECT_DOUBLE_EQ(s.speeds_m_s[1], 4.0);
  EXPECT_EQ(s.speeds_m_s[2], 0.0);
  EXPECT_DOUBLE_EQ(s.speeds_m_s[3], 4.0);
}

TEST(SmoothCycle, ModesCoincideExactlyWithoutStops) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> speed(0.5, 30.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> v(50);
    for (double& x : v) x = speed(rng);
    DriveCycle c = make_cycle(1, v);
    int m = 1 + trial % 10;
    DriveCycle ev = smooth_cycle(c, {m, SmoothingMode::kEverywhere});
    DriveCycle ps = smooth_cycle(c, {m, SmoothingMode::kPreserveStops});
    EXPECT_EQ(ev.speeds_m_s, ps.speeds_m_s);
  }
}

TEST(SmoothCycle, MonotoneInPointwiseOrder) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> speed(0.0, 20.0);
  std::uniform_real_distribution<double> bump(0.0, 5.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> a(40), b(40);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = speed(rng);
      b[i] = a[i] + bump(rng);
    }
    DriveCycle sa = smooth_cycle(make_cycle(1, a), {4, SmoothingMode::kEverywhere});
    DriveCycle sb = smooth_cycle(make_cycle(1, b), {4, SmoothingMode::kEverywhere});
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_LE(sa.speeds_m_s[i], sb.speeds_m_s[i]);
  }
}

TEST(CycleDistance, ConstantIntegrand) {
  EXPECT_DOUBLE_EQ(cycle_distance_m(testing::constant_cycle(10, 10)), 100.0);
}

TEST(CycleDistance, SingleTrapezoid) {
  EXPECT_DOUBLE_EQ(cycle_distance_m(make_cycle(1, {0, 10})), 5.0);
}

TEST(CycleDistance, SmoothingPreservesDistanceWithinOnePercent) {
  for (const char* name : {"hwfet", "la92"}) {
    DriveCycle c = bundled_cycle(name);
    double d0 = cycle_distance_m(c);
    for (int m : {1, 3, 5}) {
      double d = cycle_distance_m(smooth_cycle(c, {m, SmoothingMode::kEverywhere}));
      EXPECT_NEAR(d, d0, 0.01 * d0) << name << " m=" << m;
    }
  }
}

TEST(ResampleCycle, IdentityAtSameDt) {
  DriveCycle c = make_cycle(1, {0, 4, 2, 8});
  DriveCycle r = resample_cycle(c, 1.0);
  EXPECT_EQ(r.speeds_m_s, c.speeds_m_s);
}

TEST(ResampleCycle, LinearMidpoints) {
  DriveCycle r = resample_cycle(make_cycle(1, {0, 10}), 0.5);
  EXPECT_EQ(r.speeds_m_s, (std::vector<double>{0, 5, 10}));
}

TEST(ResampleCycle, PreservesTrapezoidalDistanceOfRamp) {
  DriveCycle ramp = make_cycle(1, {0, 10, 20, 30, 40});
  DriveCycle r = resample_cycle(ramp, 0.25);
  EXPECT_NEAR(cycle_distance_m(r), cycle_distance_m(ramp), 1e-9);
}

TEST(DriveCycle, ValidationRejectsBadTraces) {
  EXPECT_THROW(make_cycle(0, {0, 1}).validate(), InvalidInputError);
  EXPECT_THROW(make_cycle(1, {0}).validate(), InvalidInputError);
  EXPECT_THROW(make_cycle(1, {0, -1}).validate(), InvalidInputError);
}

TEST(BundledCycles, LoadAndHaveExpectedShape) {
  DriveCycle hwfet = bundled_cycle("hwfet");
  EXPECT_EQ(hwfet.size(), 766u);
  EXPECT_DOUBLE_EQ(hwfet.dt_s, 1.0);
  // stopped only at the endpoints
  for (std::size_t k = 1; k + 1 < hwfet.size(); ++k) EXPECT_GT(hwfet.speeds_m_s[k], 0.0);

  DriveCycle la92 = bundled_cycle("la92");
  EXPECT_EQ(la92.size(), 1436u);
  int stops = 0;
  for (std::size_t k = 1; k < la92.size(); ++k) {
    if (la92.speeds_m_s[k] == 0.0 && la92.speeds_m_s[k - 1] > 0.0) ++stops;
  }
  EXPECT_GE(stops, 10);  // urban stop-and-go character
}

}  // namespace
}  // namespace ecosim
