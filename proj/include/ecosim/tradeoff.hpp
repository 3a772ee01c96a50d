#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "ecosim/cycle.hpp"
#include "ecosim/error.hpp"
#include "ecosim/sim.hpp"

namespace ecosim {

/// Positional deviation between two target trajectories.
struct SpacingResult {
  double max_abs_m = 0;     // worst-case |x_smoothed - x_original|
  double max_ahead_m = 0;   // max forward excess (smoothed ahead of nominal)
  double max_behind_m = 0;  // max rearward lag (smoothed behind nominal)
};

/// Additional inter-vehicle spacing the smoothed trajectory needs: the
/// worst-case deviation between the position traces of the two target
/// cycles (trapezoidal integration), evaluated at every sample.
inline SpacingResult spacing_requirement(const DriveCycle& original, const DriveCycle& smoothed) {
  original.validate();
  smoothed.validate();
  if (original.size() != smoothed.size() || original.dt_s != smoothed.dt_s) {
    throw InvalidInputError("spacing_requirement: cycles must share dt and length");
  }
  SpacingResult r;
  double x_orig = 0, x_smooth = 0;
  for (std::size_t k = 1; k < original.size(); ++k) {
    x_orig += 0.5 * (original.speeds_m_s[k - 1] + original.speeds_m_s[k]) * original.dt_s;
    x_smooth += 0.5 * (smoothed.speeds_m_s[k - 1] + smoothed.speeds_m_s[k]) * smoothed.dt_s;
    double gap = x_smooth - x_orig;
    r.max_ahead_m = std::max(r.max_ahead_m, gap);
    r.max_behind_m = std::max(r.max_behind_m, -gap);
  }
  r.max_abs_m = std::max(r.max_ahead_m, r.max_behind_m);
  return r;
}

struct TradeoffPoint {
  int half_width_m = 0;
  SmoothingMode mode = SmoothingMode::kEverywhere;
  double fuel_savings_pct = 0;  // relative to the m=0 baseline of the same cycle
  double spacing_m = 0;
  double fuel_per_100km = 0;
  double trip_time_s = 0;
  SpacingResult spacing_detail;
};

struct TradeoffFront {
  std::string cycle_name;
  double baseline_fuel_per_100km = 0;
  std::vector<TradeoffPoint> points;  // grouped by mode, ascending in m
};

/// Sweeps the smoothing half-width over the cycle in the given modes and
/// simulates each smoothed variant. Evaluations are independent and are
/// distributed over `jobs` threads (jobs <= 1 runs serially); assembly
/// order and results are identical regardless of concurrency.
inline TradeoffFront sweep_tradeoff(const DriveCycle& cycle, const std::vector<int>& m_values,
                                    const std::vector<SmoothingMode>& modes,
                                    const VehicleParams& params, const PowertrainMaps& maps,
                                    const DriverGains& gains, const SimConfig& cfg,
                                    int jobs = 1) {
  if (m_values.empty()) throw InvalidInputError("sweep: m_values must be non-empty");
  if (modes.empty()) throw InvalidInputError("sweep: modes must be non-empty");
  for (int m : m_values) {
    if (m < 0) throw InvalidInputError("sweep: half-widths must be >= 0");
  }

  std::vector<int> ms = m_values;
  ms.push_back(0);  // the m=0 anchor is always part of the front
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  struct Task {
    int m;
    SmoothingMode mode;
  };
  std::vector<Task> tasks;
  for (SmoothingMode mode : modes) {
    for (int m : ms) tasks.push_back({m, mode});
  }

  // The m=0 anchor is always simulated (it defines the savings baseline).
  const TrajectoryLog baseline_log = simulate(cycle, params, maps, gains, cfg);
  const double baseline = fuel_per_100km(baseline_log);

  std::vector<TradeoffPoint> points(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        const Task& task = tasks[i];
        SmoothingSpec spec{task.m, task.mode};
        DriveCycle smoothed = smooth_cycle(cycle, spec);
        TrajectoryLog log = simulate(smoothed, params, maps, gains, cfg);
        TradeoffPoint& pt = points[i];
        pt.half_width_m = task.m;
        pt.mode = task.mode;
        pt.fuel_per_100km = task.m == 0 ? baseline : fuel_per_100km(log);
        pt.fuel_savings_pct = 100.0 * (baseline - pt.fuel_per_100km) / baseline;
        pt.spacing_detail = spacing_requirement(cycle, smoothed);
        pt.spacing_m = pt.spacing_detail.max_abs_m;
        pt.trip_time_s = log.trip_time_s;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          try {
            throw;
          } catch (const Error& e) {
            first_error = std::make_exception_ptr(
                Error(std::string(e.what()) + " [while evaluating m=" +
                      std::to_string(tasks[i].m) + ", mode=" + to_string(tasks[i].mode) + "]"));
          } catch (...) {
            first_error = std::current_exception();
          }
        }
      }
    }
  };

  int n_threads = std::max(1, jobs);
  n_threads = std::min<int>(n_threads, static_cast<int>(tasks.size()));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  TradeoffFront front;
  front.cycle_name = cycle.name;
  front.baseline_fuel_per_100km = baseline;
  front.points = std::move(points);
  return front;
}

inline void write_front_csv(const TradeoffFront& front, std::ostream& out) {
  out << "cycle,mode,m,fuel_per_100km,fuel_savings_pct,spacing_m,trip_time_s\n";
  char buf[256];
  for (const TradeoffPoint& pt : front.points) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.10g,%.10g,%.10g,%.10g",
                  front.cycle_name.c_str(), to_string(pt.mode), pt.half_width_m,
                  pt.fuel_per_100km, pt.fuel_savings_pct, pt.spacing_m, pt.trip_time_s);
    out << buf << "\n";
  }
}

}  // namespace ecosim
