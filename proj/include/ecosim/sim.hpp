#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "ecosim/cycle.hpp"
#include "ecosim/driver.hpp"
#include "ecosim/error.hpp"
#include "ecosim/powertrain.hpp"
#include "ecosim/vehicle.hpp"

namespace ecosim {

enum class TargetHold {
  kZeroOrder,  // hold each cycle sample until the next (default)
  kLinear,     // interpolate between samples
};

struct SimConfig {
  double step_dt_s = 0.1;        // integration sub-step; must divide the cycle dt
  int log_every_n_steps = 1;
  int initial_gear = 1;
  double initial_engine_speed_rad_s = 62.8;
  TargetHold target_hold = TargetHold::kZeroOrder;

  void validate() const {
    if (!(step_dt_s > 0)) throw InvalidInputError("sim.step_dt_s must be > 0");
    if (log_every_n_steps < 1) throw InvalidInputError("sim.log_every_n_steps must be >= 1");
    if (initial_gear < 1) throw InvalidInputError("sim.initial_gear must be >= 1");
    if (!(initial_engine_speed_rad_s > 0)) {
      throw InvalidInputError("sim.initial_engine_speed must be > 0");
    }
  }
};

struct TrajectorySample {
  double time_s = 0;
  double target_speed_m_s = 0;
  double speed_m_s = 0;
  double position_m = 0;
  int gear = 1;
  double engine_speed_rad_s = 0;
  double engine_torque_nm = 0;
  double brake_force_n = 0;
  double fuel_rate_g_s = 0;
  double cumulative_fuel_g = 0;  // fuel consumed through this row's time
};

/// Full record of one closed-loop run plus whole-run aggregates.
struct TrajectoryLog {
  std::string cycle_name;
  std::vector<TrajectorySample> samples;

  double trip_time_s = 0;
  double final_position_m = 0;
  double total_fuel_g = 0;
  double tractive_work_j = 0;       // integral of max(F_prop, 0) * v dt
  double rms_speed_error_m_s = 0;
  double rms_speed_error_excl_5s_m_s = 0;  // excludes the first 5 s of the run
  long bsfc_clamp_events = 0;
};

/// Closed-loop fixed-step simulation of driver + powertrain tracking the
/// given cycle. Explicit Euler on vehicle speed and engine shaft speed;
/// fuel and position by left-rectangle accumulation. Deterministic.
inline TrajectoryLog simulate(const DriveCycle& cycle, const VehicleParams& params,
                              const PowertrainMaps& maps, const DriverGains& gains,
                              const SimConfig& cfg) {
  cycle.validate();
  params.validate();
  maps.converter.validate();
  maps.shift.validate();
  maps.bsfc.validate();
  gains.validate();
  cfg.validate();
  if (!maps.shift.valid_gear(cfg.initial_gear)) {
    throw InvalidInputError("sim.initial_gear is not in the shift map");
  }

  const double dt = cfg.step_dt_s;
  const long steps_per_sample = std::lround(cycle.dt_s / dt);
  if (steps_per_sample < 1 ||
      std::abs(static_cast<double>(steps_per_sample) * dt - cycle.dt_s) > 1e-9) {
    throw InvalidInputError("sim.step_dt_s must divide the cycle dt (" +
                            std::to_string(dt) + " vs " + std::to_string(cycle.dt_s) + ")");
  }
  const long n_samples = static_cast<long>(cycle.size());
  const long total_steps = (n_samples - 1) * steps_per_sample;

  TrajectoryLog log;
  log.cycle_name = cycle.name;
  log.samples.reserve(static_cast<std::size_t>(total_steps / cfg.log_every_n_steps) + 1);

  PowertrainState state;
  state.vehicle_speed_m_s = 0;
  state.position_m = 0;
  state.gear = cfg.initial_gear;
  state.engine_speed_rad_s = std::max(cfg.initial_engine_speed_rad_s, params.idle_speed_rad_s);
  DriverState driver_state;

  double fuel_g = 0;
  double err_sq_sum = 0;
  double err_sq_sum_late = 0;
  long late_count = 0;

  for (long k = 0; k < total_steps; ++k) {
    const double t = static_cast<double>(k) * dt;

    // (1) target speed for this sub-step
    const long sample = k / steps_per_sample;
    double target = cycle.speeds_m_s[static_cast<std::size_t>(sample)];
    if (cfg.target_hold == TargetHold::kLinear) {
      double frac = static_cast<double>(k - sample * steps_per_sample) /
                    static_cast<double>(steps_per_sample);
      target += frac * (cycle.speeds_m_s[static_cast<std::size_t>(sample + 1)] - target);
    }

    // (2) driver
    const double torque_cap = maps.bsfc.max_torque_nm(state.engine_speed_rad_s);
    const DriverStepResult drv =
        driver_step(target, state.vehicle_speed_m_s, torque_cap, driver_state, gains, dt);
    driver_state = drv.state;

    // (3) transmission
    state.gear = select_gear(drv.pedal, state.vehicle_speed_m_s, state.gear, maps.shift);

    // (4) torque converter
    const double w_turbine = turbine_speed(state.vehicle_speed_m_s, state.gear, maps.shift, params);
    const ConverterTorques tc =
        torque_converter_coupling(state.engine_speed_rad_s, w_turbine, maps.converter);

    // (5) driveline
    const DrivelineOutput dl = driveline_transform(tc.turbine_nm, state.vehicle_speed_m_s,
                                                   state.gear, maps.shift, params);

    // (6) chassis + engine shaft, explicit Euler
    const double accel = chassis_acceleration(state.vehicle_speed_m_s, dl.propulsion_force_n,
                                              drv.brake_force_n, params);
    // (7) fuel, left-rectangle rule
    bool clamped = false;
    const double rate =
        fuel_rate_g_s(drv.engine_torque_cmd_nm, state.engine_speed_rad_s, params, maps.bsfc,
                      &clamped);
    if (clamped) ++log.bsfc_clamp_events;

    if (k % cfg.log_every_n_steps == 0) {
      log.samples.push_back({t, target, state.vehicle_speed_m_s, state.position_m, state.gear,
                             state.engine_speed_rad_s, drv.engine_torque_cmd_nm,
                             drv.brake_force_n, rate, fuel_g});
    }

    const double err = state.vehicle_speed_m_s - target;
    err_sq_sum += err * err;
    if (t >= 5.0) {
      err_sq_sum_late += err * err;
      ++late_count;
    }
    if (dl.propulsion_force_n > 0) {
      log.tractive_work_j += dl.propulsion_force_n * state.vehicle_speed_m_s * dt;
    }
    fuel_g += rate * dt;
    state.position_m += state.vehicle_speed_m_s * dt;
    state.vehicle_speed_m_s = std::max(0.0, state.vehicle_speed_m_s + accel * dt);
    state.engine_speed_rad_s = engine_shaft_step(state.engine_speed_rad_s,
                                                 drv.engine_torque_cmd_nm, tc.impeller_nm,
                                                 params, dt);

    if (!std::isfinite(state.vehicle_speed_m_s) || !std::isfinite(state.engine_speed_rad_s) ||
        std::abs(state.vehicle_speed_m_s) > 150.0) {
      throw DivergenceError("simulation diverged at step " + std::to_string(k) +
                            " (t=" + std::to_string(t) + " s)", static_cast<std::size_t>(k));
    }
  }

  log.trip_time_s = static_cast<double>(total_steps) * dt;
  log.final_position_m = state.position_m;
  log.total_fuel_g = fuel_g;
  log.rms_speed_error_m_s = std::sqrt(err_sq_sum / static_cast<double>(total_steps));
  log.rms_speed_error_excl_5s_m_s =
      late_count > 0 ? std::sqrt(err_sq_sum_late / static_cast<double>(late_count)) : 0.0;
  return log;
}

/// Normalized consumption: grams of fuel per 100 km driven.
inline double fuel_per_100km(const TrajectoryLog& log) {
  if (!(log.final_position_m > 0)) {
    throw InvalidInputError("fuel_per_100km undefined: trip covered no distance");
  }
  return log.total_fuel_g / log.final_position_m * 1e5;
}

inline void write_trajectory_csv(const TrajectoryLog& log, std::ostream& out) {
  out << "time_s,target_speed_m_s,speed_m_s,position_m,gear,engine_speed_rad_s,"
         "engine_torque_nm,brake_force_n,fuel_rate_g_s,cumulative_fuel_g\n";
  char buf[256];
  for (const TrajectorySample& s : log.samples) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%d,%.10g,%.10g,%.10g,%.10g,%.10g",
                  s.time_s, s.target_speed_m_s, s.speed_m_s, s.position_m, s.gear,
                  s.engine_speed_rad_s, s.engine_torque_nm, s.brake_force_n, s.fuel_rate_g_s,
                  s.cumulative_fuel_g);
    out << buf << "\n";
  }
}

/// One-page run summary (sidecar metadata; the CSV stays purely tabular).
inline void write_summary(const TrajectoryLog& log, const VehicleParams& params,
                          std::ostream& out) {
  char buf[128];
  auto line = [&](const char* key, double value, const char* unit) {
    std::snprintf(buf, sizeof(buf), "%-28s %.6g %s\n", key, value, unit);
    out << buf;
  };
  out << "cycle: " << log.cycle_name << "\n";
  line("trip_time", log.trip_time_s, "s");
  line("distance", log.final_position_m, "m");
  line("fuel", log.total_fuel_g, "g");
  if (log.final_position_m > 0) line("fuel_per_100km", fuel_per_100km(log), "g/100km");
  line("rms_speed_error", log.rms_speed_error_m_s, "m/s");
  line("rms_speed_error_excl_5s", log.rms_speed_error_excl_5s_m_s, "m/s");
  line("tractive_work", log.tractive_work_j, "J");
  if (log.tractive_work_j > 0) {
    line("fuel_energy_over_tractive",
         log.total_fuel_g * params.fuel_lhv_j_per_g / log.tractive_work_j, "");
  }
  out << "bsfc_clamp_events: " << log.bsfc_clamp_events << "\n";
}

}  // namespace ecosim
