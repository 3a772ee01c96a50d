#pragma once

#include <algorithm>
#include <cmath>

#include "ecosim/error.hpp"

namespace ecosim {

/// PI speed-tracking driver gains. The control signal u (N*m) splits into
/// an engine torque command (u >= 0) and a wheel brake force (u < 0,
/// scaled by brake_scale_n_per_nm).
struct DriverGains {
  double kp = 0;                    // N*m per m/s of speed error
  double ki = 0;                    // N*m per (m/s * s)
  double brake_scale_n_per_nm = 0;  // brake N per N*m of negative demand
  double torque_command_max_nm = 0;
  double brake_force_max_n = 0;
  double integrator_limit = 0;      // m/s * s

  void validate() const {
    if (kp < 0 || ki < 0 || brake_scale_n_per_nm < 0 || integrator_limit < 0) {
      throw InvalidInputError("driver gains must be >= 0");
    }
    if (!(torque_command_max_nm > 0) || !(brake_force_max_n > 0)) {
      throw InvalidInputError("driver saturation limits must be > 0");
    }
  }
};

struct DriverState {
  double integrator = 0;  // accumulated speed error, m/s * s
};

struct DriverStepResult {
  double engine_torque_cmd_nm = 0;
  double brake_force_n = 0;
  double pedal = 0;
  DriverState state;
};

/// One PI update. Exactly one of torque command / brake force is nonzero.
/// The torque command additionally respects the engine's max-torque curve
/// at the current shaft speed (engine_torque_cap_nm). Anti-windup by
/// conditional integration: the integrator freezes while the output is
/// saturated in the direction of the current error.
inline DriverStepResult driver_step(double v_ref_m_s, double v_m_s, double engine_torque_cap_nm,
                                    const DriverState& state, const DriverGains& gains,
                                    double dt_s) {
  if (!std::isfinite(v_ref_m_s) || !std::isfinite(v_m_s)) {
    throw InvalidInputError("driver_step: non-finite speed input");
  }
  if (!(dt_s > 0)) throw InvalidInputError("driver_step: dt must be > 0");

  double error = v_ref_m_s - v_m_s;
  double u = gains.kp * error + gains.ki * state.integrator;

  DriverStepResult out;
  double torque_cap = std::min(gains.torque_command_max_nm, std::max(engine_torque_cap_nm, 0.0));
  bool saturated_high = false;
  bool saturated_low = false;
  if (u >= 0) {
    out.engine_torque_cmd_nm = std::min(u, torque_cap);
    saturated_high = u > torque_cap;
  } else {
    double brake = -u * gains.brake_scale_n_per_nm;
    out.brake_force_n = std::min(brake, gains.brake_force_max_n);
    saturated_low = brake > gains.brake_force_max_n;
  }
  out.pedal = gains.torque_command_max_nm > 0
                  ? out.engine_torque_cmd_nm / gains.torque_command_max_nm
                  : 0.0;

  bool freeze = (saturated_high && error > 0) || (saturated_low && error < 0);
  double integrator = state.integrator;
  if (!freeze) {
    integrator = std::clamp(integrator + error * dt_s, -gains.integrator_limit,
                            gains.integrator_limit);
  }
  out.state.integrator = integrator;
  return out;
}

}  // namespace ecosim
