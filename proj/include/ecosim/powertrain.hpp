#pragma once

#include <algorithm>
#include <cmath>

#include "ecosim/error.hpp"
#include "ecosim/vehicle.hpp"

namespace ecosim {

namespace detail {
inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidInputError(std::string("non-finite ") + what);
  }
}
}  // namespace detail

/// Point-mass longitudinal acceleration from the force balance
///   a = (F_prop - F_brake - 0.5*rho*Cd*Af*v^2 - mu*M*g) / M.
/// At standstill a non-positive force balance is clamped to zero: the
/// resistive terms cannot pull a stopped vehicle backwards.
inline double chassis_acceleration(double v_m_s, double f_prop_n, double f_brake_n,
                                   const VehicleParams& p) {
  detail::require_finite(v_m_s, "speed");
  detail::require_finite(f_prop_n, "propulsion force");
  detail::require_finite(f_brake_n, "brake force");
  double drag = 0.5 * p.air_density_kg_m3 * p.drag_coeff * p.frontal_area_m2 * v_m_s * v_m_s;
  double rolling = p.rolling_coeff * p.mass_kg * p.gravity_m_s2;
  double net = f_prop_n - f_brake_n - drag - rolling;
  if (v_m_s == 0.0 && net <= 0.0) return 0.0;
  return net / p.mass_kg;
}

/// Turbine speed implied by vehicle speed in the given gear: w_t = R*v/R_w.
inline double turbine_speed(double v_m_s, int gear, const ShiftMap& shift,
                            const VehicleParams& p) {
  return shift.ratio(gear) * v_m_s / p.tire_radius_m;
}

struct DrivelineOutput {
  double propulsion_force_n = 0;
  double turbine_speed_rad_s = 0;
};

/// Gear-ratio transform between the converter turbine and the wheels:
///   F_prop = eta * R * tau_t / R_w,   w_t = R * v / R_w.
inline DrivelineOutput driveline_transform(double turbine_torque_nm, double v_m_s, int gear,
                                           const ShiftMap& shift, const VehicleParams& p) {
  double r = shift.ratio(gear);  // throws on unknown gear
  return {p.driveline_efficiency * r * turbine_torque_nm / p.tire_radius_m,
          r * v_m_s / p.tire_radius_m};
}

struct ConverterTorques {
  double impeller_nm = 0;
  double turbine_nm = 0;
};

/// Static torque-converter coupling at speed ratio s = w_t / w_e:
///   tau_i = (w_e / K(s))^2,  tau_t = TR(s) * tau_i,
/// with K and TR linearly interpolated and s clamped to the map domain.
inline ConverterTorques torque_converter_coupling(double engine_speed_rad_s,
                                                  double turbine_speed_rad_s,
                                                  const TorqueConverterMap& map) {
  detail::require_finite(engine_speed_rad_s, "engine speed");
  detail::require_finite(turbine_speed_rad_s, "turbine speed");
  if (!(engine_speed_rad_s > 0)) {
    throw InvalidInputError("torque converter: engine speed must be > 0");
  }
  double s = turbine_speed_rad_s / engine_speed_rad_s;
  s = std::clamp(s, map.capacity_factor.min_x(), map.capacity_factor.max_x());
  double k = map.capacity_factor(s);
  double impeller = (engine_speed_rad_s / k) * (engine_speed_rad_s / k);
  return {impeller, map.torque_ratio(s) * impeller};
}

/// Explicit-Euler engine shaft update, floored at the idle speed:
///   w_e' = max(idle, w_e + dt/J_e * (tau_e - tau_i)).
inline double engine_shaft_step(double engine_speed_rad_s, double engine_torque_nm,
                                double impeller_torque_nm, const VehicleParams& p, double dt_s) {
  detail::require_finite(engine_speed_rad_s, "engine speed");
  detail::require_finite(engine_torque_nm, "engine torque");
  detail::require_finite(impeller_torque_nm, "impeller torque");
  if (!(dt_s > 0)) throw InvalidInputError("engine_shaft_step: dt must be > 0");
  double next = engine_speed_rad_s +
                dt_s / p.engine_inertia_kg_m2 * (engine_torque_nm - impeller_torque_nm);
  return std::max(next, p.idle_speed_rad_s);
}

/// Fuel mass flow from the BSFC map:
///   mdot = (tau_e * w_e + P_acc) * beta(tau_e + P_acc / w_e, w_e)
/// with beta in g/kWh converted to g/J. Queries outside the map clamp to
/// the nearest grid edge; *clamped reports that (callers may log it).
inline double fuel_rate_g_s(double engine_torque_nm, double engine_speed_rad_s,
                            const VehicleParams& p, const BsfcMap& bsfc,
                            bool* clamped = nullptr) {
  detail::require_finite(engine_torque_nm, "engine torque");
  detail::require_finite(engine_speed_rad_s, "engine speed");
  if (engine_torque_nm < 0) {
    throw InvalidInputError("fuel_rate: commanded torque must be >= 0 (fuel cut upstream)");
  }
  if (!(engine_speed_rad_s > 0)) {
    throw InvalidInputError("fuel_rate: engine speed must be > 0");
  }
  double total_power_w = engine_torque_nm * engine_speed_rad_s + p.accessory_power_w;
  double total_torque_nm = engine_torque_nm + p.accessory_power_w / engine_speed_rad_s;
  double beta = bsfc.bsfc_g_per_kwh.eval(total_torque_nm, engine_speed_rad_s, clamped);
  return total_power_w * beta * kGPerKwhToGPerJ;
}

/// Hysteretic gear selection: upshift when v exceeds the current gear's
/// upshift threshold at this pedal, downshift when v falls below the
/// downshift threshold, otherwise hold. At most one gear change per call.
inline int select_gear(double pedal, double v_m_s, int current_gear, const ShiftMap& shift) {
  detail::require_finite(pedal, "pedal");
  detail::require_finite(v_m_s, "speed");
  const ShiftMap::Gear& g = shift.gear(current_gear);
  double p = std::clamp(pedal, 0.0, 1.0);
  if (current_gear < shift.gear_count() && v_m_s > g.upshift_speed(p)) {
    return current_gear + 1;
  }
  if (current_gear > 1 && v_m_s < g.downshift_speed(p)) {
    return current_gear - 1;
  }
  return current_gear;
}

}  // namespace ecosim
