#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ecosim/config_doc.hpp"
#include "ecosim/driver.hpp"
#include "ecosim/error.hpp"
#include "ecosim/sim.hpp"
#include "ecosim/vehicle.hpp"

namespace ecosim {

inline VehicleParams load_vehicle_params(const ConfigDoc& doc) {
  VehicleParams p;
  p.mass_kg = doc.get_double("vehicle.mass_kg");
  p.air_density_kg_m3 = doc.get_double("vehicle.air_density_kg_m3");
  p.drag_coeff = doc.get_double("vehicle.drag_coeff");
  p.frontal_area_m2 = doc.get_double("vehicle.frontal_area_m2");
  p.rolling_coeff = doc.get_double("vehicle.rolling_coeff");
  p.gravity_m_s2 = doc.get_double("vehicle.gravity_m_s2");
  p.tire_radius_m = doc.get_double("vehicle.tire_radius_m");
  p.driveline_efficiency = doc.get_double("vehicle.driveline_efficiency");
  p.engine_inertia_kg_m2 = doc.get_double("vehicle.engine_inertia_kg_m2");
  p.accessory_power_w = doc.get_double("vehicle.accessory_power_w");
  p.idle_speed_rad_s = doc.get_double("vehicle.idle_speed_rpm") * kRpmToRadS;
  p.fuel_lhv_j_per_g = doc.get_double("vehicle.fuel_lhv_j_per_g");
  p.validate();
  return p;
}

inline TorqueConverterMap load_torque_converter(const ConfigDoc& doc) {
  return TorqueConverterMap(doc.get_list("converter.speed_ratio"),
                            doc.get_list("converter.torque_ratio"),
                            doc.get_list("converter.capacity_factor"));
}

inline ShiftMap load_shift_map(const ConfigDoc& doc) {
  std::vector<double> pedal_grid = doc.get_list("shift.pedal_grid");
  int n_gears = doc.get_int("shift.gear_count");
  if (n_gears < 1) throw ParseError(doc.origin() + ": shift.gear_count must be >= 1");

  ShiftMap map;
  for (int g = 1; g <= n_gears; ++g) {
    std::string prefix = "shift.gear" + std::to_string(g) + ".";
    ShiftMap::Gear gear;
    gear.ratio = doc.get_double(prefix + "ratio");
    if (g < n_gears) {
      gear.upshift_speed = Lut1(pedal_grid, doc.get_list(prefix + "upshift_mps"),
                                prefix + "upshift_mps");
    }
    if (g > 1) {
      gear.downshift_speed = Lut1(pedal_grid, doc.get_list(prefix + "downshift_mps"),
                                  prefix + "downshift_mps");
    }
    map.gears.push_back(std::move(gear));
  }
  map.validate();
  return map;
}

inline BsfcMap load_bsfc_map(const ConfigDoc& doc) {
  auto to_rad_s = [](std::vector<double> rpm) {
    for (double& v : rpm) v *= kRpmToRadS;
    return rpm;
  };
  return BsfcMap(doc.get_list("bsfc.torque_grid_nm"),
                 to_rad_s(doc.get_list("bsfc.speed_grid_rpm")),
                 doc.get_list("bsfc.table_g_per_kwh"),
                 to_rad_s(doc.get_list("engine.speed_grid_rpm")),
                 doc.get_list("engine.max_torque_nm"));
}

inline PowertrainMaps load_powertrain_maps(const ConfigDoc& doc) {
  return {load_torque_converter(doc), load_shift_map(doc), load_bsfc_map(doc)};
}

inline DriverGains load_driver_gains(const ConfigDoc& doc) {
  DriverGains g;
  g.kp = doc.get_double("driver.kp");
  g.ki = doc.get_double("driver.ki");
  g.brake_scale_n_per_nm = doc.get_double("driver.brake_scale_n_per_nm");
  g.torque_command_max_nm = doc.get_double("driver.torque_command_max_nm");
  g.brake_force_max_n = doc.get_double("driver.brake_force_max_n");
  g.integrator_limit = doc.get_double("driver.integrator_limit");
  g.validate();
  return g;
}

inline SimConfig load_sim_config(const ConfigDoc& doc) {
  SimConfig cfg;
  cfg.step_dt_s = doc.get_double_or("sim.step_dt_s", cfg.step_dt_s);
  cfg.log_every_n_steps = doc.get_int_or("sim.log_every_n_steps", cfg.log_every_n_steps);
  cfg.initial_gear = doc.get_int_or("sim.initial_gear", cfg.initial_gear);
  cfg.initial_engine_speed_rad_s =
      doc.get_double_or("sim.initial_engine_speed_rpm", 600.0) * kRpmToRadS;
  std::string hold = doc.get_string_or("sim.target_hold", "zoh");
  if (hold == "zoh") {
    cfg.target_hold = TargetHold::kZeroOrder;
  } else if (hold == "linear") {
    cfg.target_hold = TargetHold::kLinear;
  } else {
    throw ParseError(doc.origin() + ": sim.target_hold must be 'zoh' or 'linear'");
  }
  cfg.validate();
  return cfg;
}

/// Everything a closed-loop run needs, loaded from one config document.
struct SimulationSetup {
  VehicleParams params;
  PowertrainMaps maps;
  DriverGains gains;
  SimConfig sim;
};

inline SimulationSetup load_setup(const ConfigDoc& doc) {
  SimulationSetup s{load_vehicle_params(doc), load_powertrain_maps(doc),
                    load_driver_gains(doc), load_sim_config(doc)};
  doc.require_all_read();
  return s;
}

inline SimulationSetup load_setup(const std::filesystem::path& path,
                                  const std::vector<std::string>& overrides = {}) {
  ConfigDoc doc = ConfigDoc::load(path);
  for (const std::string& kv : overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ParseError("override '" + kv + "' is not KEY=VALUE");
    }
    doc.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return load_setup(doc);
}

}  // namespace ecosim
