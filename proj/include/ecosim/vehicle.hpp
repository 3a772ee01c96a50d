#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ecosim/error.hpp"
#include "ecosim/lut.hpp"

namespace ecosim {

inline constexpr double kRpmToRadS = 3.14159265358979323846 / 30.0;
inline constexpr double kMphToMps = 0.44704;
inline constexpr double kGPerKwhToGPerJ = 1.0 / 3.6e6;

/// Static chassis/driveline/engine constants of the simulated truck.
struct VehicleParams {
  double mass_kg = 0;
  double air_density_kg_m3 = 0;
  double drag_coeff = 0;
  double frontal_area_m2 = 0;
  double rolling_coeff = 0;
  double gravity_m_s2 = 0;
  double tire_radius_m = 0;
  double driveline_efficiency = 0;
  double engine_inertia_kg_m2 = 0;
  double accessory_power_w = 0;
  double idle_speed_rad_s = 0;
  double fuel_lhv_j_per_g = 0;  // energy audits only, not used by the dynamics

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0) || !std::isfinite(v)) {
        throw InvalidInputError(std::string("VehicleParams.") + name + " must be positive");
      }
    };
    positive(mass_kg, "mass_kg");
    positive(air_density_kg_m3, "air_density_kg_m3");
    positive(drag_coeff, "drag_coeff");
    positive(frontal_area_m2, "frontal_area_m2");
    positive(rolling_coeff, "rolling_coeff");
    positive(gravity_m_s2, "gravity_m_s2");
    positive(tire_radius_m, "tire_radius_m");
    positive(driveline_efficiency, "driveline_efficiency");
    positive(engine_inertia_kg_m2, "engine_inertia_kg_m2");
    positive(accessory_power_w, "accessory_power_w");
    positive(idle_speed_rad_s, "idle_speed_rad_s");
    positive(fuel_lhv_j_per_g, "fuel_lhv_j_per_g");
    if (driveline_efficiency > 1.0) {
      throw InvalidInputError("VehicleParams.driveline_efficiency must be <= 1");
    }
    if (rolling_coeff >= 1.0) {
      throw InvalidInputError("VehicleParams.rolling_coeff must be < 1");
    }
    if (drag_coeff >= 2.0) {
      throw InvalidInputError("VehicleParams.drag_coeff must be < 2");
    }
  }
};

/// Static torque-converter curves over speed ratio s = w_turbine / w_engine.
///
/// Capacity factor convention: K(s) = w_engine / sqrt(tau_impeller), in
/// (rad/s) / sqrt(N*m), so tau_impeller = (w_engine / K(s))^2.
struct TorqueConverterMap {
  Lut1 torque_ratio;     // tau_turbine / tau_impeller vs s
  Lut1 capacity_factor;  // K(s) vs s

  TorqueConverterMap() = default;
  TorqueConverterMap(std::vector<double> speed_ratio_grid, std::vector<double> torque_ratio_values,
                     std::vector<double> capacity_factor_values)
      : torque_ratio(speed_ratio_grid, std::move(torque_ratio_values), "converter.torque_ratio"),
        capacity_factor(std::move(speed_ratio_grid), std::move(capacity_factor_values),
                        "converter.capacity_factor") {
    validate();
  }

  void validate() const {
    const auto& grid = torque_ratio.grid();
    if (grid.front() != 0.0) {
      throw InvalidInputError("converter: speed ratio grid must start at 0");
    }
    if (torque_ratio.values().front() < 1.0) {
      throw InvalidInputError("converter: torque ratio at stall must be >= 1");
    }
    for (double v : torque_ratio.values()) {
      if (!(v > 0)) throw InvalidInputError("converter: torque ratio must be positive");
    }
    for (double v : capacity_factor.values()) {
      if (!(v > 0)) throw InvalidInputError("converter: capacity factor must be positive");
    }
  }
};

/// Per-gear ratio and shift thresholds tabulated over pedal position.
struct ShiftMap {
  struct Gear {
    double ratio = 0;  // overall turbine-to-wheel ratio of this gear
    Lut1 upshift_speed;    // pedal -> m/s, absent for the top gear
    Lut1 downshift_speed;  // pedal -> m/s, absent for gear 1
  };

  std::vector<Gear> gears;  // gears[0] is gear 1

  int gear_count() const { return static_cast<int>(gears.size()); }

  bool valid_gear(int gear) const { return gear >= 1 && gear <= gear_count(); }

  const Gear& gear(int index) const {
    if (!valid_gear(index)) {
      throw InvalidInputError("invalid gear index " + std::to_string(index));
    }
    return gears[static_cast<std::size_t>(index - 1)];
  }

  double ratio(int index) const { return gear(index).ratio; }

  /// Checks ratio ordering and hysteresis-band consistency on the pedal grid.
  void validate() const {
    if (gears.empty()) throw InvalidInputError("shift map: no gears");
    for (int g = 1; g <= gear_count(); ++g) {
      if (!(gears[g - 1].ratio > 0)) {
        throw InvalidInputError("shift map: gear " + std::to_string(g) + " ratio must be > 0");
      }
      if (g > 1 && gears[g - 1].ratio >= gears[g - 2].ratio) {
        throw InvalidInputError("shift map: ratios must strictly decrease with gear number");
      }
    }
    // Band consistency at every tabulated pedal point:
    //   downshift(g) < upshift(g)      non-empty hysteresis band
    //   downshift(g+1) <= upshift(g)   no up/down oscillation at fixed speed
    for (int g = 1; g <= gear_count(); ++g) {
      const Gear& cur = gears[g - 1];
      bool has_up = g < gear_count();
      bool has_down = g > 1;
      if (has_up && has_down) {
        for (double p : cur.upshift_speed.grid()) {
          if (!(cur.downshift_speed(p) < cur.upshift_speed(p))) {
            throw InvalidInputError("shift map: gear " + std::to_string(g) +
                                    " hysteresis band empty at pedal " + std::to_string(p));
          }
        }
      }
      if (has_up) {
        const Gear& next = gears[g];
        for (double p : cur.upshift_speed.grid()) {
          if (!(next.downshift_speed(p) <= cur.upshift_speed(p))) {
            throw InvalidInputError("shift map: downshift(" + std::to_string(g + 1) +
                                    ") exceeds upshift(" + std::to_string(g) + ") at pedal " +
                                    std::to_string(p));
          }
        }
      }
    }
  }
};

/// Brake-specific fuel consumption map and the engine's max-torque curve.
struct BsfcMap {
  Lut2 bsfc_g_per_kwh;   // (total torque N*m, engine speed rad/s) -> g/kWh
  Lut1 max_torque_nm;    // engine speed rad/s -> N*m

  BsfcMap() = default;
  BsfcMap(std::vector<double> torque_grid_nm, std::vector<double> speed_grid_rad_s,
          std::vector<double> bsfc_values, std::vector<double> max_torque_speed_grid,
          std::vector<double> max_torque_values)
      : bsfc_g_per_kwh(std::move(torque_grid_nm), std::move(speed_grid_rad_s),
                       std::move(bsfc_values), "bsfc.table"),
        max_torque_nm(std::move(max_torque_speed_grid), std::move(max_torque_values),
                      "engine.max_torque") {
    validate();
  }

  void validate() const {
    for (double v : bsfc_g_per_kwh.values()) {
      if (!(v > 0)) throw InvalidInputError("bsfc: all values must be > 0");
    }
    for (double v : max_torque_nm.values()) {
      if (!(v > 0)) throw InvalidInputError("engine: max torque curve must be positive");
    }
  }
};

/// Bundle of all static powertrain tables.
struct PowertrainMaps {
  TorqueConverterMap converter;
  ShiftMap shift;
  BsfcMap bsfc;
};

/// Mutable state advanced by the simulation loop.
struct PowertrainState {
  double engine_speed_rad_s = 0;
  int gear = 1;
  double vehicle_speed_m_s = 0;
  double position_m = 0;
};

}  // namespace ecosim
