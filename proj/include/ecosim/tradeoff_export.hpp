#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "ecosim/tradeoff.hpp"

namespace ecosim {

/// Structured mirror of TradeoffFront for plotting tools.
inline nlohmann::json front_to_json(const TradeoffFront& front) {
  nlohmann::json points = nlohmann::json::array();
  for (const TradeoffPoint& pt : front.points) {
    points.push_back({
        {"m", pt.half_width_m},
        {"mode", to_string(pt.mode)},
        {"fuel_per_100km", pt.fuel_per_100km},
        {"fuel_savings_pct", pt.fuel_savings_pct},
        {"spacing_m", pt.spacing_m},
        {"spacing_ahead_m", pt.spacing_detail.max_ahead_m},
        {"spacing_behind_m", pt.spacing_detail.max_behind_m},
        {"trip_time_s", pt.trip_time_s},
    });
  }
  return {
      {"cycle", front.cycle_name},
      {"baseline_fuel_per_100km", front.baseline_fuel_per_100km},
      {"points", points},
  };
}

inline void write_front_json(const TradeoffFront& front, std::ostream& out) {
  out << front_to_json(front).dump(2) << "\n";
}

/// Emits a gnuplot script plotting savings vs. spacing from the CSV export.
inline void write_front_gnuplot(const TradeoffFront& front, const std::string& csv_name,
                                std::ostream& out) {
  out << "set datafile separator ','\n"
      << "set xlabel 'additional spacing requirement [m]'\n"
      << "set ylabel 'fuel savings [%]'\n"
      << "set title '" << front.cycle_name << " smoothing tradeoff'\n"
      << "set grid\n"
      << "set key left top\n"
      << "plot '" << csv_name
      << "' using 6:(strcol(2) eq 'everywhere' ? $5 : 1/0) with points pt 3 "
         "title 'everywhere', \\\n"
      << "     '" << csv_name
      << "' using 6:(strcol(2) eq 'preserve-stops' ? $5 : 1/0) with points pt 6 "
         "title 'preserve-stops'\n";
}

}  // namespace ecosim
