#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "ecosim/error.hpp"
#include "ecosim/vehicle.hpp"

namespace ecosim {

/// Uniformly sampled target-speed trace.
struct DriveCycle {
  double dt_s = 1.0;
  std::vector<double> speeds_m_s;
  std::string name;
  std::string source;

  std::size_t size() const { return speeds_m_s.size(); }
  double duration_s() const { return dt_s * static_cast<double>(speeds_m_s.size() - 1); }

  void validate() const {
    if (!(dt_s > 0)) throw InvalidInputError("cycle '" + name + "': dt must be > 0");
    if (speeds_m_s.size() < 2) {
      throw InvalidInputError("cycle '" + name + "': needs at least 2 samples");
    }
    for (double v : speeds_m_s) {
      if (!std::isfinite(v) || v < 0) {
        throw InvalidInputError("cycle '" + name + "': speeds must be finite and >= 0");
      }
    }
  }
};

enum class SmoothingMode {
  kEverywhere,     // smooth every sample ("stars": full coordination)
  kPreserveStops,  // keep zero-speed samples ("circles": stops are mandatory)
};

inline const char* to_string(SmoothingMode mode) {
  return mode == SmoothingMode::kEverywhere ? "everywhere" : "preserve-stops";
}

inline SmoothingMode smoothing_mode_from_string(const std::string& s) {
  if (s == "everywhere") return SmoothingMode::kEverywhere;
  if (s == "preserve-stops") return SmoothingMode::kPreserveStops;
  throw InvalidInputError("unknown smoothing mode '" + s +
                          "' (expected 'everywhere' or 'preserve-stops')");
}

/// Moving-average filter request. Boundary handling is endpoint-hold:
/// indices before the start read the first sample, indices past the end
/// read the last.
struct SmoothingSpec {
  int half_width_m = 0;
  SmoothingMode mode = SmoothingMode::kEverywhere;

  void validate() const {
    if (half_width_m < 0) throw InvalidInputError("smoothing half-width must be >= 0");
  }
};

// Speeds below this are treated as stops when classifying samples for
// PRESERVE_STOPS mode (cycle data contains near-zero noise).
inline constexpr double kStopSpeedThreshold = 0.01;

/// Centered moving average of half-width m over the target trace.
/// In PRESERVE_STOPS mode, samples at (near-)zero target speed are copied
/// through unchanged and averaging windows always read the original trace.
inline DriveCycle smooth_cycle(const DriveCycle& cycle, const SmoothingSpec& spec) {
  cycle.validate();
  spec.validate();
  const std::vector<double>& v = cycle.speeds_m_s;
  const long n = static_cast<long>(v.size());
  const long m = spec.half_width_m;

  DriveCycle out = cycle;
  for (long k = 0; k < n; ++k) {
    if (spec.mode == SmoothingMode::kPreserveStops && v[k] < kStopSpeedThreshold) {
      continue;  // mandatory stop: target copied verbatim
    }
    double sum = 0;
    for (long i = k - m; i <= k + m; ++i) {
      sum += v[std::clamp(i, 0L, n - 1)];
    }
    out.speeds_m_s[k] = sum / static_cast<double>(2 * m + 1);
  }
  return out;
}

/// Trapezoidal distance integral of the speed trace.
inline double cycle_distance_m(const DriveCycle& cycle) {
  cycle.validate();
  double d = 0;
  for (std::size_t k = 1; k < cycle.size(); ++k) {
    d += 0.5 * (cycle.speeds_m_s[k - 1] + cycle.speeds_m_s[k]) * cycle.dt_s;
  }
  return d;
}

/// Linear re-interpolation onto a new uniform grid over the same duration.
inline DriveCycle resample_cycle(const DriveCycle& cycle, double new_dt_s) {
  cycle.validate();
  if (!(new_dt_s > 0)) throw InvalidInputError("resample: new dt must be > 0");
  double duration = cycle.duration_s();
  long steps = std::lround(duration / new_dt_s);
  if (steps < 1 || std::abs(static_cast<double>(steps) * new_dt_s - duration) > 1e-9) {
    steps = static_cast<long>(std::floor(duration / new_dt_s + 1e-12));
  }
  DriveCycle out;
  out.dt_s = new_dt_s;
  out.name = cycle.name;
  out.source = cycle.source;
  out.speeds_m_s.reserve(static_cast<std::size_t>(steps) + 1);
  const long last = static_cast<long>(cycle.size()) - 1;
  for (long i = 0; i <= steps; ++i) {
    double t = static_cast<double>(i) * new_dt_s / cycle.dt_s;  // in sample units
    long k = std::clamp(static_cast<long>(std::floor(t)), 0L, last - 1);
    double frac = t - static_cast<double>(k);
    frac = std::clamp(frac, 0.0, 1.0);
    out.speeds_m_s.push_back(cycle.speeds_m_s[k] +
                             frac * (cycle.speeds_m_s[k + 1] - cycle.speeds_m_s[k]));
  }
  out.validate();
  return out;
}

/// Parses the two-column cycle format:
///   # optional comments (a '# source: ...' line becomes the source tag)
///   time_s,speed_mps        (or time_s,speed_mph; mph is converted)
///   0.0,0.0
///   1.0,1.3
/// Timestamps must be uniform to within 1e-6 s.
inline DriveCycle parse_cycle(std::istream& in, const std::string& name = "",
                              const std::string& origin = "<stream>") {
  auto fail = [&origin](int line, const std::string& msg) -> ParseError {
    return ParseError(origin + ":" + std::to_string(line) + ": " + msg);
  };

  DriveCycle cycle;
  cycle.name = name;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  bool mph = false;
  std::vector<double> times;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = line;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    if (trimmed.empty()) continue;
    if (trimmed[0] == '#') {
      if (!header_seen && trimmed.rfind("# source:", 0) == 0) {
        std::string src = trimmed.substr(9);
        src.erase(0, src.find_first_not_of(" \t"));
        cycle.source = src;
      }
      continue;
    }
    if (!header_seen) {
      if (trimmed == "time_s,speed_mps") {
        mph = false;
      } else if (trimmed == "time_s,speed_mph") {
        mph = true;
      } else {
        throw fail(line_no, "expected header 'time_s,speed_mps' or 'time_s,speed_mph'");
      }
      header_seen = true;
      continue;
    }
    auto comma = trimmed.find(',');
    if (comma == std::string::npos) {
      throw fail(line_no, "expected 'time,speed' row");
    }
    double t = 0, v = 0;
    try {
      std::size_t used = 0;
      t = std::stod(trimmed.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("trailing junk");
      std::string vs = trimmed.substr(comma + 1);
      v = std::stod(vs, &used);
      if (used != vs.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw fail(line_no, "malformed row '" + trimmed + "'");
    }
    if (!std::isfinite(t) || !std::isfinite(v)) {
      throw fail(line_no, "non-finite value");
    }
    if (v < 0) {
      throw fail(line_no, "negative speed");
    }
    times.push_back(t);
    cycle.speeds_m_s.push_back(mph ? v * kMphToMps : v);
  }

  if (!header_seen) throw ParseError(origin + ": empty cycle document");
  if (times.size() < 2) throw ParseError(origin + ": cycle needs at least 2 samples");

  double dt = times[1] - times[0];
  if (!(dt > 0)) throw ParseError(origin + ": timestamps must increase");
  for (std::size_t k = 1; k < times.size(); ++k) {
    double step = times[k] - times[k - 1];
    if (std::abs(step - dt) > 1e-6) {
      throw ParseError(origin + ": non-uniform sampling at row " + std::to_string(k + 1) +
                       " (step " + std::to_string(step) + " vs " + std::to_string(dt) + ")");
    }
  }
  cycle.dt_s = dt;
  cycle.validate();
  return cycle;
}

inline DriveCycle load_cycle(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open cycle file: " + path.string());
  return parse_cycle(in, path.stem().string(), path.string());
}

/// Writes the standard cycle format (always in m/s). Round-trips through
/// parse_cycle.
inline void write_cycle(const DriveCycle& cycle, std::ostream& out) {
  cycle.validate();
  if (!cycle.source.empty()) out << "# source: " << cycle.source << "\n";
  out << "time_s,speed_mps\n";
  char buf[64];
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g", static_cast<double>(k) * cycle.dt_s,
                  cycle.speeds_m_s[k]);
    out << buf << "\n";
  }
}

inline void save_cycle(const DriveCycle& cycle, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path.string());
  write_cycle(cycle, out);
}

}  // namespace ecosim
