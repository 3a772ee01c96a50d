// Command-line front end: simulate a cycle, smooth a cycle, or sweep the
// smoothing half-width to produce a fuel-savings vs. spacing tradeoff front.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ecosim/config.hpp"
#include "ecosim/cycle.hpp"
#include "ecosim/ecosim.hpp"
#include "ecosim/tradeoff_export.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitDivergence = 4;

namespace fs = std::filesystem;

struct CommonOpts {
  std::string config_path;
  std::string cycle_path;
  std::string out_dir = ".";
  std::vector<std::string> overrides;
  double dt_override = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "truck configuration file")->required();
  cmd->add_option("--cycle", opts.cycle_path, "drive cycle CSV")->required();
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--set", opts.overrides, "config override KEY=VALUE (repeatable)");
  cmd->add_option("--dt", opts.dt_override, "integration sub-step override [s]");
}

ecosim::SimulationSetup load(const CommonOpts& opts) {
  ecosim::SimulationSetup setup = ecosim::load_setup(opts.config_path, opts.overrides);
  if (opts.dt_override > 0) setup.sim.step_dt_s = opts.dt_override;
  return setup;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw ecosim::ParseError("cannot open output file: " + path.string());
  return out;
}

std::vector<int> parse_m_range(const std::string& text) {
  auto parse_int = [&](const std::string& tok) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ecosim::InvalidInputError("bad --m value '" + tok + "'");
    }
  };
  std::vector<int> out;
  auto dots = text.find("..");
  if (dots != std::string::npos) {
    int lo = parse_int(text.substr(0, dots));
    int hi = parse_int(text.substr(dots + 2));
    if (hi < lo) throw ecosim::InvalidInputError("bad --m range '" + text + "'");
    for (int m = lo; m <= hi; ++m) out.push_back(m);
    return out;
  }
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(parse_int(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (out.empty()) throw ecosim::InvalidInputError("--m list is empty");
  return out;
}

int cmd_simulate(const CommonOpts& opts) {
  ecosim::SimulationSetup setup = load(opts);
  ecosim::DriveCycle cycle = ecosim::load_cycle(opts.cycle_path);
  ecosim::TrajectoryLog log =
      ecosim::simulate(cycle, setup.params, setup.maps, setup.gains, setup.sim);

  fs::create_directories(opts.out_dir);
  fs::path traj_path = fs::path(opts.out_dir) / (cycle.name + "_trajectory.csv");
  auto traj = open_out(traj_path);
  ecosim::write_trajectory_csv(log, traj);

  fs::path summary_path = fs::path(opts.out_dir) / (cycle.name + "_summary.txt");
  auto summary = open_out(summary_path);
  ecosim::write_summary(log, setup.params, summary);

  ecosim::write_summary(log, setup.params, std::cout);
  std::cout << "trajectory: " << traj_path.string() << "\n";
  return 0;
}

int cmd_smooth(const CommonOpts& opts, int m, const std::string& mode_name) {
  ecosim::DriveCycle cycle = ecosim::load_cycle(opts.cycle_path);
  ecosim::SmoothingSpec spec{m, ecosim::smoothing_mode_from_string(mode_name)};
  ecosim::DriveCycle smoothed = ecosim::smooth_cycle(cycle, spec);
  smoothed.name = cycle.name + "_smoothed_m" + std::to_string(m) + "_" + mode_name;

  fs::create_directories(opts.out_dir);
  fs::path path = fs::path(opts.out_dir) / (smoothed.name + ".csv");
  ecosim::save_cycle(smoothed, path);

  ecosim::SpacingResult spacing = ecosim::spacing_requirement(cycle, smoothed);
  std::printf("smoothed cycle: %s\n", path.string().c_str());
  std::printf("spacing requirement: %.3f m (ahead %.3f m, behind %.3f m)\n", spacing.max_abs_m,
              spacing.max_ahead_m, spacing.max_behind_m);
  return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& m_text, const std::string& modes_text,
              int jobs, bool gnuplot) {
  ecosim::SimulationSetup setup = load(opts);
  ecosim::DriveCycle cycle = ecosim::load_cycle(opts.cycle_path);

  std::vector<int> m_values = parse_m_range(m_text);
  std::vector<ecosim::SmoothingMode> modes;
  std::string cur;
  for (char c : modes_text + ",") {
    if (c == ',') {
      if (!cur.empty()) modes.push_back(ecosim::smoothing_mode_from_string(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (modes.empty()) throw ecosim::InvalidInputError("--modes list is empty");
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());

  ecosim::TradeoffFront front = ecosim::sweep_tradeoff(cycle, m_values, modes, setup.params,
                                                       setup.maps, setup.gains, setup.sim, jobs);

  fs::create_directories(opts.out_dir);
  fs::path csv_path = fs::path(opts.out_dir) / (cycle.name + "_front.csv");
  auto csv = open_out(csv_path);
  ecosim::write_front_csv(front, csv);
  fs::path json_path = fs::path(opts.out_dir) / (cycle.name + "_front.json");
  auto json = open_out(json_path);
  ecosim::write_front_json(front, json);
  if (gnuplot) {
    fs::path gp_path = fs::path(opts.out_dir) / (cycle.name + "_front.gp");
    auto gp = open_out(gp_path);
    ecosim::write_front_gnuplot(front, csv_path.filename().string(), gp);
  }

  const ecosim::TradeoffPoint* best = nullptr;
  const ecosim::TradeoffPoint* widest = nullptr;
  for (const ecosim::TradeoffPoint& pt : front.points) {
    if (!best || pt.fuel_savings_pct > best->fuel_savings_pct) best = &pt;
    if (!widest || pt.spacing_m > widest->spacing_m) widest = &pt;
  }
  std::printf("baseline: %.1f g/100km on %s\n", front.baseline_fuel_per_100km,
              front.cycle_name.c_str());
  if (best) {
    std::printf("max savings: %.2f%% at m=%d (%s), spacing %.1f m\n", best->fuel_savings_pct,
                best->half_width_m, ecosim::to_string(best->mode), best->spacing_m);
  }
  if (widest) {
    std::printf("max spacing: %.1f m at m=%d (%s), savings %.2f%%\n", widest->spacing_m,
                widest->half_width_m, ecosim::to_string(widest->mode), widest->fuel_savings_pct);
  }
  std::printf("front: %s\n", csv_path.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drive-cycle smoothing fuel-economy simulator"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "closed-loop run over a cycle");
  add_common(sim_cmd, sim_opts);

  CommonOpts smooth_opts;
  int smooth_m = 0;
  std::string smooth_mode = "everywhere";
  CLI::App* smooth_cmd = app.add_subcommand("smooth", "write a moving-average-smoothed cycle");
  smooth_cmd->add_option("--cycle", smooth_opts.cycle_path, "drive cycle CSV")->required();
  smooth_cmd->add_option("--out", smooth_opts.out_dir, "output directory");
  smooth_cmd->add_option("--m", smooth_m, "filter half-width (samples)")->required();
  smooth_cmd->add_option("--mode", smooth_mode, "everywhere | preserve-stops");

  CommonOpts sweep_opts;
  std::string sweep_m = "0..30";
  std::string sweep_modes = "everywhere,preserve-stops";
  int sweep_jobs = 0;
  bool sweep_gnuplot = false;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "tradeoff front over smoothing half-widths");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--m", sweep_m, "half-width range '0..30' or comma list");
  sweep_cmd->add_option("--modes", sweep_modes, "comma list of smoothing modes");
  sweep_cmd->add_option("--jobs", sweep_jobs, "worker threads (0 = hardware)");
  sweep_cmd->add_flag("--gnuplot", sweep_gnuplot, "also emit a gnuplot script");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (sim_cmd->parsed()) return cmd_simulate(sim_opts);
    if (smooth_cmd->parsed()) return cmd_smooth(smooth_opts, smooth_m, smooth_mode);
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_opts, sweep_m, sweep_modes, sweep_jobs, sweep_gnuplot);
    }
  } catch (const ecosim::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const ecosim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
