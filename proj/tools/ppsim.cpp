// ppsim: pump-probe spectra of a resonantly driven two-level emitter.
//
// Subcommands:
//   run      execute a run-config file and write result matrices
//   validate run the built-in oracle suite, emit a machine-readable report
//   figure   run a named preset and emit plot-ready files
//
// Exit codes: 0 ok, 1 validation failure, 2 config error, 3 numeric error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pumpprobe/config.hpp"
#include "pumpprobe/io.hpp"
#include "pumpprobe/validate.hpp"

namespace fs = std::filesystem;
using namespace pumpprobe;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOpts {
  std::string out_dir;
  int workers = -1;          // -1: keep config value
  double dt_fs = 0.0;        // 0: keep config value
  std::string normalize;     // empty: keep config value
};

void apply_overrides(RunConfig& cfg, const CommonOpts& opts) {
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (opts.workers >= 0) cfg.workers = opts.workers;
  if (opts.dt_fs > 0.0) {
    cfg.dt_fs = opts.dt_fs;
    std::cout << "note: dt overridden to " << opts.dt_fs << " fs\n";
  }
  if (!opts.normalize.empty()) {
    cfg.normalization = sweep_normalization_from_string(opts.normalize);
  }
}

void write_result_files(const RunConfig& cfg, const SweepResult& result) {
  fs::create_directories(cfg.out_dir);
  const fs::path base = fs::path(cfg.out_dir) / cfg.out_prefix;

  if (cfg.out_format == "json") {
    write_text_file(base.string() + ".json", sweep_json(result));
  } else {
    write_text_file(base.string() + ".csv", sweep_csv(result));
  }

  nlohmann::ordered_json meta;
  meta["config_echo"] = nlohmann::ordered_json::parse(echo_config_json(cfg));
  meta["result"] = nlohmann::ordered_json::parse(result.metadata_json);
  meta["notes"] = result.notes;
  write_text_file(base.string() + "_meta.json", meta.dump(2));
  write_text_file(base.string() + "_config_echo.json", echo_config_json(cfg));

  const std::string axis_label =
      result.axis_name == "pulse_area_pi" ? "pulse area (pi)" : result.axis_name;
  write_text_file(base.string() + ".gp",
                  gnuplot_map_script(cfg.out_prefix + ".csv", axis_label,
                                     result.experiment));
}

void print_summary(const SweepResult& result) {
  for (const auto& note : result.notes) std::cout << "note: " << note << "\n";
  for (std::size_t i = 0; i < result.axis_values.size(); ++i) {
    std::ostringstream tag;
    tag << result.axis_name << "=" << result.axis_values[i];
    std::cout << peak_summary_line(tag.str(), result.row_spectrum(i)) << "\n";
  }
}

int cmd_run(const std::string& config_path, const CommonOpts& opts) {
  RunConfig cfg = parse_run_config_file(config_path);
  apply_overrides(cfg, opts);
  const SweepResult result = execute(cfg);
  write_result_files(cfg, result);
  print_summary(result);
  return kExitOk;
}

int cmd_validate(double dt_fs, double gamma, bool text) {
  const ValidationReport report = run_validation(dt_fs, gamma);
  std::cout << (text ? report.to_text() : report.to_json()) << "\n";
  return report.all_pass() ? kExitOk : kExitValidation;
}

RunConfig figure_preset(const std::string& name) {
  const double omega = mev_to_rad_per_ps(2.0);
  const double period = 2.0 * constants::pi / omega;

  RunConfig cfg;
  cfg.out_prefix = name;
  auto linspace = [](double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) {
      v.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return v;
  };

  if (name == "fig2a") {
    cfg.experiment = "cw";
    cfg.sweep_values = linspace(-period, period, 81);
  } else if (name == "fig2b") {
    cfg.experiment = "delta";
    cfg.sweep_values = linspace(-7.0, 3.0, 101);
  } else if (name == "fig3") {
    cfg.experiment = "rect";
    cfg.sweep_values = linspace(-30.0, 30.0, 121);
  } else if (name == "fig4") {
    cfg.experiment = "softened";
    cfg.sweep_values = {0.0, 12.6};
    cfg.normalization = SweepNormalization::reference;
  } else if (name == "fig6") {
    cfg.experiment = "gaussian_delay";
    cfg.sweep_values = linspace(-30.0, 30.0, 121);
    cfg.normalization = SweepNormalization::global;
  } else if (name == "fig7a") {
    cfg.experiment = "area_sweep";
    for (double a = 0.5; a <= 8.0 + 1e-9; a += 0.25) cfg.sweep_values.push_back(a);
    cfg.normalization = SweepNormalization::per_axis;
  } else {
    throw ConfigError("unknown figure preset: " + name +
                      " (expected fig2a|fig2b|fig3|fig4|fig6|fig7a)");
  }
  cfg.sweep_axis = cfg.experiment == "softened"
                       ? "edge_ps"
                       : (cfg.experiment == "area_sweep" ? "pulse_area_pi" : "delay_ps");
  return cfg;
}

// Extra per-figure artifacts: cut spectra at the delays discussed in the
// figure captions, pulse profiles, probe-dynamics traces.
void figure_extras(const std::string& name, const RunConfig& cfg,
                   const SweepResult& result) {
  const fs::path dir(cfg.out_dir);
  const ExperimentConfig engine = cfg.engine();
  const double omega = mev_to_rad_per_ps(2.0);
  const double period = 2.0 * constants::pi / omega;

  auto write_cut_from_row = [&](double axis_value, const std::string& label) {
    for (std::size_t i = 0; i < result.axis_values.size(); ++i) {
      if (std::abs(result.axis_values[i] - axis_value) < 1e-9) {
        write_text_file((dir / (name + "_cut_" + label + ".csv")).string(),
                        spectrum_csv(result.row_spectrum(i)));
        return;
      }
    }
  };

  std::vector<std::string> cut_files;
  if (name == "fig2a") {
    write_cut_from_row(0.0, "tau_0ps");
    write_cut_from_row(period / 4.0, "tau_quarter_period");
    cut_files = {name + "_cut_tau_0ps.csv", name + "_cut_tau_quarter_period.csv"};
  } else if (name == "fig2b") {
    write_cut_from_row(1.0, "tau_1ps");
    write_cut_from_row(-5.0, "tau_-5ps");
    cut_files = {name + "_cut_tau_1ps.csv", name + "_cut_tau_-5ps.csv"};
  } else if (name == "fig3") {
    // Cut delays from the caption; 26.9 ps is off the map grid, so the cuts
    // are computed exactly and scaled with the map's normalization.
    const double half = 10.0 * period;
    const CompositeField pump{{rectangular(omega, -half, half)}};
    for (double tau : {26.9, 16.5, -16.5, -26.9}) {
      Spectrum s = probe_spectrum(pump, tau, engine);
      if (result.normalization_ref != 0.0 && result.normalization_mode == "reference") {
        for (double& v : s.values) v /= result.normalization_ref;
        s.normalization_mode = "reference";
        s.normalization_ref = result.normalization_ref;
      }
      std::ostringstream label;
      label << name << "_cut_tau_" << tau << "ps.csv";
      write_text_file((dir / label.str()).string(), spectrum_csv(s));
      cut_files.push_back(label.str());
    }
    const ProbeDynamics dyn = probe_dynamics_trace(pump, 14.47, engine);
    write_text_file((dir / (name + "_dynamics_tau_14.47ps.csv")).string(),
                    trace_csv(dyn));
  } else if (name == "fig4") {
    for (std::size_t i = 0; i < result.axis_values.size(); ++i) {
      const double edge = result.axis_values[i];
      std::ostringstream label;
      label << name << "_cut_edge_" << edge << "ps.csv";
      write_text_file((dir / label.str()).string(),
                      spectrum_csv(result.row_spectrum(i)));
      cut_files.push_back(label.str());

      // Pulse time profile for the upper panels.
      const double half = 10.0 * period;
      const PulseEnvelope pulse = softened_rect(omega, -half, half, edge);
      std::ostringstream profile;
      profile << "t_ps,omega_rad_per_ps\n";
      for (double t = -half - 2.0; t <= half + edge / 2.0 + 2.0; t += 0.01) {
        profile << t << "," << pulse.real_value(t) << "\n";
      }
      std::ostringstream pname;
      pname << name << "_pulse_edge_" << edge << "ps.csv";
      write_text_file((dir / pname.str()).string(), profile.str());
    }
  }
  if (!cut_files.empty()) {
    write_text_file((dir / (name + "_cuts.gp")).string(),
                    gnuplot_cut_script(cut_files, name + " cuts"));
  }
}

int cmd_figure(const std::string& name, const CommonOpts& opts) {
  RunConfig cfg = figure_preset(name);
  apply_overrides(cfg, opts);
  const SweepResult result = execute(cfg);
  write_result_files(cfg, result);
  figure_extras(name, cfg, result);
  print_summary(result);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pump-probe spectra of a resonantly driven two-level emitter"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string config_path;
  std::string figure_name;
  double validate_dt_fs = 1.0;
  double validate_gamma = 0.139;
  bool validate_text = false;

  CLI::App* run = app.add_subcommand("run", "execute a run-config file");
  run->add_option("--config", config_path, "path to JSON run config")->required();
  run->add_option("--out", opts.out_dir, "output directory (overrides config)");
  run->add_option("--workers", opts.workers, "worker thread cap");
  run->add_option("--dt-fs", opts.dt_fs, "integration step override in fs (logged)");
  run->add_option("--normalize", opts.normalize, "reference|global|per_axis|none");

  CLI::App* validate = app.add_subcommand("validate", "run the oracle suite");
  validate->add_option("--dt-fs", validate_dt_fs, "integration step in fs");
  validate->add_option("--gamma", validate_gamma, "damping rate in 1/ps");
  validate->add_flag("--text", validate_text, "human-readable report instead of JSON");

  CLI::App* figure = app.add_subcommand("figure", "run a named figure preset");
  figure->add_option("name", figure_name, "fig2a|fig2b|fig3|fig4|fig6|fig7a")->required();
  figure->add_option("--out", opts.out_dir, "output directory");
  figure->add_option("--workers", opts.workers, "worker thread cap");
  figure->add_option("--dt-fs", opts.dt_fs, "integration step override in fs (logged)");
  figure->add_option("--normalize", opts.normalize, "reference|global|per_axis|none");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, opts);
    if (validate->parsed()) return cmd_validate(validate_dt_fs, validate_gamma, validate_text);
    if (figure->parsed()) return cmd_figure(figure_name, opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
