// Run configuration: strict-schema JSON parsing (unknown keys rejected with
// their field path) and execution dispatch to the experiment families.
//
// RunConfig stores values in the config's user units (areas in pi, times in
// ps, energies in meV, dt in fs); conversions happen in one place when the
// engine config is built, so a parsed config echo re-runs bit-identically.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pumpprobe/experiments.hpp"

namespace pumpprobe {

struct RunConfig {
  std::string experiment;  // cw|delta|rect|softened|gaussian_delay|area_sweep

  double probe_area_pi = 0.02;
  double probe_sigma_ps = 0.01;
  int n_phases = 8;

  double gamma_inv_ps = 0.139;
  std::optional<double> window_ps;
  int zero_pad_factor = 8;
  double energy_min_mev = -4.0;
  double energy_max_mev = 4.0;
  double sample_dt_ps = 0.01;

  double dt_fs = 1.0;
  int workers = 0;
  SweepNormalization normalization = SweepNormalization::reference;

  // Sweep values; semantics depend on the experiment (delay ps, edge ps or
  // pulse area in pi units).
  std::string sweep_axis;
  std::vector<double> sweep_values;

  // Pump family parameters (defaults per experiment).
  double pump_amplitude_mev = 2.0;  // cw, rect, softened
  int cw_periods = 250;
  int rect_periods = 20;
  double delta_area_pi = 1.0;
  double gaussian_area_pi = 20.0;
  double gaussian_sigma_ps = 5.0;
  double softened_probe_after_start = 30.9;
  double area_sigma_ps = 12.0 / 2.3548200450309493;  // FWHM 12 ps
  double area_t_probe_ps = 0.0;
  double area_prep_pi = 2.0;

  std::string out_dir = ".";
  std::string out_format = "csv";  // csv|json
  std::string out_prefix;          // default: experiment name

  ExperimentConfig engine() const;
};

// Parses and validates a config document; throws ConfigError with the
// offending field path on schema violations.
RunConfig parse_run_config(const std::string& json_text);
RunConfig parse_run_config_file(const std::string& path);

// Fully resolved config echo (every default materialized); parsing the echo
// re-runs bit-identically.
std::string echo_config_json(const RunConfig& cfg);

// Dispatches to the configured experiment.
SweepResult execute(const RunConfig& cfg);

}  // namespace pumpprobe
