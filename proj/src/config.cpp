#include "pumpprobe/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pumpprobe {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// View over a JSON object that records which keys were read and rejects the
// rest, reporting the full field path.
class StrictView {
 public:
  StrictView(const json& node, std::string path)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError("expected an object at " + path_);
  }

  bool has(const std::string& key) const {
    seen_.insert(key);
    return node_.contains(key);
  }

  double number(const std::string& key, double fallback) const {
    seen_.insert(key);
    if (!node_.contains(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number()) throw ConfigError("expected a number at " + join(key));
    return v.get<double>();
  }

  int integer(const std::string& key, int fallback) const {
    seen_.insert(key);
    if (!node_.contains(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number_integer()) throw ConfigError("expected an integer at " + join(key));
    return v.get<int>();
  }

  std::string str(const std::string& key, const std::string& fallback) const {
    seen_.insert(key);
    if (!node_.contains(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_string()) throw ConfigError("expected a string at " + join(key));
    return v.get<std::string>();
  }

  std::string required_str(const std::string& key) const {
    seen_.insert(key);
    if (!node_.contains(key)) throw ConfigError("missing required key " + join(key));
    const json& v = node_.at(key);
    if (!v.is_string()) throw ConfigError("expected a string at " + join(key));
    return v.get<std::string>();
  }

  std::vector<double> number_array(const std::string& key) const {
    seen_.insert(key);
    if (!node_.contains(key)) return {};
    const json& v = node_.at(key);
    if (!v.is_array()) throw ConfigError("expected an array at " + join(key));
    std::vector<double> out;
    for (const auto& item : v) {
      if (!item.is_number()) throw ConfigError("expected numbers at " + join(key));
      out.push_back(item.get<double>());
    }
    return out;
  }

  StrictView object(const std::string& key) const {
    seen_.insert(key);
    if (!node_.contains(key)) throw ConfigError("missing required key " + join(key));
    return StrictView(node_.at(key), join(key));
  }

  // Must be called after all expected keys were touched.
  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (seen_.count(key) == 0) {
        throw ConfigError("unknown key " + join(key));
      }
    }
  }

 private:
  std::string join(const std::string& key) const { return path_ + "." + key; }

  const json& node_;
  std::string path_;
  mutable std::set<std::string> seen_;
};

std::string default_axis_for(const std::string& experiment) {
  if (experiment == "softened") return "edge_ps";
  if (experiment == "area_sweep") return "pulse_area_pi";
  return "delay_ps";
}

void parse_pump(const StrictView& pump, RunConfig& cfg) {
  const std::string expected_shape = [&]() -> std::string {
    if (cfg.experiment == "cw") return "cw_step";
    if (cfg.experiment == "delta") return "gaussian";
    if (cfg.experiment == "rect") return "rectangular";
    if (cfg.experiment == "softened") return "softened_rect";
    if (cfg.experiment == "gaussian_delay") return "gaussian";
    return "area_sweep_piecewise";
  }();
  const std::string shape = pump.str("shape", expected_shape);
  if (shape != expected_shape) {
    throw ConfigError("config.pump.shape: experiment '" + cfg.experiment +
                      "' uses shape '" + expected_shape + "', got '" + shape + "'");
  }

  if (cfg.experiment == "cw") {
    cfg.pump_amplitude_mev = pump.number("amplitude_mev", cfg.pump_amplitude_mev);
    cfg.cw_periods = pump.integer("periods_before", cfg.cw_periods);
  } else if (cfg.experiment == "delta") {
    cfg.delta_area_pi = pump.number("area_pi", cfg.delta_area_pi);
  } else if (cfg.experiment == "rect") {
    cfg.pump_amplitude_mev = pump.number("amplitude_mev", cfg.pump_amplitude_mev);
    cfg.rect_periods = pump.integer("periods", cfg.rect_periods);
  } else if (cfg.experiment == "softened") {
    cfg.pump_amplitude_mev = pump.number("amplitude_mev", cfg.pump_amplitude_mev);
    cfg.rect_periods = pump.integer("periods", cfg.rect_periods);
    cfg.softened_probe_after_start =
        pump.number("probe_after_start_ps", cfg.softened_probe_after_start);
  } else if (cfg.experiment == "gaussian_delay") {
    cfg.gaussian_area_pi = pump.number("area_pi", cfg.gaussian_area_pi);
    cfg.gaussian_sigma_ps = pump.number("sigma_ps", cfg.gaussian_sigma_ps);
  } else if (cfg.experiment == "area_sweep") {
    if (pump.has("fwhm_ps")) {
      cfg.area_sigma_ps = pump.number("fwhm_ps", 12.0) / 2.3548200450309493;
    }
    cfg.area_sigma_ps = pump.number("sigma_ps", cfg.area_sigma_ps);
    cfg.area_t_probe_ps = pump.number("t_probe_ps", cfg.area_t_probe_ps);
    cfg.area_prep_pi = pump.number("prep_area_pi", cfg.area_prep_pi);
  }
  pump.finish();
}

}  // namespace

ExperimentConfig RunConfig::engine() const {
  ExperimentConfig e;
  e.probe_area = area_pi_to_rad(probe_area_pi);
  e.probe_sigma = probe_sigma_ps;
  e.n_phases = n_phases;
  e.dt = dt_fs * 1e-3;
  e.workers = workers;
  e.normalization = normalization;
  e.gamma = gamma_inv_ps;
  e.window_ps = window_ps;
  e.zero_pad_factor = zero_pad_factor;
  e.energy_min = energy_min_mev;
  e.energy_max = energy_max_mev;
  e.sample_dt = sample_dt_ps;
  return e;
}

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  StrictView root(doc, "config");

  RunConfig cfg;
  cfg.experiment = root.required_str("experiment");
  static const std::set<std::string> known = {
      "cw", "delta", "rect", "softened", "gaussian_delay", "area_sweep"};
  if (known.count(cfg.experiment) == 0) {
    throw ConfigError("config.experiment: unknown experiment '" + cfg.experiment + "'");
  }

  if (root.has("probe")) {
    const StrictView probe = root.object("probe");
    cfg.probe_area_pi = probe.number("area_pi", cfg.probe_area_pi);
    cfg.probe_sigma_ps = probe.number("sigma_ps", cfg.probe_sigma_ps);
    probe.finish();
    if (!(cfg.probe_sigma_ps > 0.0)) {
      throw ConfigError("config.probe.sigma_ps: must be > 0");
    }
  }

  if (root.has("phase_cycle")) {
    const StrictView pc = root.object("phase_cycle");
    cfg.n_phases = pc.integer("n_phases", cfg.n_phases);
    pc.finish();
  }

  if (root.has("spectrum")) {
    const StrictView sp = root.object("spectrum");
    cfg.gamma_inv_ps = sp.number("gamma_inv_ps", cfg.gamma_inv_ps);
    if (sp.has("window_ps")) cfg.window_ps = sp.number("window_ps", 0.0);
    cfg.zero_pad_factor = sp.integer("zero_pad_factor", cfg.zero_pad_factor);
    cfg.energy_min_mev = sp.number("energy_min_mev", cfg.energy_min_mev);
    cfg.energy_max_mev = sp.number("energy_max_mev", cfg.energy_max_mev);
    cfg.sample_dt_ps = sp.number("sample_dt_ps", cfg.sample_dt_ps);
    sp.finish();
    if (cfg.gamma_inv_ps < 0.0) throw ConfigError("config.spectrum.gamma_inv_ps: must be >= 0");
    if (!(cfg.energy_max_mev > cfg.energy_min_mev)) {
      throw ConfigError("config.spectrum: energy_max_mev must exceed energy_min_mev");
    }
  }

  cfg.dt_fs = root.number("dt_fs", cfg.dt_fs);
  if (!(cfg.dt_fs > 0.0)) throw ConfigError("config.dt_fs: must be > 0");
  cfg.workers = root.integer("workers", cfg.workers);
  cfg.normalization = sweep_normalization_from_string(root.str("normalize", "reference"));

  {
    const StrictView sweep = root.object("sweep");
    cfg.sweep_axis = sweep.str("axis", default_axis_for(cfg.experiment));
    if (cfg.sweep_axis != default_axis_for(cfg.experiment)) {
      throw ConfigError("config.sweep.axis: experiment '" + cfg.experiment +
                        "' sweeps '" + default_axis_for(cfg.experiment) + "'");
    }
    if (sweep.has("values")) {
      cfg.sweep_values = sweep.number_array("values");
    } else {
      const double start = sweep.number("start", 0.0);
      const double stop = sweep.number("stop", 0.0);
      const int count = sweep.integer("count", 0);
      if (count < 1) throw ConfigError("config.sweep.count: must be >= 1");
      for (int i = 0; i < count; ++i) {
        cfg.sweep_values.push_back(
            count == 1 ? start
                       : start + (stop - start) * static_cast<double>(i) /
                             static_cast<double>(count - 1));
      }
    }
    sweep.finish();
    if (cfg.sweep_values.empty()) throw ConfigError("config.sweep.values: empty sweep axis");
  }

  if (root.has("pump")) parse_pump(root.object("pump"), cfg);

  if (root.has("output")) {
    const StrictView out = root.object("output");
    cfg.out_dir = out.str("dir", cfg.out_dir);
    cfg.out_format = out.str("format", cfg.out_format);
    cfg.out_prefix = out.str("prefix", cfg.out_prefix);
    out.finish();
    if (cfg.out_format != "csv" && cfg.out_format != "json") {
      throw ConfigError("config.output.format: expected 'csv' or 'json'");
    }
  }
  if (cfg.out_prefix.empty()) cfg.out_prefix = cfg.experiment;

  root.finish();
  return cfg;
}

RunConfig parse_run_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

std::string echo_config_json(const RunConfig& cfg) {
  ordered_json doc;
  doc["experiment"] = cfg.experiment;

  ordered_json pump;
  if (cfg.experiment == "cw") {
    pump = {{"shape", "cw_step"},
            {"amplitude_mev", cfg.pump_amplitude_mev},
            {"periods_before", cfg.cw_periods}};
  } else if (cfg.experiment == "delta") {
    pump = {{"shape", "gaussian"}, {"area_pi", cfg.delta_area_pi}};
  } else if (cfg.experiment == "rect") {
    pump = {{"shape", "rectangular"},
            {"amplitude_mev", cfg.pump_amplitude_mev},
            {"periods", cfg.rect_periods}};
  } else if (cfg.experiment == "softened") {
    pump = {{"shape", "softened_rect"},
            {"amplitude_mev", cfg.pump_amplitude_mev},
            {"periods", cfg.rect_periods},
            {"probe_after_start_ps", cfg.softened_probe_after_start}};
  } else if (cfg.experiment == "gaussian_delay") {
    pump = {{"shape", "gaussian"},
            {"area_pi", cfg.gaussian_area_pi},
            {"sigma_ps", cfg.gaussian_sigma_ps}};
  } else {
    pump = {{"shape", "area_sweep_piecewise"},
            {"sigma_ps", cfg.area_sigma_ps},
            {"t_probe_ps", cfg.area_t_probe_ps},
            {"prep_area_pi", cfg.area_prep_pi}};
  }
  doc["pump"] = pump;

  doc["probe"] = {{"area_pi", cfg.probe_area_pi}, {"sigma_ps", cfg.probe_sigma_ps}};
  doc["phase_cycle"] = {{"n_phases", cfg.n_phases}};
  ordered_json spectrum = {{"gamma_inv_ps", cfg.gamma_inv_ps},
                           {"zero_pad_factor", cfg.zero_pad_factor},
                           {"energy_min_mev", cfg.energy_min_mev},
                           {"energy_max_mev", cfg.energy_max_mev},
                           {"sample_dt_ps", cfg.sample_dt_ps}};
  if (cfg.window_ps) spectrum["window_ps"] = *cfg.window_ps;
  doc["spectrum"] = spectrum;
  doc["dt_fs"] = cfg.dt_fs;
  doc["workers"] = cfg.workers;
  doc["normalize"] = to_string(cfg.normalization);
  doc["sweep"] = {{"axis", cfg.sweep_axis}, {"values", cfg.sweep_values}};
  doc["output"] = {{"dir", cfg.out_dir},
                   {"format", cfg.out_format},
                   {"prefix", cfg.out_prefix}};
  return doc.dump(2);
}

SweepResult execute(const RunConfig& cfg) {
  const ExperimentConfig engine = cfg.engine();
  if (cfg.experiment == "cw") {
    return exp_cw(cfg.sweep_values, engine, cfg.pump_amplitude_mev, cfg.cw_periods);
  }
  if (cfg.experiment == "delta") {
    return exp_delta(cfg.sweep_values, engine, area_pi_to_rad(cfg.delta_area_pi));
  }
  if (cfg.experiment == "rect") {
    return exp_rect(cfg.sweep_values, engine, cfg.pump_amplitude_mev, cfg.rect_periods);
  }
  if (cfg.experiment == "softened") {
    return exp_softened(cfg.sweep_values, engine, cfg.pump_amplitude_mev,
                        cfg.rect_periods, cfg.softened_probe_after_start);
  }
  if (cfg.experiment == "gaussian_delay") {
    return exp_gaussian_delay(cfg.sweep_values, engine,
                              area_pi_to_rad(cfg.gaussian_area_pi),
                              cfg.gaussian_sigma_ps);
  }
  if (cfg.experiment == "area_sweep") {
    std::vector<double> areas;
    areas.reserve(cfg.sweep_values.size());
    for (double a : cfg.sweep_values) areas.push_back(area_pi_to_rad(a));
    return exp_area_sweep(areas, engine, cfg.area_sigma_ps, cfg.area_t_probe_ps,
                          area_pi_to_rad(cfg.area_prep_pi));
  }
  throw ConfigError("execute: unknown experiment '" + cfg.experiment + "'");
}

}  // namespace pumpprobe
