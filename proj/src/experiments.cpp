#include "pumpprobe/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "pumpprobe/dynamics.hpp"

namespace pumpprobe {

namespace {

using ordered_json = nlohmann::ordered_json;

// Grid with the probe center exactly on a node, covering [t_need, t_end_need].
SimGrid probe_anchored_grid(double tau, double t_need, double t_end_need, double dt) {
  const auto back = static_cast<std::size_t>(
      std::max(1.0, std::ceil((tau - t_need) / dt - 1e-9)));
  const auto fwd = static_cast<std::size_t>(
      std::max(1.0, std::ceil((t_end_need - tau) / dt - 1e-9)));
  return SimGrid{tau - dt * static_cast<double>(back), dt, back + fwd};
}

// cw grid anchored at the last exact Rabi-cycle ground-state instant
// (t_on + k*T_R) at least `margin` before the probe; the anchor is snapped to
// the probe grid (<= dt/2 adjustment of a ~500 ps old switch-on).
SimGrid cw_anchored_grid(double tau, double t_on, double period, double margin,
                         double t_end_need, double dt) {
  const double u = (tau - t_on) / period;
  const double phase = u - std::floor(u);
  const double whole = std::ceil(margin / period - phase + 1e-12);
  const double back_time = (phase + whole) * period;
  const auto back = static_cast<std::size_t>(std::llround(back_time / dt));
  const auto fwd = static_cast<std::size_t>(
      std::max(1.0, std::ceil((t_end_need - tau) / dt - 1e-9)));
  return SimGrid{tau - dt * static_cast<double>(back), dt, back + fwd};
}

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& fn) {
  auto n_threads =
      workers > 0 ? static_cast<unsigned>(workers) : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, count));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

Spectrum spectrum_for_grid(const CompositeField& pump, double tau,
                           const SimGrid& grid, const ExperimentConfig& cfg) {
  PhaseCycleConfig pc;
  pc.n_phases = cfg.n_phases;
  pc.order = 1;
  pc.probe_area = cfg.probe_area;
  pc.probe_sigma = cfg.probe_sigma;
  pc.probe_delay = tau;
  const PolarizationTrace trace = run_phase_cycle(pump, pc, grid);
  return compute_spectrum(trace, cfg.spectrum_at(tau));
}

ordered_json base_metadata(const std::string& experiment,
                           const ExperimentConfig& cfg,
                           const std::string& axis_name,
                           const std::vector<double>& axis_values) {
  ordered_json meta;
  meta["experiment"] = experiment;
  meta["probe"] = {{"area_pi", cfg.probe_area / constants::pi},
                   {"sigma_ps", cfg.probe_sigma}};
  meta["phase_cycle"] = {{"n_phases", cfg.n_phases}, {"order", 1}};
  meta["dt_ps"] = cfg.dt;
  meta["spectrum"] = {{"gamma_inv_ps", cfg.gamma},
                      {"window_ps", cfg.window_length()},
                      {"zero_pad_factor", cfg.zero_pad_factor},
                      {"energy_min_mev", cfg.energy_min},
                      {"energy_max_mev", cfg.energy_max},
                      {"sample_dt_ps", cfg.sample_dt}};
  meta["normalize"] = to_string(cfg.normalization);
  meta["sweep"] = {{"axis", axis_name}, {"values", axis_values}};
  return meta;
}

// Gathers per-row spectra (parallel, writes by index), checks axis
// consistency and applies the sweep normalization.
SweepResult assemble_sweep(
    const std::string& experiment, const std::string& axis_name,
    const std::vector<double>& axis_values, const std::vector<double>& delays,
    const ExperimentConfig& cfg,
    const std::function<Spectrum(std::size_t)>& row_fn,
    const std::function<Spectrum()>& reference_fn, ordered_json meta) {
  if (axis_values.empty()) throw ConfigError(experiment + ": empty sweep axis");

  std::vector<Spectrum> rows(axis_values.size());
  parallel_for(axis_values.size(), cfg.workers,
               [&](std::size_t i) { rows[i] = row_fn(i); });

  SweepResult result;
  result.experiment = experiment;
  result.axis_name = axis_name;
  result.axis_values = axis_values;
  result.probe_delays = delays;
  result.energies = rows.front().energies;
  result.values.reserve(rows.size());
  for (auto& row : rows) {
    if (row.energies.size() != result.energies.size()) {
      throw NumericError(experiment + ": inconsistent energy axes across rows");
    }
    result.values.push_back(std::move(row.values));
  }

  switch (cfg.normalization) {
    case SweepNormalization::none:
      result.normalization_mode = "none";
      result.normalization_ref = 1.0;
      break;
    case SweepNormalization::reference: {
      const Spectrum reference = reference_fn();
      const double ref = central_peak_amplitude(reference);
      if (ref == 0.0) {
        throw NumericError(experiment + ": reference spectrum has no zero-energy peak");
      }
      for (auto& row : result.values)
        for (double& v : row) v /= ref;
      result.normalization_mode = "reference";
      result.normalization_ref = ref;
      break;
    }
    case SweepNormalization::global: {
      const double ref = result.max_abs_value();
      if (ref == 0.0) throw NumericError(experiment + ": map is identically zero");
      for (auto& row : result.values)
        for (double& v : row) v /= ref;
      result.normalization_mode = "global";
      result.normalization_ref = ref;
      break;
    }
    case SweepNormalization::per_axis: {
      for (auto& row : result.values) {
        double ref = 0.0;
        for (double v : row) ref = std::max(ref, std::abs(v));
        if (ref == 0.0) continue;
        for (double& v : row) v /= ref;
      }
      result.normalization_mode = "per_axis";
      result.normalization_ref = 1.0;
      result.notes.push_back("rows normalized individually to their own max |alpha|");
      break;
    }
  }

  meta["probe_delays_ps"] = result.probe_delays;
  result.metadata_json = meta.dump(2);
  return result;
}

}  // namespace

std::string to_string(SweepNormalization mode) {
  switch (mode) {
    case SweepNormalization::reference: return "reference";
    case SweepNormalization::global: return "global";
    case SweepNormalization::per_axis: return "per_axis";
    case SweepNormalization::none: return "none";
  }
  return "none";
}

SweepNormalization sweep_normalization_from_string(const std::string& name) {
  if (name == "reference") return SweepNormalization::reference;
  if (name == "global") return SweepNormalization::global;
  if (name == "per_axis") return SweepNormalization::per_axis;
  if (name == "none") return SweepNormalization::none;
  throw ConfigError("unknown normalization mode: " + name);
}

double SweepResult::max_abs_value() const {
  double m = 0.0;
  for (const auto& row : values)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

Spectrum SweepResult::row_spectrum(std::size_t i) const {
  Spectrum s;
  s.energies = energies;
  s.values = values.at(i);
  s.normalization_mode = normalization_mode;
  s.normalization_ref = normalization_ref;
  return s;
}

Spectrum probe_spectrum(const CompositeField& pump, double tau,
                        const ExperimentConfig& cfg) {
  double t_need = tau - 1.0;
  if (!pump.terms.empty()) {
    const double pump_begin = pump.support_begin();
    if (!std::isfinite(pump_begin)) {
      throw ConfigError("probe_spectrum: pump support is unbounded; use exp_cw");
    }
    t_need = std::min(t_need, pump_begin - 1.0);
  }
  const SimGrid grid =
      probe_anchored_grid(tau, t_need, tau + cfg.window_length(), cfg.dt);
  return spectrum_for_grid(pump, tau, grid, cfg);
}

SweepResult exp_cw(const std::vector<double>& delays, const ExperimentConfig& cfg,
                   double amplitude_mev, int n_periods) {
  const double omega = mev_to_rad_per_ps(amplitude_mev);
  const double period = 2.0 * constants::pi / omega;
  const double t_on = -static_cast<double>(n_periods) * period;
  const CompositeField pump{{cw_step(omega, t_on)}};
  constexpr double kMargin = 2.0;  // ps of pump-only lead before the probe

  auto row_grid = [&](double tau) {
    return cw_anchored_grid(tau, t_on, period, kMargin,
                            tau + cfg.window_length(), cfg.dt);
  };

  ordered_json meta = base_metadata("cw", cfg, "delay_ps", delays);
  meta["pump"] = {{"shape", "cw_step"},
                  {"amplitude_mev", amplitude_mev},
                  {"periods_before", n_periods},
                  {"t_on_ps", t_on}};

  return assemble_sweep(
      "cw", "delay_ps", delays, delays, cfg,
      [&](std::size_t i) {
        return spectrum_for_grid(pump, delays[i], row_grid(delays[i]), cfg);
      },
      [&]() { return spectrum_for_grid(pump, 0.0, row_grid(0.0), cfg); },
      std::move(meta));
}

SweepResult exp_delta(const std::vector<double>& delays, const ExperimentConfig& cfg,
                      double area) {
  // delta-limit pump realized as a Gaussian with sigma_uf = sigma_probe.
  const CompositeField pump{{gaussian(area, cfg.probe_sigma, 0.0)}};

  ordered_json meta = base_metadata("delta", cfg, "delay_ps", delays);
  meta["pump"] = {{"shape", "gaussian"},
                  {"area_pi", area / constants::pi},
                  {"sigma_ps", cfg.probe_sigma},
                  {"center_ps", 0.0}};

  return assemble_sweep(
      "delta", "delay_ps", delays, delays, cfg,
      [&](std::size_t i) { return probe_spectrum(pump, delays[i], cfg); },
      [&]() { return probe_spectrum(CompositeField{}, 0.0, cfg); },
      std::move(meta));
}

SweepResult exp_rect(const std::vector<double>& delays, const ExperimentConfig& cfg,
                     double amplitude_mev, int n_periods) {
  const double omega = mev_to_rad_per_ps(amplitude_mev);
  const double half = 0.5 * static_cast<double>(n_periods) * 2.0 * constants::pi / omega;
  const CompositeField pump{{rectangular(omega, -half, half)}};

  ordered_json meta = base_metadata("rect", cfg, "delay_ps", delays);
  meta["pump"] = {{"shape", "rectangular"},
                  {"amplitude_mev", amplitude_mev},
                  {"t_on_ps", -half},
                  {"t_off_ps", half}};

  return assemble_sweep(
      "rect", "delay_ps", delays, delays, cfg,
      [&](std::size_t i) { return probe_spectrum(pump, delays[i], cfg); },
      [&]() { return probe_spectrum(CompositeField{}, 0.0, cfg); },
      std::move(meta));
}

SweepResult exp_softened(const std::vector<double>& edges, const ExperimentConfig& cfg,
                         double amplitude_mev, int n_periods,
                         double probe_after_start) {
  const double omega = mev_to_rad_per_ps(amplitude_mev);
  const double half = 0.5 * static_cast<double>(n_periods) * 2.0 * constants::pi / omega;

  std::vector<CompositeField> pumps;
  std::vector<double> taus;
  std::vector<std::string> notes;
  for (double edge : edges) {
    const CompositeField pump{{softened_rect(omega, -half, half, edge)}};
    const double requested = -half + probe_after_start;

    // Snap the probe to the nearest pump-only occupation maximum.
    const SimGrid scan = SimGrid::from_bounds(-half, half + 0.5 * edge + 1.0, cfg.dt);
    const std::vector<double> occ = pump_only_occupation(pump, scan);
    double best = requested;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < occ.size(); ++i) {
      if (occ[i] > occ[i - 1] && occ[i] >= occ[i + 1]) {
        const double t = scan.time(i);
        if (std::abs(t - requested) < best_dist) {
          best_dist = std::abs(t - requested);
          best = t;
        }
      }
    }
    pumps.push_back(pump);
    taus.push_back(best);
    std::ostringstream note;
    note << "edge " << edge << " ps: probe snapped from " << requested << " to "
         << best << " ps (occupation maximum, shift "
         << best - requested << " ps)";
    notes.push_back(note.str());
  }

  ordered_json meta = base_metadata("softened", cfg, "edge_ps", edges);
  meta["pump"] = {{"shape", "softened_rect"},
                  {"amplitude_mev", amplitude_mev},
                  {"t_on_ps", -half},
                  {"t_off_ps", half},
                  {"probe_after_start_ps", probe_after_start}};

  SweepResult result = assemble_sweep(
      "softened", "edge_ps", edges, taus, cfg,
      [&](std::size_t i) { return probe_spectrum(pumps[i], taus[i], cfg); },
      [&]() { return probe_spectrum(CompositeField{}, 0.0, cfg); },
      std::move(meta));
  result.notes.insert(result.notes.end(), notes.begin(), notes.end());
  return result;
}

SweepResult exp_gaussian_delay(const std::vector<double>& delays,
                               const ExperimentConfig& cfg, double area,
                               double sigma) {
  const CompositeField pump{{gaussian(area, sigma, 0.0)}};

  ordered_json meta = base_metadata("gaussian_delay", cfg, "delay_ps", delays);
  meta["pump"] = {{"shape", "gaussian"},
                  {"area_pi", area / constants::pi},
                  {"sigma_ps", sigma},
                  {"center_ps", 0.0}};

  return assemble_sweep(
      "gaussian_delay", "delay_ps", delays, delays, cfg,
      [&](std::size_t i) { return probe_spectrum(pump, delays[i], cfg); },
      [&]() { return probe_spectrum(CompositeField{}, 0.0, cfg); },
      std::move(meta));
}

SweepResult exp_area_sweep(const std::vector<double>& areas,
                           const ExperimentConfig& cfg, double sigma_p,
                           double t_probe, double alpha_prep) {
  std::vector<double> areas_pi(areas.size());
  for (std::size_t i = 0; i < areas.size(); ++i) areas_pi[i] = areas[i] / constants::pi;

  ordered_json meta = base_metadata("area_sweep", cfg, "pulse_area_pi", areas_pi);
  meta["pump"] = {{"shape", "area_sweep_piecewise"},
                  {"sigma_ps", sigma_p},
                  {"t_probe_ps", t_probe},
                  {"prep_area_pi", alpha_prep / constants::pi}};

  SweepResult result = assemble_sweep(
      "area_sweep", "pulse_area_pi", areas_pi,
      std::vector<double>(areas.size(), t_probe), cfg,
      [&](std::size_t i) {
        const CompositeField pump{
            {area_sweep_piecewise(areas[i], t_probe, sigma_p, alpha_prep)}};
        return probe_spectrum(pump, t_probe, cfg);
      },
      [&]() { return probe_spectrum(CompositeField{}, 0.0, cfg); },
      std::move(meta));
  result.notes.push_back(
      "area_sweep envelope is discontinuous at t_probe as defined: the "
      "half-Gaussian switch-off peaks at twice the plateau amplitude");
  return result;
}

ProbeDynamics probe_dynamics_trace(const CompositeField& pump, double tau,
                                   const ExperimentConfig& cfg) {
  double t_need = tau - 1.0;
  if (!pump.terms.empty()) {
    const double pump_begin = pump.support_begin();
    if (std::isfinite(pump_begin)) t_need = std::min(t_need, pump_begin - 1.0);
  }
  const SimGrid grid =
      probe_anchored_grid(tau, t_need, tau + cfg.window_length(), cfg.dt);

  PhaseCycleConfig pc;
  pc.n_phases = cfg.n_phases;
  pc.probe_area = cfg.probe_area;
  pc.probe_sigma = cfg.probe_sigma;
  pc.probe_delay = tau;

  ProbeDynamics out;
  out.raw = run_phase_cycle(pump, pc, grid);
  out.damped = out.raw;
  for (std::size_t i = 0; i < out.damped.values.size(); ++i) {
    const double s = std::max(out.damped.time(i) - tau, 0.0);
    out.damped.values[i] *= std::exp(-cfg.gamma * s);
  }
  return out;
}

std::vector<double> pump_only_occupation(const CompositeField& pump,
                                         const SimGrid& grid) {
  std::vector<double> occ(grid.n_points());
  evolve_observed(ground_state(), pump, grid,
                  [&](std::size_t i, double, const TwoLevelState& s) {
                    occ[i] = std::norm(s.c_x);
                  });
  return occ;
}

}  // namespace pumpprobe
