#include "pumpprobe/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "pumpprobe/dynamics.hpp"
#include "pumpprobe/experiments.hpp"
#include "pumpprobe/phase_cycle.hpp"
#include "pumpprobe/spectrum.hpp"
#include "pumpprobe/units.hpp"

namespace pumpprobe {

namespace {

struct RabiErrors {
  double trajectory = 0.0;  // max | |c_x|^2 - sin^2(Omega t / 2) |
  double norm_drift = 0.0;  // max | |psi|^2 - 1 |
};

RabiErrors rabi_against_analytic(double omega, double t_end, double dt) {
  const SimGrid grid = SimGrid::from_bounds(0.0, t_end, dt);
  const auto drive = [omega](double) { return cplx{omega, 0.0}; };
  RabiErrors err;
  evolve_observed(ground_state(), drive, grid,
                  [&](std::size_t, double t, const TwoLevelState& s) {
                    const double exact = std::pow(std::sin(0.5 * omega * t), 2);
                    err.trajectory =
                        std::max(err.trajectory, std::abs(std::norm(s.c_x) - exact));
                    err.norm_drift =
                        std::max(err.norm_drift, std::abs(s.norm_sq() - 1.0));
                  });
  return err;
}

// Half width at half maximum of a positive peak around E = 0, by linear
// interpolation of the half-height crossings.
double measure_hwhm(const Spectrum& spec) {
  std::size_t imax = 0;
  for (std::size_t i = 1; i < spec.values.size(); ++i) {
    if (spec.values[i] > spec.values[imax]) imax = i;
  }
  const double half = 0.5 * spec.values[imax];
  auto crossing = [&](int dir) -> double {
    std::size_t i = imax;
    while (true) {
      const std::size_t j = static_cast<std::size_t>(static_cast<long>(i) + dir);
      if (j == 0 || j + 1 >= spec.values.size()) return 0.0;
      if (spec.values[j] <= half) {
        const double v0 = spec.values[i];
        const double v1 = spec.values[j];
        const double frac = (v0 - half) / (v0 - v1);
        return spec.energies[i] + frac * (spec.energies[j] - spec.energies[i]);
      }
      i = j;
    }
  };
  const double lo = crossing(-1);
  const double hi = crossing(+1);
  return 0.5 * (std::abs(hi - spec.energies[imax]) + std::abs(spec.energies[imax] - lo));
}

}  // namespace

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.pass; });
}

std::string ValidationReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    doc["checks"].push_back({{"name", c.name},
                             {"measured", c.measured},
                             {"bound", c.bound},
                             {"pass", c.pass}});
  }
  doc["warnings"] = warnings;
  doc["pass"] = all_pass();
  return doc.dump(2);
}

std::string ValidationReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": measured " << c.measured
        << " vs bound " << c.bound << "\n";
  }
  for (const auto& w : warnings) out << "WARN " << w << "\n";
  return out.str();
}

ValidationReport run_validation(double dt_fs, double gamma) {
  ValidationReport report;
  const double dt = dt_fs * 1e-3;
  const double omega = mev_to_rad_per_ps(2.0);
  const double period = 2.0 * constants::pi / omega;

  auto add = [&report](const std::string& name, double measured, double bound,
                       bool pass) {
    report.checks.push_back(ValidationCheck{name, measured, bound, pass});
  };

  // Analytic resonant Rabi oracle and norm conservation.
  {
    const RabiErrors err = rabi_against_analytic(omega, 20.0 * period, dt);
    add("rk4_rabi_accuracy", err.trajectory, 1e-8, err.trajectory < 1e-8);
    add("norm_conservation", err.norm_drift, 1e-8, err.norm_drift < 1e-8);
  }

  // RK4 order: halving the step must shrink the error by >= 12.
  {
    const double coarse = rabi_against_analytic(omega, 10.0, 8e-3).trajectory;
    const double fine = rabi_against_analytic(omega, 10.0, 4e-3).trajectory;
    const double ratio = fine > 0.0 ? coarse / fine : 16.0;
    add("rk4_order_ratio", ratio, 12.0, ratio >= 12.0);
  }

  // Pump-free Lorentzian line: position and width.
  {
    ExperimentConfig cfg;
    cfg.dt = dt;
    cfg.gamma = gamma;
    const Spectrum spec = probe_spectrum(CompositeField{}, 0.0, cfg);
    for (const auto& w : spec.warnings) report.warnings.push_back("lorentzian_line: " + w);

    const auto peaks = peak_analysis(spec, 0.05);
    double peak_energy = 1e9;
    bool positive = false;
    for (const auto& p : peaks) {
      if (std::abs(p.energy) < std::abs(peak_energy)) {
        peak_energy = p.energy;
        positive = p.sign > 0;
      }
    }
    add("lorentzian_peak_energy_mev", std::abs(peak_energy), 0.02,
        std::abs(peak_energy) < 0.02 && positive);
    if (gamma > 0.0) {
      const double hwhm = measure_hwhm(spec);
      const double expected = constants::hbar * gamma;
      add("lorentzian_hwhm_error_mev", std::abs(hwhm - expected), 2e-3,
          std::abs(hwhm - expected) < 2e-3);
    }
  }

  // Phase-cycling convergence (8 vs 64 phases) for the default weak probe.
  {
    PhaseCycleConfig pc;
    const SimGrid grid = SimGrid::from_bounds(-1.0, 3.0, dt);
    const double disc = convergence_check(CompositeField{}, pc, grid);
    add("phase_cycle_convergence", disc, 1e-9, disc < 1e-9);
  }

  // Pulse areas against closed forms (quadrature step = dt).
  {
    double worst = 0.0;
    std::vector<PulseEnvelope> envelopes = {
        gaussian(constants::pi, 0.01, 0.0),
        rectangular(omega, -10.0 * period, 10.0 * period),
        softened_rect(omega, -10.0 * period, 10.0 * period, 0.0),
        softened_rect(omega, -10.0 * period, 10.0 * period, 6.3),
        softened_rect(omega, -10.0 * period, 10.0 * period, 12.6),
        area_sweep_piecewise(6.0 * constants::pi, 0.0, 12.0 / 2.3548200450309493,
                             2.0 * constants::pi),
    };
    for (const auto& env : envelopes) {
      const double declared = *env.declared_area();
      const double measured = quadrature_area(env, dt);
      worst = std::max(worst, std::abs(measured - declared) / declared);
    }
    add("pulse_area_conservation", worst, 1e-6, worst < 1e-6);
  }

  // cw periodicity: spectra at tau and tau + T_R.
  {
    ExperimentConfig cfg;
    cfg.dt = dt;
    cfg.gamma = gamma;
    cfg.normalization = SweepNormalization::none;
    const SweepResult map = exp_cw({0.37, 0.37 + period}, cfg);
    double diff = 0.0;
    for (std::size_t j = 0; j < map.energies.size(); ++j) {
      diff = std::max(diff, std::abs(map.values[0][j] - map.values[1][j]));
    }
    const double rel = diff / map.max_abs_value();
    add("cw_periodicity", rel, 1e-6, rel < 1e-6);
  }

  return report;
}

}  // namespace pumpprobe
