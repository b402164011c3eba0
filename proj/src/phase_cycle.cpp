#include "pumpprobe/phase_cycle.hpp"

#include <algorithm>
#include <cmath>

#include "pumpprobe/dynamics.hpp"

namespace pumpprobe {

PolarizationTrace run_phase_cycle(const CompositeField& pump,
                                  const PhaseCycleConfig& cfg,
                                  const SimGrid& grid) {
  cfg.validate();

  PolarizationTrace out;
  out.t0 = grid.t_start;
  out.dt = grid.dt;
  out.values.assign(grid.n_points(), cplx{0.0, 0.0});

  const auto n = static_cast<double>(cfg.n_phases);
  for (int k = 0; k < cfg.n_phases; ++k) {
    const double phi = 2.0 * constants::pi * static_cast<double>(k) / n;

    CompositeField field = pump;
    PulseEnvelope probe = gaussian(cfg.probe_area, cfg.probe_sigma, 0.0);
    probe.delay = cfg.probe_delay;
    probe.phase = phi;
    field.terms.push_back(probe);

    const cplx weight =
        std::polar(1.0 / n, -static_cast<double>(cfg.order) * phi);
    evolve_observed(ground_state(), field, grid,
                    [&](std::size_t i, double, const TwoLevelState& s) {
                      out.values[i] += weight * coherence(s);
                    });
  }
  return out;
}

double convergence_check(const CompositeField& pump, const PhaseCycleConfig& cfg,
                         const SimGrid& grid) {
  PhaseCycleConfig fine = cfg;
  fine.n_phases = 8 * cfg.n_phases;

  const PolarizationTrace coarse_trace = run_phase_cycle(pump, cfg, grid);
  const PolarizationTrace fine_trace = run_phase_cycle(pump, fine, grid);

  double max_diff = 0.0;
  double max_ref = 0.0;
  for (std::size_t i = 0; i < fine_trace.values.size(); ++i) {
    max_diff = std::max(max_diff,
                        std::abs(coarse_trace.values[i] - fine_trace.values[i]));
    max_ref = std::max(max_ref, std::abs(fine_trace.values[i]));
  }
  if (max_ref == 0.0) return 0.0;
  return max_diff / max_ref;
}

}  // namespace pumpprobe
