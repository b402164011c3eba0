// Probe-signal extraction by phase cycling.
//
// The full nonlinear dynamics is run once per probe phase Phi_k = 2*pi*k/N
// and the coherence is projected onto the e^{+i*n*Phi} channel:
//   P_n(t) = (1/N) * sum_k P(t, Phi_k) * e^{-i*n*Phi_k},
// the discrete Fourier coefficient of the phase series.  For n = 1 this is
// the probe-linear polarization; it is exact for band-limited phase
// dependence, which the weak probe guarantees with plenty of margin.

#pragma once

#include "pumpprobe/grid.hpp"
#include "pumpprobe/pulses.hpp"
#include "pumpprobe/units.hpp"

namespace pumpprobe {

struct PhaseCycleConfig {
  int n_phases = 8;
  int order = 1;  // harmonic n to extract
  double probe_area = 0.02 * constants::pi;  // rad
  double probe_sigma = 0.01;                 // ps
  double probe_delay = 0.0;                  // ps (probe pulse center)

  void validate() const {
    if (n_phases < 2 * std::abs(order) + 2) {
      throw ConfigError("phase cycle: n_phases must be >= 2*|order| + 2");
    }
  }
};

// Runs the ground-state dynamics under pump + phased probe for every phase
// and returns P_n(t) on the grid.  The reduction over phases is an ordered
// sum, so results are bit-reproducible.
PolarizationTrace run_phase_cycle(const CompositeField& pump,
                                  const PhaseCycleConfig& cfg,
                                  const SimGrid& grid);

// Relative discrepancy max_t|P_n^{(N)} - P_n^{(8N)}| / max_t|P_n^{(8N)}|
// between the configured phase count and an 8x refinement (0 if the signal
// vanishes identically).
double convergence_check(const CompositeField& pump, const PhaseCycleConfig& cfg,
                         const SimGrid& grid);

}  // namespace pumpprobe
