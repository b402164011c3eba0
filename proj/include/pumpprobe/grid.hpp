#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "pumpprobe/errors.hpp"

namespace pumpprobe {

using cplx = std::complex<double>;

// Uniform integration grid.  The step count is fixed at construction so the
// endpoint is hit exactly (t_end == t_start + n_steps*dt by definition).
struct SimGrid {
  double t_start = 0.0;
  double dt = 1e-3;  // ps (1 fs default)
  std::size_t n_steps = 0;

  // Builds a grid over [t_start, t_end]; (t_end - t_start)/dt must be an
  // integer to within 1e-6 steps, otherwise the span is rounded up.
  static SimGrid from_bounds(double t_start, double t_end, double dt) {
    if (!(dt > 0.0)) throw ConfigError("SimGrid: dt must be > 0");
    if (!(t_end > t_start)) throw ConfigError("SimGrid: t_end must be > t_start");
    const double span = (t_end - t_start) / dt;
    auto n = static_cast<std::size_t>(std::llround(span));
    if (span - static_cast<double>(n) > 1e-6) ++n;
    if (n == 0) n = 1;
    return SimGrid{t_start, dt, n};
  }

  double time(std::size_t i) const { return t_start + dt * static_cast<double>(i); }
  double t_end() const { return time(n_steps); }
  std::size_t n_points() const { return n_steps + 1; }
};

// Uniformly sampled complex coherence time series.
struct PolarizationTrace {
  double t0 = 0.0;
  double dt = 1e-3;
  std::vector<cplx> values;

  double time(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
  std::size_t size() const { return values.size(); }

  std::vector<double> times() const {
    std::vector<double> t(values.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = time(i);
    return t;
  }
};

}  // namespace pumpprobe
