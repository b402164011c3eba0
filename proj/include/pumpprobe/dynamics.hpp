// Rotating-frame dynamics of a resonantly driven two-level emitter.
//
// State |psi> = c_g|g> + c_x|x> evolves under
//   H = -(hbar/2) (conj(Omega(t)) |g><x| + Omega(t) |x><g|),
// i.e.
//   dc_g/dt = (i/2) conj(Omega) c_x,   dc_x/dt = (i/2) Omega c_g.
// There is no dissipation in the equations of motion; damping enters only in
// the spectroscopy stage.  Integration is classical fixed-step RK4 with the
// envelope evaluated at t, t+dt/2 and t+dt (discontinuous envelopes are
// sampled pointwise, Theta(0) = 1).

#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "pumpprobe/errors.hpp"
#include "pumpprobe/grid.hpp"

namespace pumpprobe {

// Amplitude pair (c_g, c_x); unitary evolution keeps |c_g|^2 + |c_x|^2 = 1.
struct TwoLevelState {
  cplx c_g{1.0, 0.0};
  cplx c_x{0.0, 0.0};

  double norm_sq() const { return std::norm(c_g) + std::norm(c_x); }
};

inline TwoLevelState ground_state() { return TwoLevelState{}; }

// Time derivative of the state for a given instantaneous envelope value.
inline TwoLevelState rhs(const TwoLevelState& s, cplx omega) {
  constexpr cplx i_half{0.0, 0.5};
  return TwoLevelState{i_half * std::conj(omega) * s.c_x,
                       i_half * omega * s.c_g};
}

// Microscopic optical coherence <g|psi><psi|x> = c_x * conj(c_g).
inline cplx coherence(const TwoLevelState& s) {
  return s.c_x * std::conj(s.c_g);
}

namespace detail {

inline TwoLevelState axpy(const TwoLevelState& s, double a, const TwoLevelState& d) {
  return TwoLevelState{s.c_g + a * d.c_g, s.c_x + a * d.c_x};
}

inline cplx checked_envelope(cplx v, double t) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    std::ostringstream msg;
    msg << "non-finite envelope value at t = " << t << " ps";
    throw NumericError(msg.str());
  }
  return v;
}

}  // namespace detail

// Integrates the state over the grid, calling observer(index, t, state) at
// every grid point including the initial one.  Deterministic: identical
// inputs produce bit-identical trajectories.
template <typename Envelope, typename Observer>
void evolve_observed(const TwoLevelState& initial, Envelope&& envelope,
                     const SimGrid& grid, Observer&& observer) {
  TwoLevelState s = initial;
  observer(std::size_t{0}, grid.t_start, s);
  const double h = grid.dt;
  for (std::size_t m = 0; m < grid.n_steps; ++m) {
    const double t = grid.time(m);
    const cplx om_a = detail::checked_envelope(envelope(t), t);
    const cplx om_b = detail::checked_envelope(envelope(t + 0.5 * h), t + 0.5 * h);
    const cplx om_c = detail::checked_envelope(envelope(t + h), t + h);

    const TwoLevelState k1 = rhs(s, om_a);
    const TwoLevelState k2 = rhs(detail::axpy(s, 0.5 * h, k1), om_b);
    const TwoLevelState k3 = rhs(detail::axpy(s, 0.5 * h, k2), om_b);
    const TwoLevelState k4 = rhs(detail::axpy(s, h, k3), om_c);

    s.c_g += (h / 6.0) * (k1.c_g + 2.0 * k2.c_g + 2.0 * k3.c_g + k4.c_g);
    s.c_x += (h / 6.0) * (k1.c_x + 2.0 * k2.c_x + 2.0 * k3.c_x + k4.c_x);
    observer(m + 1, grid.time(m + 1), s);
  }
}

// Full trajectory at all grid times (n_steps + 1 states).
template <typename Envelope>
std::vector<TwoLevelState> evolve(const TwoLevelState& initial,
                                  Envelope&& envelope, const SimGrid& grid) {
  std::vector<TwoLevelState> traj;
  traj.reserve(grid.n_points());
  evolve_observed(initial, envelope, grid,
                  [&traj](std::size_t, double, const TwoLevelState& s) {
                    traj.push_back(s);
                  });
  return traj;
}

}  // namespace pumpprobe
