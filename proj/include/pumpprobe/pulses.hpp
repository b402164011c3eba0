// Pump/probe envelope families.
//
// Every shape is a real-valued closed-form function of time (rad/ps); the
// complex phase factor e^{i*phase} and a time shift `delay` are applied by
// PulseEnvelope.  The total field is an ordered sum of envelope terms
// (CompositeField), Omega(t) = sum_k Omega_k(t - delay_k) * e^{i*phase_k}.
//
// Heaviside-type boundaries are inclusive (Theta(0) = 1).  Gaussians are
// truncated beyond 12 sigma where they are below 5e-32 of the peak.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pumpprobe/errors.hpp"
#include "pumpprobe/grid.hpp"
#include "pumpprobe/units.hpp"

namespace pumpprobe {

namespace detail {
inline constexpr double kGaussianCut = 12.0;  // support cut in units of sigma
}

// Normalized Gaussian: integral over all t equals `area`.
struct GaussianPulse {
  double area = 0.0;   // rad
  double sigma = 0.0;  // ps
  double center = 0.0;  // ps

  double value(double t) const {
    const double u = t - center;
    if (std::abs(u) > detail::kGaussianCut * sigma) return 0.0;
    const double peak = area / std::sqrt(2.0 * constants::pi * sigma * sigma);
    return peak * std::exp(-u * u / (2.0 * sigma * sigma));
  }
  double support_begin() const { return center - detail::kGaussianCut * sigma; }
  double support_end() const { return center + detail::kGaussianCut * sigma; }
};

// Constant drive switched on at t_on and never switched off.
struct CwStepPulse {
  double omega = 0.0;  // rad/ps
  double t_on = 0.0;   // ps

  double value(double t) const { return t >= t_on ? omega : 0.0; }
  double support_begin() const { return t_on; }
  double support_end() const { return std::numeric_limits<double>::infinity(); }

  double rabi_period() const { return 2.0 * constants::pi / omega; }
};

// Constant drive on the closed interval [t_on, t_off].
struct RectangularPulse {
  double omega = 0.0;
  double t_on = 0.0;
  double t_off = 0.0;

  double value(double t) const {
    return (t >= t_on && t <= t_off) ? omega : 0.0;
  }
  double support_begin() const { return t_on; }
  double support_end() const { return t_off; }
};

// Rectangular pulse whose switch-off is softened by a cos^2 ramp of duration
// edge (= Delta_T): constant on [t_on, t_off - edge/2), then
// omega*cos^2((pi/(2*edge))*(t - (t_off - edge/2))) until t_off + edge/2.
// The total area omega*(t_off - t_on) is independent of edge.
struct SoftenedRectPulse {
  double omega = 0.0;
  double t_on = 0.0;
  double t_off = 0.0;
  double edge = 0.0;  // ps

  double value(double t) const {
    if (edge == 0.0) return (t >= t_on && t <= t_off) ? omega : 0.0;
    const double seam = t_off - 0.5 * edge;
    if (t < t_on || t > t_off + 0.5 * edge) return 0.0;
    if (t < seam) return omega;
    const double c = std::cos(constants::pi / (2.0 * edge) * (t - seam));
    return omega * c * c;
  }
  double support_begin() const { return t_on; }
  double support_end() const { return t_off + 0.5 * edge; }
};

// Pulse-area-sweep pulse: a constant preparation plateau of area alpha_prep
// ending at t_probe, followed by a half-Gaussian switch-off of area alpha.
// Both pieces share sigma; the plateau height is alpha/sqrt(2*pi*sigma^2)
// while the half-Gaussian peaks at twice that, so the envelope jumps by a
// factor 2 at t_probe (implemented as printed; reported in run notes).
struct AreaSweepPulse {
  double alpha = 0.0;       // rad, area of the switch-off tail
  double t_probe = 0.0;     // ps
  double sigma = 0.0;       // ps
  double alpha_prep = 2.0 * constants::pi;  // rad

  double plateau_omega() const {
    return alpha / std::sqrt(2.0 * constants::pi * sigma * sigma);
  }
  double t_on() const { return t_probe - alpha_prep / plateau_omega(); }

  double value(double t) const {
    if (t < t_probe) {
      return t >= t_on() ? plateau_omega() : 0.0;
    }
    const double u = t - t_probe;
    if (u > detail::kGaussianCut * sigma) return 0.0;
    return 2.0 * plateau_omega() * std::exp(-u * u / (2.0 * sigma * sigma));
  }
  double support_begin() const { return t_on(); }
  double support_end() const { return t_probe + detail::kGaussianCut * sigma; }
};

using PulseShape = std::variant<GaussianPulse, CwStepPulse, RectangularPulse,
                                SoftenedRectPulse, AreaSweepPulse>;

// One term of the composite light field: a real shape, shifted by `delay`,
// multiplied by e^{i*phase}.
struct PulseEnvelope {
  PulseShape shape;
  double phase = 0.0;  // rad
  double delay = 0.0;  // ps

  double real_value(double t) const {
    return std::visit([&](const auto& s) { return s.value(t - delay); }, shape);
  }
  cplx value(double t) const {
    const double v = real_value(t);
    if (v == 0.0 || phase == 0.0) return cplx{v, 0.0};
    return v * std::polar(1.0, phase);
  }
  double support_begin() const {
    return delay + std::visit([](const auto& s) { return s.support_begin(); }, shape);
  }
  double support_end() const {
    return delay + std::visit([](const auto& s) { return s.support_end(); }, shape);
  }
  // Area of the real envelope where a closed form exists (cw has none).
  std::optional<double> declared_area() const;

  std::string shape_name() const;
};

// Ordered sum of envelope terms; summation order is fixed left-to-right.
struct CompositeField {
  std::vector<PulseEnvelope> terms;

  cplx operator()(double t) const {
    cplx total{0.0, 0.0};
    for (const auto& term : terms) total += term.value(t);
    return total;
  }

  double support_begin() const {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& term : terms) lo = std::min(lo, term.support_begin());
    return lo;
  }
};

// Factories validate parameters and fill the spec'd defaults.

PulseEnvelope gaussian(double area, double sigma, double center);
PulseEnvelope cw_step(double omega, double t_on);
PulseEnvelope rectangular(double omega, double t_on, double t_off);
PulseEnvelope softened_rect(double omega, double t_on, double t_off, double edge);
PulseEnvelope area_sweep_piecewise(double alpha, double t_probe, double sigma_p,
                                   double alpha_prep);

CompositeField compose(std::vector<PulseEnvelope> terms);

// Trapezoid quadrature of the real envelope over its support (test oracle and
// validation helper; step should be <= the integration dt).
double quadrature_area(const PulseEnvelope& env, double step = 1e-3);

}  // namespace pumpprobe
