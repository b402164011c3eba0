#include "pumpprobe/pulses.hpp"

#include <algorithm>
#include <cmath>

namespace pumpprobe {

std::optional<double> PulseEnvelope::declared_area() const {
  struct Visitor {
    std::optional<double> operator()(const GaussianPulse& p) const { return p.area; }
    std::optional<double> operator()(const CwStepPulse&) const { return std::nullopt; }
    std::optional<double> operator()(const RectangularPulse& p) const {
      return p.omega * (p.t_off - p.t_on);
    }
    std::optional<double> operator()(const SoftenedRectPulse& p) const {
      return p.omega * (p.t_off - p.t_on);
    }
    std::optional<double> operator()(const AreaSweepPulse& p) const {
      return p.alpha_prep + p.alpha;
    }
  };
  return std::visit(Visitor{}, shape);
}

std::string PulseEnvelope::shape_name() const {
  struct Visitor {
    std::string operator()(const GaussianPulse&) const { return "gaussian"; }
    std::string operator()(const CwStepPulse&) const { return "cw_step"; }
    std::string operator()(const RectangularPulse&) const { return "rectangular"; }
    std::string operator()(const SoftenedRectPulse&) const { return "softened_rect"; }
    std::string operator()(const AreaSweepPulse&) const { return "area_sweep_piecewise"; }
  };
  return std::visit(Visitor{}, shape);
}

PulseEnvelope gaussian(double area, double sigma, double center) {
  if (!(sigma > 0.0)) throw ConfigError("gaussian: sigma must be > 0");
  return PulseEnvelope{GaussianPulse{area, sigma, center}};
}

PulseEnvelope cw_step(double omega, double t_on) {
  if (omega < 0.0) throw ConfigError("cw_step: omega must be >= 0");
  return PulseEnvelope{CwStepPulse{omega, t_on}};
}

PulseEnvelope rectangular(double omega, double t_on, double t_off) {
  if (!(t_off > t_on)) throw ConfigError("rectangular: t_off must be > t_on");
  return PulseEnvelope{RectangularPulse{omega, t_on, t_off}};
}

PulseEnvelope softened_rect(double omega, double t_on, double t_off, double edge) {
  if (!(t_off > t_on)) throw ConfigError("softened_rect: t_off must be > t_on");
  if (edge < 0.0 || edge > t_off - t_on) {
    throw ConfigError("softened_rect: edge must lie in [0, t_off - t_on]");
  }
  return PulseEnvelope{SoftenedRectPulse{omega, t_on, t_off, edge}};
}

PulseEnvelope area_sweep_piecewise(double alpha, double t_probe, double sigma_p,
                                   double alpha_prep) {
  if (!(alpha > 0.0)) throw ConfigError("area_sweep_piecewise: alpha must be > 0");
  if (!(sigma_p > 0.0)) throw ConfigError("area_sweep_piecewise: sigma must be > 0");
  return PulseEnvelope{AreaSweepPulse{alpha, t_probe, sigma_p, alpha_prep}};
}

CompositeField compose(std::vector<PulseEnvelope> terms) {
  if (terms.empty()) throw ConfigError("compose: at least one envelope term required");
  return CompositeField{std::move(terms)};
}

namespace {

// Boundaries of the smooth pieces of each shape, so the quadrature never
// straddles a discontinuity.
std::vector<double> smooth_piece_bounds(const PulseShape& shape) {
  struct Visitor {
    std::vector<double> operator()(const GaussianPulse& p) const {
      return {p.support_begin(), p.support_end()};
    }
    std::vector<double> operator()(const CwStepPulse&) const {
      throw ConfigError("quadrature_area: cw envelope has unbounded support");
    }
    std::vector<double> operator()(const RectangularPulse& p) const {
      return {p.t_on, p.t_off};
    }
    std::vector<double> operator()(const SoftenedRectPulse& p) const {
      if (p.edge == 0.0) return {p.t_on, p.t_off};
      return {p.t_on, p.t_off - 0.5 * p.edge, p.t_off + 0.5 * p.edge};
    }
    std::vector<double> operator()(const AreaSweepPulse& p) const {
      return {p.t_on(), p.t_probe, p.support_end()};
    }
  };
  return std::visit(Visitor{}, shape);
}

}  // namespace

double quadrature_area(const PulseEnvelope& env, double step) {
  const std::vector<double> bounds = smooth_piece_bounds(env.shape);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < bounds.size(); ++p) {
    const double lo = env.delay + bounds[p];
    const double hi = env.delay + bounds[p + 1];
    const auto n = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil((hi - lo) / step)));
    const double h = (hi - lo) / static_cast<double>(n);
    double sum = 0.0;  // midpoint rule: never samples the piece boundaries
    for (std::size_t i = 0; i < n; ++i) {
      sum += env.real_value(lo + h * (static_cast<double>(i) + 0.5));
    }
    total += sum * h;
  }
  return total;
}

}  // namespace pumpprobe
