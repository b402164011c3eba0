// Absorption spectrum from the probe polarization.
//
// alpha(omega) = Im[ F[ P_1(t) * e^{-Gamma*(t - t_ref)} ] ] with the
// transform convention F[f](omega) = sum_t f(t) * e^{+i*omega*(t - t_ref)} * dt.
// The damping/transform origin t_ref is the probe-pulse center; an absolute
// origin would annihilate the signal for pumps switched on hundreds of ps
// earlier.  With the coherence convention of the dynamics module a pump-free
// ground-state trace transforms to a positive zero-energy Lorentzian, so no
// additional global phase is applied.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pumpprobe/grid.hpp"
#include "pumpprobe/units.hpp"

namespace pumpprobe {

struct SpectrumConfig {
  double gamma = 0.139;  // polarization damping rate, 1/ps
  double t_ref = 0.0;    // damping/transform origin (probe center), ps
  // Transform window end; defaults to t_ref + 10/gamma so the damped tail is
  // below 5e-5 of its initial value.
  std::optional<double> window_end;
  int zero_pad_factor = 8;
  double energy_min = -4.0;  // meV
  double energy_max = 4.0;   // meV
  double sample_dt = 0.01;   // ps; traces are decimated to this spacing

  double effective_window_end() const {
    if (window_end) return *window_end;
    if (gamma > 0.0) return t_ref + 10.0 / gamma;
    return t_ref + 100.0;
  }
};

// Real-valued absorption vs energy, sign-carrying.
struct Spectrum {
  std::vector<double> energies;  // meV, strictly increasing, uniform
  std::vector<double> values;
  std::string normalization_mode = "none";
  double normalization_ref = 1.0;
  std::vector<std::string> warnings;

  double energy_bin() const {
    return energies.size() > 1 ? energies[1] - energies[0] : 0.0;
  }
  // Value at the bin closest to E = 0 (central-peak amplitude).
  double value_at_zero() const;
};

enum class NormalizeMode { peak_at_reference, global_max, none };

Spectrum compute_spectrum(const PolarizationTrace& trace, const SpectrumConfig& cfg);

// Divides by the reference's zero-energy peak amplitude (peak_at_reference)
// or by the spectrum's own max |value| (global_max).
Spectrum normalize(const Spectrum& spectrum, const Spectrum& reference,
                   NormalizeMode mode);

struct SpectralPeak {
  double energy = 0.0;     // meV, refined by 3-point parabola
  double amplitude = 0.0;  // signed
  int sign = 0;            // +1 peak (local max > 0), -1 dip (local min < 0)
};

// Local extrema with |amplitude| above threshold_frac * max|value|.
std::vector<SpectralPeak> peak_analysis(const Spectrum& spectrum,
                                        double threshold_frac = 0.01);

// Amplitude of the extremum nearest E = 0 (refined); 0 if none found.
double central_peak_amplitude(const Spectrum& spectrum,
                              double threshold_frac = 0.01);

}  // namespace pumpprobe
