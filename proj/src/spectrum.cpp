#include "pumpprobe/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "pumpprobe/errors.hpp"

namespace pumpprobe {

namespace {

// FFTW planning is not thread-safe; execution of a fresh plan is serialized
// here as well since the transform is a negligible fraction of a sweep.
std::mutex fftw_mutex;

// Unnormalized positive-exponent DFT: X_k = sum_m x_m * e^{+2*pi*i*m*k/N}
// (FFTW's BACKWARD sign convention).
std::vector<cplx> dft_plus(std::vector<cplx> input) {
  const auto n = input.size();
  std::vector<cplx> output(n);
  std::lock_guard<std::mutex> lock(fftw_mutex);
  fftw_plan plan = fftw_plan_dft_1d(
      static_cast<int>(n), reinterpret_cast<fftw_complex*>(input.data()),
      reinterpret_cast<fftw_complex*>(output.data()), FFTW_BACKWARD,
      FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  if (plan == nullptr) throw NumericError("compute_spectrum: FFT planning failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return output;
}

}  // namespace

double Spectrum::value_at_zero() const {
  if (energies.empty()) return 0.0;
  std::size_t best = 0;
  for (std::size_t i = 1; i < energies.size(); ++i) {
    if (std::abs(energies[i]) < std::abs(energies[best])) best = i;
  }
  return values[best];
}

Spectrum compute_spectrum(const PolarizationTrace& trace, const SpectrumConfig& cfg) {
  if (trace.values.size() < 2) throw ConfigError("compute_spectrum: empty trace");
  if (!(trace.dt > 0.0)) throw ConfigError("compute_spectrum: non-uniform trace rejected");
  if (cfg.gamma < 0.0) throw ConfigError("compute_spectrum: gamma must be >= 0");
  if (cfg.zero_pad_factor < 1) throw ConfigError("compute_spectrum: zero_pad_factor must be >= 1");

  const double window_end = cfg.effective_window_end();
  const double t_last = trace.time(trace.size() - 1);
  if (cfg.t_ref < trace.t0 - 1e-9 || window_end > t_last + 1e-9) {
    throw ConfigError("compute_spectrum: trace does not cover [t_ref, window_end]");
  }

  Spectrum spec;
  if (cfg.gamma == 0.0 || (window_end - cfg.t_ref) < 3.0 / cfg.gamma) {
    spec.warnings.push_back(
        "transform window shorter than 3/gamma: truncation ripple expected");
  }

  // Decimate to ~sample_dt spacing starting at the first sample >= t_ref.
  const auto stride = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(cfg.sample_dt / trace.dt)));
  const double ds = trace.dt * static_cast<double>(stride);
  auto j0 = static_cast<std::size_t>(
      std::ceil((cfg.t_ref - trace.t0) / trace.dt - 1e-9));
  std::vector<cplx> samples;
  for (std::size_t j = j0; j < trace.size(); j += stride) {
    const double s = trace.time(j) - cfg.t_ref;
    if (trace.time(j) > window_end + 1e-9) break;
    samples.push_back(trace.values[j] * std::exp(-cfg.gamma * s));
  }
  if (samples.size() < 2) throw ConfigError("compute_spectrum: window too short");

  const std::size_t n_fft = samples.size() * static_cast<std::size_t>(cfg.zero_pad_factor);
  samples.resize(n_fft, cplx{0.0, 0.0});
  const std::vector<cplx> transform = dft_plus(std::move(samples));

  // Energies hbar*omega_k with omega_k = 2*pi*k/(N*ds), wrapped to (-Ny, Ny].
  const double domega = 2.0 * constants::pi / (static_cast<double>(n_fft) * ds);
  std::vector<std::pair<double, double>> bins;
  bins.reserve(n_fft);
  for (std::size_t k = 0; k < n_fft; ++k) {
    double omega = domega * static_cast<double>(k);
    if (k > n_fft / 2) omega -= 2.0 * constants::pi / ds;
    const double energy = rad_per_ps_to_mev(omega);
    if (energy < cfg.energy_min || energy > cfg.energy_max) continue;
    bins.emplace_back(energy, (transform[k] * ds).imag());
  }
  std::sort(bins.begin(), bins.end());

  spec.energies.reserve(bins.size());
  spec.values.reserve(bins.size());
  for (const auto& [energy, value] : bins) {
    spec.energies.push_back(energy);
    spec.values.push_back(value);
  }
  if (spec.energies.empty()) throw ConfigError("compute_spectrum: empty energy range");
  return spec;
}

Spectrum normalize(const Spectrum& spectrum, const Spectrum& reference,
                   NormalizeMode mode) {
  Spectrum out = spectrum;
  double ref = 1.0;
  switch (mode) {
    case NormalizeMode::none:
      out.normalization_mode = "none";
      return out;
    case NormalizeMode::peak_at_reference:
      ref = central_peak_amplitude(reference);
      if (ref == 0.0) throw NumericError("normalize: reference has no zero-energy peak");
      out.normalization_mode = "peak_at_reference";
      break;
    case NormalizeMode::global_max: {
      ref = 0.0;
      for (double v : spectrum.values) ref = std::max(ref, std::abs(v));
      if (ref == 0.0) throw NumericError("normalize: spectrum is identically zero");
      out.normalization_mode = "global_max";
      break;
    }
  }
  out.normalization_ref = ref;
  for (double& v : out.values) v /= ref;
  return out;
}

std::vector<SpectralPeak> peak_analysis(const Spectrum& spectrum,
                                        double threshold_frac) {
  std::vector<SpectralPeak> peaks;
  const auto n = spectrum.values.size();
  if (n < 3) return peaks;

  double max_abs = 0.0;
  for (double v : spectrum.values) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs == 0.0) return peaks;
  const double threshold = threshold_frac * max_abs;

  const double de = spectrum.energy_bin();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double vm = spectrum.values[i - 1];
    const double v0 = spectrum.values[i];
    const double vp = spectrum.values[i + 1];
    const bool is_max = v0 > vm && v0 >= vp && v0 > threshold;
    const bool is_min = v0 < vm && v0 <= vp && v0 < -threshold;
    if (!is_max && !is_min) continue;

    // 3-point parabolic refinement of position and amplitude.
    const double denom = vm - 2.0 * v0 + vp;
    double shift = 0.0;
    double amp = v0;
    if (denom != 0.0) {
      shift = 0.5 * (vm - vp) / denom;
      amp = v0 - 0.25 * (vm - vp) * shift;
    }
    peaks.push_back(SpectralPeak{spectrum.energies[i] + shift * de, amp,
                                 is_max ? +1 : -1});
  }
  return peaks;
}

double central_peak_amplitude(const Spectrum& spectrum, double threshold_frac) {
  const auto peaks = peak_analysis(spectrum, threshold_frac);
  const SpectralPeak* best = nullptr;
  for (const auto& p : peaks) {
    if (best == nullptr || std::abs(p.energy) < std::abs(best->energy)) best = &p;
  }
  return best != nullptr ? best->amplitude : 0.0;
}

}  // namespace pumpprobe
