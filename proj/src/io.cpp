#include "pumpprobe/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pumpprobe {

namespace {

// Shortest exact decimal representation (round-trips to the same double).
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double parsed = 0.0;
  std::sscanf(buf, "%lf", &parsed);
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    std::sscanf(shorter, "%lf", &parsed);
    if (parsed == v) return shorter;
  }
  return buf;
}

const char* kConventions =
    "# conventions: alpha(E) = Im[ F[ P1(t) * exp(-Gamma*(t - t_ref)) ] ], "
    "F[f](w) = sum_t f(t) exp(+i*w*(t - t_ref)) dt, t_ref = probe center\n";

}  // namespace

std::string spectrum_csv(const Spectrum& spectrum) {
  std::ostringstream out;
  out << "# units: energy meV, alpha dimensionless\n" << kConventions;
  out << "# normalization: " << spectrum.normalization_mode << " (ref = "
      << fmt(spectrum.normalization_ref) << ")\n";
  for (const auto& w : spectrum.warnings) out << "# warning: " << w << "\n";
  out << "energy_meV,alpha\n";
  for (std::size_t i = 0; i < spectrum.energies.size(); ++i) {
    out << fmt(spectrum.energies[i]) << "," << fmt(spectrum.values[i]) << "\n";
  }
  return out.str();
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "# experiment: " << result.experiment << "\n";
  out << "# layout: first row = energy axis (meV), first column = "
      << result.axis_name << "; corner cell = number of energy columns\n";
  out << "# units: energy meV, times ps, areas pi; alpha dimensionless\n"
      << kConventions;
  out << "# normalization: " << result.normalization_mode << " (ref = "
      << fmt(result.normalization_ref) << ")\n";
  for (const auto& note : result.notes) out << "# note: " << note << "\n";

  out << result.energies.size();
  for (double e : result.energies) out << "," << fmt(e);
  out << "\n";
  for (std::size_t i = 0; i < result.axis_values.size(); ++i) {
    out << fmt(result.axis_values[i]);
    for (double v : result.values[i]) out << "," << fmt(v);
    out << "\n";
  }
  return out.str();
}

std::string sweep_json(const SweepResult& result) {
  nlohmann::ordered_json doc;
  doc["experiment"] = result.experiment;
  doc["axis_name"] = result.axis_name;
  doc["axis_values"] = result.axis_values;
  doc["probe_delays_ps"] = result.probe_delays;
  doc["energies_mev"] = result.energies;
  doc["values"] = result.values;
  doc["normalization"] = {{"mode", result.normalization_mode},
                          {"ref", result.normalization_ref}};
  doc["notes"] = result.notes;
  doc["metadata"] = nlohmann::ordered_json::parse(result.metadata_json);
  return doc.dump(2);
}

std::string trace_csv(const ProbeDynamics& dynamics) {
  std::ostringstream out;
  out << "# probe polarization trace; damped = raw * exp(-Gamma*max(t - tau, 0))\n";
  out << "t_ps,re_P1,im_P1,abs_P1,re_P1_damped,im_P1_damped\n";
  for (std::size_t i = 0; i < dynamics.raw.values.size(); ++i) {
    const cplx raw = dynamics.raw.values[i];
    const cplx damped = dynamics.damped.values[i];
    out << fmt(dynamics.raw.time(i)) << "," << fmt(raw.real()) << ","
        << fmt(raw.imag()) << "," << fmt(std::abs(raw)) << ","
        << fmt(damped.real()) << "," << fmt(damped.imag()) << "\n";
  }
  return out.str();
}

std::string peak_summary_line(const std::string& tag, const Spectrum& spectrum,
                              double threshold_frac) {
  std::ostringstream out;
  out << tag << ": ";
  const auto peaks = peak_analysis(spectrum, threshold_frac);
  if (peaks.empty()) {
    out << "no peaks above " << fmt(threshold_frac * 100.0) << "% threshold";
    return out.str();
  }
  bool first = true;
  for (const auto& p : peaks) {
    if (!first) out << ", ";
    first = false;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%+.3f meV (%.3g)", p.energy, p.amplitude);
    out << buf;
  }
  return out.str();
}

std::string gnuplot_map_script(const std::string& csv_name,
                               const std::string& axis_label,
                               const std::string& title) {
  std::ostringstream out;
  out << "set datafile separator ','\n"
      << "set title '" << title << "'\n"
      << "set xlabel 'energy (meV)'\n"
      << "set ylabel '" << axis_label << "'\n"
      << "set cblabel 'alpha'\n"
      << "set palette defined (-1 'blue', 0 'white', 1 'red')\n"
      << "set autoscale fix\n"
      << "plot '" << csv_name << "' matrix nonuniform with image notitle\n"
      << "pause -1 'press enter'\n";
  return out.str();
}

std::string gnuplot_cut_script(const std::vector<std::string>& csv_names,
                               const std::string& title) {
  std::ostringstream out;
  out << "set datafile separator ','\n"
      << "set title '" << title << "'\n"
      << "set xlabel 'energy (meV)'\n"
      << "set ylabel 'alpha'\n"
      << "plot ";
  for (std::size_t i = 0; i < csv_names.size(); ++i) {
    if (i > 0) out << ", \\\n     ";
    out << "'" << csv_names[i] << "' using 1:2 with lines title '"
        << csv_names[i] << "'";
  }
  out << "\npause -1 'press enter'\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

}  // namespace pumpprobe
