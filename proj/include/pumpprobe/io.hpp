// Result serialization: CSV/JSON writers and gnuplot companion scripts.
// All files are self-describing; header comments carry units and the
// transform conventions.

#pragma once

#include <string>
#include <vector>

#include "pumpprobe/experiments.hpp"
#include "pumpprobe/spectrum.hpp"

namespace pumpprobe {

std::string spectrum_csv(const Spectrum& spectrum);
std::string sweep_csv(const SweepResult& result);
std::string sweep_json(const SweepResult& result);
std::string trace_csv(const ProbeDynamics& dynamics);

// One-line peak table for the run summary.
std::string peak_summary_line(const std::string& tag, const Spectrum& spectrum,
                              double threshold_frac = 0.05);

// gnuplot companion scripts for the emitted files.
std::string gnuplot_map_script(const std::string& csv_name,
                               const std::string& axis_label,
                               const std::string& title);
std::string gnuplot_cut_script(const std::vector<std::string>& csv_names,
                               const std::string& title);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pumpprobe
