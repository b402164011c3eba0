// Built-in oracle suite: analytic Rabi solution, norm conservation, RK4 order,
// Lorentzian line calibration, phase-cycling convergence, pulse-area
// conservation and cw periodicity, each with an explicit numeric bound.

#pragma once

#include <string>
#include <vector>

namespace pumpprobe {

struct ValidationCheck {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;  // pass iff measured <= bound (ratio checks invert first)
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<std::string> warnings;

  bool all_pass() const;
  std::string to_json() const;
  std::string to_text() const;
};

// dt_fs and gamma are overridable so degraded configurations surface as
// failing checks / warnings rather than being silently corrected.
ValidationReport run_validation(double dt_fs = 1.0, double gamma = 0.139);

}  // namespace pumpprobe
