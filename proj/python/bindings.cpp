// Python bindings for the pump-probe simulator core.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pumpprobe/config.hpp"
#include "pumpprobe/dynamics.hpp"
#include "pumpprobe/experiments.hpp"
#include "pumpprobe/io.hpp"
#include "pumpprobe/phase_cycle.hpp"
#include "pumpprobe/pulses.hpp"
#include "pumpprobe/spectrum.hpp"
#include "pumpprobe/units.hpp"
#include "pumpprobe/validate.hpp"

namespace py = pybind11;
using namespace pumpprobe;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<std::complex<double>> to_array(const std::vector<cplx>& v) {
  py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array_2d(const std::vector<std::vector<double>>& rows) {
  const py::ssize_t nr = static_cast<py::ssize_t>(rows.size());
  const py::ssize_t nc = nr > 0 ? static_cast<py::ssize_t>(rows[0].size()) : 0;
  py::array_t<double> out({nr, nc});
  auto view = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < nr; ++i) {
    for (py::ssize_t j = 0; j < nc; ++j) {
      view(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(pumpprobe, m) {
  m.doc() = "pump-probe absorption spectra of a resonantly driven two-level emitter";
  m.attr("HBAR_MEV_PS") = constants::hbar;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

  m.def("mev_to_rad_per_ps", &mev_to_rad_per_ps, py::arg("energy_mev"));
  m.def("rad_per_ps_to_mev", &rad_per_ps_to_mev, py::arg("omega"));

  py::class_<PulseEnvelope>(m, "PulseEnvelope")
      .def_readwrite("phase", &PulseEnvelope::phase)
      .def_readwrite("delay", &PulseEnvelope::delay)
      .def_property_readonly("shape", &PulseEnvelope::shape_name)
      .def_property_readonly("declared_area",
                             [](const PulseEnvelope& e) {
                               return e.declared_area()
                                          ? py::cast(*e.declared_area())
                                          : py::none().cast<py::object>();
                             })
      .def("__call__",
           [](const PulseEnvelope& e, double t) { return e.value(t); })
      .def("values", [](const PulseEnvelope& e, py::array_t<double> times) {
        py::array_t<std::complex<double>> out(times.size());
        auto tv = times.unchecked<1>();
        auto ov = out.mutable_unchecked<1>();
        for (py::ssize_t i = 0; i < tv.shape(0); ++i) ov(i) = e.value(tv(i));
        return out;
      });

  m.def("gaussian", &gaussian, py::arg("area"), py::arg("sigma"),
        py::arg("center") = 0.0);
  m.def("cw_step", &cw_step, py::arg("omega"), py::arg("t_on"));
  m.def("rectangular", &rectangular, py::arg("omega"), py::arg("t_on"),
        py::arg("t_off"));
  m.def("softened_rect", &softened_rect, py::arg("omega"), py::arg("t_on"),
        py::arg("t_off"), py::arg("edge"));
  m.def("area_sweep_piecewise", &area_sweep_piecewise, py::arg("alpha"),
        py::arg("t_probe"), py::arg("sigma_p"),
        py::arg("alpha_prep") = 2.0 * constants::pi);
  m.def("quadrature_area", &quadrature_area, py::arg("envelope"),
        py::arg("step") = 1e-3);

  py::class_<CompositeField>(m, "CompositeField")
      .def(py::init<>())
      .def_readwrite("terms", &CompositeField::terms)
      .def("__call__",
           [](const CompositeField& f, double t) { return f(t); });
  m.def("compose", &compose, py::arg("terms"));

  m.def(
      "evolve",
      [](std::complex<double> c_g, std::complex<double> c_x,
         const CompositeField& field, double t_start, double t_end, double dt) {
        const SimGrid grid = SimGrid::from_bounds(t_start, t_end, dt);
        std::vector<double> times(grid.n_points());
        std::vector<cplx> cg(grid.n_points()), cx(grid.n_points());
        evolve_observed(TwoLevelState{c_g, c_x}, field, grid,
                        [&](std::size_t i, double t, const TwoLevelState& s) {
                          times[i] = t;
                          cg[i] = s.c_g;
                          cx[i] = s.c_x;
                        });
        return py::make_tuple(to_array(times), to_array(cg), to_array(cx));
      },
      py::arg("c_g"), py::arg("c_x"), py::arg("field"), py::arg("t_start"),
      py::arg("t_end"), py::arg("dt") = 1e-3,
      "RK4 trajectory; returns (times, c_g, c_x) arrays");

  py::class_<PolarizationTrace>(m, "PolarizationTrace")
      .def_readonly("t0", &PolarizationTrace::t0)
      .def_readonly("dt", &PolarizationTrace::dt)
      .def_property_readonly(
          "times", [](const PolarizationTrace& t) { return to_array(t.times()); })
      .def_property_readonly(
          "values", [](const PolarizationTrace& t) { return to_array(t.values); });

  py::class_<PhaseCycleConfig>(m, "PhaseCycleConfig")
      .def(py::init<>())
      .def_readwrite("n_phases", &PhaseCycleConfig::n_phases)
      .def_readwrite("order", &PhaseCycleConfig::order)
      .def_readwrite("probe_area", &PhaseCycleConfig::probe_area)
      .def_readwrite("probe_sigma", &PhaseCycleConfig::probe_sigma)
      .def_readwrite("probe_delay", &PhaseCycleConfig::probe_delay);

  m.def(
      "run_phase_cycle",
      [](const CompositeField& pump, const PhaseCycleConfig& cfg, double t_start,
         double t_end, double dt) {
        return run_phase_cycle(pump, cfg, SimGrid::from_bounds(t_start, t_end, dt));
      },
      py::arg("pump"), py::arg("config"), py::arg("t_start"), py::arg("t_end"),
      py::arg("dt") = 1e-3);
  m.def(
      "convergence_check",
      [](const CompositeField& pump, const PhaseCycleConfig& cfg, double t_start,
         double t_end, double dt) {
        return convergence_check(pump, cfg, SimGrid::from_bounds(t_start, t_end, dt));
      },
      py::arg("pump"), py::arg("config"), py::arg("t_start"), py::arg("t_end"),
      py::arg("dt") = 1e-3);

  py::class_<SpectrumConfig>(m, "SpectrumConfig")
      .def(py::init<>())
      .def_readwrite("gamma", &SpectrumConfig::gamma)
      .def_readwrite("t_ref", &SpectrumConfig::t_ref)
      .def_readwrite("window_end", &SpectrumConfig::window_end)
      .def_readwrite("zero_pad_factor", &SpectrumConfig::zero_pad_factor)
      .def_readwrite("energy_min", &SpectrumConfig::energy_min)
      .def_readwrite("energy_max", &SpectrumConfig::energy_max)
      .def_readwrite("sample_dt", &SpectrumConfig::sample_dt);

  py::class_<Spectrum>(m, "Spectrum")
      .def_property_readonly(
          "energies", [](const Spectrum& s) { return to_array(s.energies); })
      .def_property_readonly(
          "values", [](const Spectrum& s) { return to_array(s.values); })
      .def_readonly("normalization_mode", &Spectrum::normalization_mode)
      .def_readonly("normalization_ref", &Spectrum::normalization_ref)
      .def_readonly("warnings", &Spectrum::warnings)
      .def("value_at_zero", &Spectrum::value_at_zero);

  py::class_<SpectralPeak>(m, "SpectralPeak")
      .def_readonly("energy", &SpectralPeak::energy)
      .def_readonly("amplitude", &SpectralPeak::amplitude)
      .def_readonly("sign", &SpectralPeak::sign)
      .def("__repr__", [](const SpectralPeak& p) {
        std::ostringstream out;
        out << "SpectralPeak(energy=" << p.energy << ", amplitude=" << p.amplitude
            << ", sign=" << p.sign << ")";
        return out.str();
      });

  m.def("compute_spectrum", &compute_spectrum, py::arg("trace"), py::arg("config"));
  m.def("peak_analysis", &peak_analysis, py::arg("spectrum"),
        py::arg("threshold_frac") = 0.01);
  m.def("central_peak_amplitude", &central_peak_amplitude, py::arg("spectrum"),
        py::arg("threshold_frac") = 0.01);

  py::enum_<SweepNormalization>(m, "SweepNormalization")
      .value("reference", SweepNormalization::reference)
      .value("global_max", SweepNormalization::global)
      .value("per_axis", SweepNormalization::per_axis)
      .value("none", SweepNormalization::none);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("probe_area", &ExperimentConfig::probe_area)
      .def_readwrite("probe_sigma", &ExperimentConfig::probe_sigma)
      .def_readwrite("n_phases", &ExperimentConfig::n_phases)
      .def_readwrite("dt", &ExperimentConfig::dt)
      .def_readwrite("workers", &ExperimentConfig::workers)
      .def_readwrite("normalization", &ExperimentConfig::normalization)
      .def_readwrite("gamma", &ExperimentConfig::gamma)
      .def_readwrite("window_ps", &ExperimentConfig::window_ps)
      .def_readwrite("zero_pad_factor", &ExperimentConfig::zero_pad_factor)
      .def_readwrite("energy_min", &ExperimentConfig::energy_min)
      .def_readwrite("energy_max", &ExperimentConfig::energy_max)
      .def_readwrite("sample_dt", &ExperimentConfig::sample_dt);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("experiment", &SweepResult::experiment)
      .def_readonly("axis_name", &SweepResult::axis_name)
      .def_property_readonly(
          "axis_values", [](const SweepResult& r) { return to_array(r.axis_values); })
      .def_property_readonly(
          "probe_delays", [](const SweepResult& r) { return to_array(r.probe_delays); })
      .def_property_readonly(
          "energies", [](const SweepResult& r) { return to_array(r.energies); })
      .def_property_readonly(
          "values", [](const SweepResult& r) { return to_array_2d(r.values); })
      .def_readonly("normalization_mode", &SweepResult::normalization_mode)
      .def_readonly("normalization_ref", &SweepResult::normalization_ref)
      .def_readonly("notes", &SweepResult::notes)
      .def_readonly("metadata_json", &SweepResult::metadata_json)
      .def("row_spectrum", &SweepResult::row_spectrum, py::arg("index"));

  m.def("probe_spectrum", &probe_spectrum, py::arg("pump"), py::arg("tau"),
        py::arg("config"));
  m.def("exp_cw", &exp_cw, py::arg("delays"), py::arg("config"),
        py::arg("amplitude_mev") = 2.0, py::arg("n_periods") = 250);
  m.def("exp_delta", &exp_delta, py::arg("delays"), py::arg("config"),
        py::arg("area") = constants::pi);
  m.def("exp_rect", &exp_rect, py::arg("delays"), py::arg("config"),
        py::arg("amplitude_mev") = 2.0, py::arg("n_periods") = 20);
  m.def("exp_softened", &exp_softened, py::arg("edges"), py::arg("config"),
        py::arg("amplitude_mev") = 2.0, py::arg("n_periods") = 20,
        py::arg("probe_after_start") = 30.9);
  m.def("exp_gaussian_delay", &exp_gaussian_delay, py::arg("delays"),
        py::arg("config"), py::arg("area") = 20.0 * constants::pi,
        py::arg("sigma") = 5.0);
  m.def("exp_area_sweep", &exp_area_sweep, py::arg("areas"), py::arg("config"),
        py::arg("sigma_p") = 12.0 / 2.3548200450309493, py::arg("t_probe") = 0.0,
        py::arg("alpha_prep") = 2.0 * constants::pi);

  py::class_<ProbeDynamics>(m, "ProbeDynamics")
      .def_readonly("raw", &ProbeDynamics::raw)
      .def_readonly("damped", &ProbeDynamics::damped);
  m.def("probe_dynamics_trace", &probe_dynamics_trace, py::arg("pump"),
        py::arg("tau"), py::arg("config"));

  m.def(
      "run_config",
      [](const std::string& json_text) { return execute(parse_run_config(json_text)); },
      py::arg("json_text"), "parse a run-config JSON string and execute it");
  m.def(
      "echo_config",
      [](const std::string& json_text) {
        return echo_config_json(parse_run_config(json_text));
      },
      py::arg("json_text"));
  m.def(
      "validate",
      [](double dt_fs, double gamma) { return run_validation(dt_fs, gamma).to_json(); },
      py::arg("dt_fs") = 1.0, py::arg("gamma") = 0.139);

  m.def("spectrum_csv", &spectrum_csv, py::arg("spectrum"));
  m.def("sweep_csv", &sweep_csv, py::arg("result"));
}
