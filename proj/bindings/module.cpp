#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <variant>

#include "ptdimer/analytic.hpp"
#include "ptdimer/circuit.hpp"
#include "ptdimer/coupling.hpp"
#include "ptdimer/dynamics.hpp"
#include "ptdimer/io.hpp"
#include "ptdimer/scenarios.hpp"
#include "ptdimer/spectral.hpp"

namespace py = pybind11;
using namespace ptdimer;

namespace {

GainModel make_gain(const py::object& spec) {
    // Accept LinearGain/SaturableGain instances or a plain float (linear).
    if (py::isinstance<LinearGain>(spec)) return spec.cast<LinearGain>();
    if (py::isinstance<SaturableGain>(spec)) return spec.cast<SaturableGain>();
    return LinearGain{spec.cast<double>()};
}

} // namespace

PYBIND11_MODULE(_ptdimer, m) {
    m.doc() = "Coupled-resonator wireless energy transfer toolkit";

    py::class_<LinearGain>(m, "LinearGain")
        .def(py::init<double>(), py::arg("g"))
        .def_readwrite("g", &LinearGain::g);

    py::class_<SaturableGain>(m, "SaturableGain")
        .def(py::init<double, double>(), py::arg("g1"), py::arg("gamma1"))
        .def_readwrite("g1", &SaturableGain::g1)
        .def_readwrite("gamma1", &SaturableGain::gamma1);

    py::enum_<SpectralRegion>(m, "SpectralRegion")
        .value("Unbroken", SpectralRegion::Unbroken)
        .value("ExceptionalPoint", SpectralRegion::ExceptionalPoint)
        .value("Broken", SpectralRegion::Broken);

    py::class_<AmplitudeState>(m, "AmplitudeState")
        .def(py::init([](Complex psi_a, Complex psi_b, double t) {
                 return AmplitudeState{psi_a, psi_b, t};
             }),
             py::arg("psi_a") = Complex(1.0, 0.0), py::arg("psi_b") = Complex(0.0, 0.0),
             py::arg("t") = 0.0)
        .def_readwrite("psi_a", &AmplitudeState::psi_a)
        .def_readwrite("psi_b", &AmplitudeState::psi_b)
        .def_readwrite("t", &AmplitudeState::t);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init([](double omega_a, double omega_b, double kappa, double gamma,
                         const py::object& gain) {
                 SystemParams p{omega_a, omega_b, kappa, gamma, make_gain(gain)};
                 validate(p);
                 return p;
             }),
             py::arg("omega_a") = 1.0, py::arg("omega_b") = 1.0, py::arg("kappa") = 0.5,
             py::arg("gamma") = 0.0, py::arg("gain") = py::float_(0.0))
        .def_readwrite("omega_a", &SystemParams::omega_a)
        .def_readwrite("omega_b", &SystemParams::omega_b)
        .def_readwrite("kappa", &SystemParams::kappa)
        .def_readwrite("gamma", &SystemParams::gamma)
        .def_property(
            "gain", [](const SystemParams& p) { return py::cast(p.gain); },
            [](SystemParams& p, const py::object& gain) { p.gain = make_gain(gain); });

    m.def(
        "eval_gain",
        [](const py::object& gain, double psi_a_abs) {
            return eval_gain(make_gain(gain), psi_a_abs);
        },
        py::arg("gain"), py::arg("psi_a_abs"));
    m.def("classify_region", &classify_region, py::arg("kappa"), py::arg("gamma"),
          py::arg("tol") = 1e-9);
    m.def("transfer_energy", &transfer_energy, py::arg("state"), py::arg("omega_b"));
    m.def("storage_energy", &storage_energy, py::arg("state"), py::arg("omega_a"));
    m.def("average_power", &average_power, py::arg("energy"), py::arg("t"));

    py::class_<EigenMode>(m, "EigenMode")
        .def_readonly("frequency", &EigenMode::frequency)
        .def_readonly("gain", &EigenMode::gain);

    py::class_<EigenSet>(m, "EigenSet")
        .def_readonly("modes", &EigenSet::modes)
        .def_readonly("region", &EigenSet::region)
        .def_readonly("g_sat", &EigenSet::g_sat)
        .def("frequencies", &EigenSet::frequencies);

    m.def("characteristic_residual", &characteristic_residual, py::arg("omega"), py::arg("g"),
          py::arg("gamma"), py::arg("kappa"), py::arg("omega0"));
    m.def("linear_eigenfrequencies", &linear_eigenfrequencies, py::arg("params"),
          py::arg("tol") = 1e-9);
    m.def("nonlinear_eigenfrequencies", &nonlinear_eigenfrequencies, py::arg("params"),
          py::arg("tol") = 1e-9);
    m.def("exceptional_arc", &exceptional_arc, py::arg("kappa_of_d"), py::arg("gamma"),
          py::arg("d_lo"), py::arg("d_hi"), py::arg("rel_tol") = 1e-10);

    py::class_<LinearSolution>(m, "LinearSolution")
        .def_readonly("kappa", &LinearSolution::kappa)
        .def_readonly("gamma", &LinearSolution::gamma)
        .def_readonly("omega0", &LinearSolution::omega0)
        .def_readonly("region", &LinearSolution::region);
    m.def("make_linear_solution", &make_linear_solution, py::arg("kappa"), py::arg("gamma"),
          py::arg("omega0") = 1.0, py::arg("tol") = 1e-9);
    m.def("psi_b_closed_form", &psi_b_closed_form, py::arg("sol"), py::arg("t"));
    m.def("transfer_energy_closed_form", &transfer_energy_closed_form, py::arg("sol"),
          py::arg("t"));
    m.def("storage_energy_closed_form", &storage_energy_closed_form, py::arg("sol"),
          py::arg("t"));

    py::class_<IntegrationConfig>(m, "IntegrationConfig")
        .def(py::init<>())
        .def_readwrite("rel_tol", &IntegrationConfig::rel_tol)
        .def_readwrite("abs_tol", &IntegrationConfig::abs_tol)
        .def_readwrite("t_end", &IntegrationConfig::t_end)
        .def_readwrite("max_step", &IntegrationConfig::max_step)
        .def_readwrite("record_stride", &IntegrationConfig::record_stride)
        .def_readwrite("overflow_guard", &IntegrationConfig::overflow_guard);

    py::class_<TrajectorySample>(m, "TrajectorySample")
        .def_readonly("t", &TrajectorySample::t)
        .def_readonly("psi_a", &TrajectorySample::psi_a)
        .def_readonly("psi_b", &TrajectorySample::psi_b)
        .def_readonly("gain", &TrajectorySample::gain)
        .def_readonly("e", &TrajectorySample::e)
        .def_readonly("e_a", &TrajectorySample::e_a)
        .def_readonly("p", &TrajectorySample::p);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def("duration", &Trajectory::duration)
        .def("times",
             [](const Trajectory& t) {
                 std::vector<double> out;
                 out.reserve(t.samples.size());
                 for (const auto& s : t.samples) out.push_back(s.t);
                 return out;
             })
        .def("energies", [](const Trajectory& t) {
            std::vector<double> out;
            out.reserve(t.samples.size());
            for (const auto& s : t.samples) out.push_back(s.e);
            return out;
        });

    py::enum_<IntegrationStatus>(m, "IntegrationStatus")
        .value("Ok", IntegrationStatus::Ok)
        .value("Diverged", IntegrationStatus::Diverged)
        .value("StepUnderflow", IntegrationStatus::StepUnderflow);

    py::class_<IntegrationResult>(m, "IntegrationResult")
        .def_readonly("trajectory", &IntegrationResult::trajectory)
        .def_readonly("status", &IntegrationResult::status)
        .def_readonly("message", &IntegrationResult::message)
        .def("ok", &IntegrationResult::ok);

    m.def("integrate", &integrate, py::arg("params"), py::arg("initial") = AmplitudeState{},
          py::arg("cfg") = IntegrationConfig{}, py::arg("schedule") = KappaSchedule{});

    py::class_<SteadyStateReport>(m, "SteadyStateReport")
        .def_readonly("converged", &SteadyStateReport::converged)
        .def_readonly("t_settle", &SteadyStateReport::t_settle)
        .def_readonly("e_steady", &SteadyStateReport::e_steady)
        .def_readonly("g_measured", &SteadyStateReport::g_measured)
        .def_readonly("mode_frequency", &SteadyStateReport::mode_frequency);

    m.def("detect_steady_state", &detect_steady_state, py::arg("traj"),
          py::arg("window") = 20.0, py::arg("threshold") = 1e-3);
    m.def("measure_mode_frequency", &measure_mode_frequency, py::arg("traj"),
          py::arg("window") = 20.0, py::arg("threshold") = 1e-3);

    py::class_<CoilGeometry>(m, "CoilGeometry")
        .def(py::init([](double radius, int turns, double axial_pitch, double wire_radius) {
                 CoilGeometry g{radius, turns, axial_pitch, wire_radius};
                 validate(g);
                 return g;
             }),
             py::arg("radius") = 0.29, py::arg("turns") = 3, py::arg("axial_pitch") = 5e-3,
             py::arg("wire_radius") = 2.5e-3)
        .def_readwrite("radius", &CoilGeometry::radius)
        .def_readwrite("turns", &CoilGeometry::turns)
        .def_readwrite("axial_pitch", &CoilGeometry::axial_pitch)
        .def_readwrite("wire_radius", &CoilGeometry::wire_radius);

    m.def("elliptic_k", &elliptic_k, py::arg("m"));
    m.def("elliptic_e", &elliptic_e, py::arg("m"));
    m.def("loop_mutual_inductance", &loop_mutual_inductance, py::arg("radius_a"),
          py::arg("radius_b"), py::arg("z"));
    m.def("mutual_inductance", &mutual_inductance, py::arg("a"), py::arg("b"), py::arg("d"));
    m.def("self_inductance", &self_inductance, py::arg("geom"));
    m.def("kappa_of_distance", &kappa_of_distance, py::arg("geom"), py::arg("d"),
          py::arg("omega0") = 1.0);

    py::class_<CouplingCurve>(m, "CouplingCurve")
        .def_readonly("distances", &CouplingCurve::distances)
        .def_readonly("kappas", &CouplingCurve::kappas)
        .def_readonly("omega0", &CouplingCurve::omega0);
    m.def("build_coupling_curve", &build_coupling_curve, py::arg("geom"), py::arg("distances"),
          py::arg("omega0") = 1.0);

    py::class_<LinearPtFamily>(m, "LinearPtFamily").def(py::init<>());
    py::class_<SaturableFamily>(m, "SaturableFamily")
        .def(py::init<double, double>(), py::arg("g1") = 3.0, py::arg("gamma1") = 0.05)
        .def_readwrite("g1", &SaturableFamily::g1)
        .def_readwrite("gamma1", &SaturableFamily::gamma1);

    py::class_<SweepGrid>(m, "SweepGrid")
        .def(py::init([](std::vector<double> d_values, std::vector<double> gamma_values,
                         const py::object& family) {
                 SweepGrid grid;
                 grid.d_values = std::move(d_values);
                 grid.gamma_values = std::move(gamma_values);
                 if (py::isinstance<SaturableFamily>(family)) {
                     grid.family = family.cast<SaturableFamily>();
                 } else {
                     grid.family = LinearPtFamily{};
                 }
                 return grid;
             }),
             py::arg("d_values"), py::arg("gamma_values"), py::arg("family"))
        .def_readonly("d_values", &SweepGrid::d_values)
        .def_readonly("gamma_values", &SweepGrid::gamma_values);

    py::class_<SweepCell>(m, "SweepCell")
        .def_readonly("d", &SweepCell::d)
        .def_readonly("gamma", &SweepCell::gamma)
        .def_readonly("kappa", &SweepCell::kappa)
        .def_readonly("region", &SweepCell::region)
        .def_readonly("e_max", &SweepCell::e_max)
        .def_readonly("e_s", &SweepCell::e_s)
        .def_readonly("p_max", &SweepCell::p_max)
        .def_readonly("converged", &SweepCell::converged);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("cells", &SweepResult::cells)
        .def_readonly("arc", &SweepResult::arc)
        .def_readonly("diagnostics", &SweepResult::diagnostics);

    m.def("run_sweep", &run_sweep, py::arg("grid"), py::arg("geom"),
          py::arg("cfg") = IntegrationConfig{}, py::arg("detect_window") = 20.0,
          py::arg("detect_threshold") = 1e-3);

    py::class_<StepSchedule>(m, "StepSchedule")
        .def(py::init([](std::vector<std::pair<double, double>> segments) {
                 StepSchedule s{std::move(segments)};
                 validate(s);
                 return s;
             }),
             py::arg("segments"))
        .def_readonly("segments", &StepSchedule::segments);

    py::class_<StepSegmentReport>(m, "StepSegmentReport")
        .def_readonly("t_start", &StepSegmentReport::t_start)
        .def_readonly("t_end", &StepSegmentReport::t_end)
        .def_readonly("d", &StepSegmentReport::d)
        .def_readonly("kappa", &StepSegmentReport::kappa)
        .def_readonly("steady", &StepSegmentReport::steady);

    py::class_<StepResponse>(m, "StepResponse")
        .def_readonly("trajectory", &StepResponse::trajectory)
        .def_readonly("segments", &StepResponse::segments)
        .def("distance_at", &StepResponse::distance_at);

    m.def("run_step_response", &run_step_response, py::arg("schedule"), py::arg("geom"),
          py::arg("params"), py::arg("cfg"), py::arg("detect_window") = 20.0,
          py::arg("detect_threshold") = 1e-3);

    py::class_<StorageComparison>(m, "StorageComparison")
        .def_readonly("numeric", &StorageComparison::numeric)
        .def_readonly("closed_form_e", &StorageComparison::closed_form_e)
        .def_readonly("closed_form_e_a", &StorageComparison::closed_form_e_a);
    m.def("run_storage_comparison", &run_storage_comparison, py::arg("params"), py::arg("cfg"));

    py::class_<DiodeParams>(m, "DiodeParams")
        .def(py::init<double, double, double>(), py::arg("i_s") = 2.52e-9,
             py::arg("v_t") = 25.85e-3, py::arg("n") = 1.752)
        .def_readwrite("i_s", &DiodeParams::i_s)
        .def_readwrite("v_t", &DiodeParams::v_t)
        .def_readwrite("n", &DiodeParams::n);

    py::class_<LinearBuffer>(m, "LinearBuffer")
        .def(py::init<double, double, double>(), py::arg("r_f") = 1e3, py::arg("r_g") = 1e3,
             py::arg("rail") = 15.0)
        .def_readwrite("r_f", &LinearBuffer::r_f)
        .def_readwrite("r_g", &LinearBuffer::r_g)
        .def_readwrite("rail", &LinearBuffer::rail);

    py::class_<DiodeNetwork>(m, "DiodeNetwork")
        .def(py::init<double, double, double, DiodeParams>(), py::arg("r_1") = 500.0,
             py::arg("r_2") = 10e3, py::arg("r_g") = 5e3, py::arg("diode") = DiodeParams{})
        .def_readwrite("r_1", &DiodeNetwork::r_1)
        .def_readwrite("r_2", &DiodeNetwork::r_2)
        .def_readwrite("r_g", &DiodeNetwork::r_g)
        .def_readwrite("diode", &DiodeNetwork::diode);

    py::class_<CircuitParams>(m, "CircuitParams")
        .def(py::init([](double l, double c, double m_over_l, double r_b,
                         const py::object& network) {
                 CircuitParams cp;
                 cp.l = l;
                 cp.c = c;
                 cp.m_over_l = m_over_l;
                 cp.r_b = r_b;
                 if (py::isinstance<DiodeNetwork>(network)) {
                     cp.gain_network = network.cast<DiodeNetwork>();
                 } else {
                     cp.gain_network = network.cast<LinearBuffer>();
                 }
                 validate(cp);
                 return cp;
             }),
             py::arg("l") = 2.32e-3, py::arg("c") = 10.7e-9, py::arg("m_over_l") = 0.2,
             py::arg("r_b") = 3e3, py::arg("network") = LinearBuffer{})
        .def_readwrite("l", &CircuitParams::l)
        .def_readwrite("c", &CircuitParams::c)
        .def_readwrite("m_over_l", &CircuitParams::m_over_l)
        .def_readwrite("r_b", &CircuitParams::r_b);

    py::class_<CircuitState>(m, "CircuitState")
        .def(py::init([](double u_a, double u_b, double i_a, double i_b, double t) {
                 return CircuitState{u_a, u_b, i_a, i_b, t};
             }),
             py::arg("u_a") = 1.0, py::arg("u_b") = 0.0, py::arg("i_a") = 0.0,
             py::arg("i_b") = 0.0, py::arg("t") = 0.0)
        .def_readonly("u_a", &CircuitState::u_a)
        .def_readonly("u_b", &CircuitState::u_b)
        .def_readonly("i_a", &CircuitState::i_a)
        .def_readonly("i_b", &CircuitState::i_b)
        .def_readonly("t", &CircuitState::t);

    py::class_<CoupledModeMap>(m, "CoupledModeMap")
        .def_readonly("omega0", &CoupledModeMap::omega0)
        .def_readonly("params", &CoupledModeMap::params);

    m.def("map_to_coupled_mode", &map_to_coupled_mode, py::arg("cp"));
    m.def("simulate_circuit", &simulate_circuit, py::arg("cp"), py::arg("initial"),
          py::arg("t_end"), py::arg("dt_max"));
    m.def("tank_energy", &tank_energy, py::arg("cp"), py::arg("state"));

    py::class_<EnvelopePoint>(m, "EnvelopePoint")
        .def_readonly("t", &EnvelopePoint::t)
        .def_readonly("amplitude", &EnvelopePoint::amplitude);
    m.def("extract_envelope", &extract_envelope, py::arg("waveform"), py::arg("carrier"));

    py::class_<CrossvalMetric>(m, "CrossvalMetric")
        .def_readonly("name", &CrossvalMetric::name)
        .def_readonly("measured", &CrossvalMetric::measured)
        .def_readonly("predicted", &CrossvalMetric::predicted)
        .def_readonly("relative_error", &CrossvalMetric::relative_error)
        .def_readonly("budget", &CrossvalMetric::budget)
        .def_readonly("pass_", &CrossvalMetric::pass);

    py::class_<CrossvalReport>(m, "CrossvalReport")
        .def_readonly("map", &CrossvalReport::map)
        .def_readonly("metrics", &CrossvalReport::metrics)
        .def_readonly("observations", &CrossvalReport::observations)
        .def_readonly("pass_", &CrossvalReport::pass)
        .def("json", [](const CrossvalReport& r) { return io::crossval_report_json(r); });

    m.def("crossvalidate", &crossvalidate, py::arg("cp"), py::arg("t_end") = 0.0,
          py::arg("budget") = 0.03);
    m.def("fig7_unbroken_preset", &fig7_unbroken_preset);
    m.def("fig7_broken_preset", &fig7_broken_preset);
    m.def("fig8_saturation_preset", &fig8_saturation_preset);
}
