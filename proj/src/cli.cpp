#include "ptdimer/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ptdimer/analytic.hpp"
#include "ptdimer/circuit.hpp"
#include "ptdimer/coupling.hpp"
#include "ptdimer/dynamics.hpp"
#include "ptdimer/io.hpp"
#include "ptdimer/scenarios.hpp"
#include "ptdimer/spectral.hpp"

namespace ptdimer::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitValidation = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_range(const std::string& text) {
    // "lo:hi:n" inclusive; "x" alone is a single value.
    const auto first = text.find(':');
    if (first == std::string::npos) {
        return {io::parse_double(text)};
    }
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos) {
        throw UsageError("range must be lo:hi:n, got '" + text + "'");
    }
    const double lo = io::parse_double(text.substr(0, first));
    const double hi = io::parse_double(text.substr(first + 1, second - first - 1));
    const long n = std::lround(io::parse_double(text.substr(second + 1)));
    if (n < 1 || (n == 1 && lo != hi)) {
        throw UsageError("range '" + text + "' needs n >= 2 (or n = 1 with lo == hi)");
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        values.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                            static_cast<double>(n - 1));
    }
    return values;
}

std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("PTDIMER_OUT_DIR"); dir != nullptr && *dir != '\0') {
            return std::filesystem::path(dir) / p;
        }
    }
    return p;
}

void emit(const std::string& path, const std::string& payload) {
    if (path == "-") {
        std::cout << payload;
        return;
    }
    const auto resolved = resolve_output(path);
    std::ofstream out(resolved, std::ios::binary);
    if (!out) {
        throw UsageError("cannot open output file: " + resolved.string());
    }
    out << payload;
}

// csv -> {"header": [...], "rows": [[...]]} with numeric fields as numbers.
std::string csv_to_json(const std::string& csv) {
    std::istringstream in(csv);
    const io::Table table = io::read_table(in);
    nlohmann::ordered_json j;
    j["header"] = table.header;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto jrow = nlohmann::ordered_json::array();
        for (const auto& field : row) {
            if (field.empty()) {
                jrow.push_back(nullptr);
            } else {
                try {
                    jrow.push_back(io::parse_double(field));
                } catch (const std::invalid_argument&) {
                    jrow.push_back(field);
                }
            }
        }
        rows.push_back(std::move(jrow));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

struct CommonOutput {
    std::string path = "-";
    std::string format = "csv";
};

void add_output_options(CLI::App* cmd, CommonOutput& out) {
    cmd->add_option("-o,--output", out.path, "Output path ('-' for stdout)");
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

void emit_table(const CommonOutput& out, const std::string& csv) {
    emit(out.path, out.format == "json" ? csv_to_json(csv) : csv);
}

struct CoilOptions {
    double radius = 0.29;
    int turns = 3;
    double pitch = 5e-3;
    double wire_radius = 2.5e-3;

    [[nodiscard]] CoilGeometry geometry() const {
        return {radius, turns, pitch, wire_radius};
    }
};

void add_coil_options(CLI::App* cmd, CoilOptions& coil) {
    cmd->add_option("--coil-radius", coil.radius, "Coil radius in m");
    cmd->add_option("--coil-turns", coil.turns, "Number of turns");
    cmd->add_option("--coil-pitch", coil.pitch, "Axial pitch between turns in m");
    cmd->add_option("--coil-wire-radius", coil.wire_radius, "Wire radius in m");
}

// ---------------------------------------------------------------------------
// eigen
// ---------------------------------------------------------------------------

struct EigenArgs {
    bool linear = false;
    bool nonlinear = false;
    double kappa = 0.0;
    std::string gamma;
    double g1 = 3.0;
    double gamma1 = 0.05;
    double omega0 = 1.0;
    CommonOutput out;
};

int run_eigen(const EigenArgs& args) {
    if (args.linear == args.nonlinear) {
        throw UsageError("eigen: pass exactly one of --linear / --nonlinear");
    }
    std::vector<std::pair<double, EigenSet>> rows;
    for (const double gamma : parse_range(args.gamma)) {
        SystemParams params;
        params.omega_a = params.omega_b = args.omega0;
        params.kappa = args.kappa;
        params.gamma = gamma;
        if (args.linear) {
            params.gain = LinearGain{gamma};
            rows.emplace_back(gamma, linear_eigenfrequencies(params));
        } else {
            params.gain = SaturableGain{args.g1, args.gamma1};
            rows.emplace_back(gamma, nonlinear_eigenfrequencies(params));
        }
    }
    std::ostringstream csv;
    io::write_eigen_csv(csv, rows, args.nonlinear);
    emit_table(args.out, csv.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
    bool linear = false;
    bool nonlinear = false;
    bool analytic = false;
    double kappa = 0.5;
    double gamma = 0.0;
    std::optional<double> g;  // linear gain override, defaults to gamma
    double g1 = 3.0;
    double gamma1 = 0.05;
    double t_end = 0.0;  // 0 = family default
    double stride = 0.01;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    CommonOutput out;
};

int run_simulate(const SimulateArgs& args) {
    if (args.linear == args.nonlinear) {
        throw UsageError("simulate: pass exactly one of --linear / --nonlinear");
    }
    if (args.analytic && args.nonlinear) {
        throw UsageError("simulate: --analytic has no closed form for the saturable gain");
    }
    const double t_end = args.t_end > 0.0 ? args.t_end : (args.linear ? 20.0 : 200.0);

    SystemParams params;
    params.kappa = args.kappa;
    params.gamma = args.gamma;
    params.gain = args.linear ? GainModel(LinearGain{args.g.value_or(args.gamma)})
                              : GainModel(SaturableGain{args.g1, args.gamma1});

    Trajectory traj;
    traj.params = params;
    if (args.analytic) {
        const double g = args.g.value_or(args.gamma);
        if (g != args.gamma) {
            throw UsageError("simulate: closed forms require balanced gain g == gamma");
        }
        const LinearSolution sol = make_linear_solution(args.kappa, args.gamma);
        for (double t = 0.0;; t += args.stride) {
            if (t > t_end) t = t_end;
            TrajectorySample s;
            s.t = t;
            s.psi_a = {0.0, 0.0};  // derived below from the storage energy branch
            s.psi_b = psi_b_closed_form(sol, t);
            s.gain = args.gamma;
            s.e = transfer_energy_closed_form(sol, t);
            s.e_a = storage_energy_closed_form(sol, t);
            s.p = t > 0.0 ? s.e / t : 0.0;
            // Amplitude columns carry the closed-form psi_b; psi_a is only
            // defined up to the energy here, so store the real envelope.
            s.psi_a = {std::sqrt(s.e_a / sol.omega0), 0.0};
            traj.samples.push_back(s);
            if (t >= t_end) break;
        }
    } else {
        IntegrationConfig cfg;
        cfg.t_end = t_end;
        cfg.record_stride = args.stride;
        cfg.rel_tol = args.rel_tol;
        cfg.abs_tol = args.abs_tol;
        const IntegrationResult run = integrate(params, AmplitudeState{}, cfg);
        if (!run.ok()) {
            throw NumericalError("simulate: " + run.message);
        }
        traj = run.trajectory;
    }
    std::ostringstream csv;
    io::write_trajectory_csv(csv, traj);
    emit_table(args.out, csv.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepArgs {
    bool linear = false;
    bool nonlinear = false;
    std::string gamma_range;
    std::string d_range;
    double g1 = 3.0;
    double gamma1 = 0.05;
    double t_end = 0.0;
    double stride = 0.01;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double window = 20.0;
    double threshold = 1e-3;
    CoilOptions coil;
    CommonOutput out;
};

int run_sweep_cmd(const SweepArgs& args) {
    if (args.linear == args.nonlinear) {
        throw UsageError("sweep: pass exactly one of --linear / --nonlinear");
    }
    SweepGrid grid;
    grid.gamma_values = parse_range(args.gamma_range);
    grid.d_values = parse_range(args.d_range);
    grid.family = args.linear ? GainFamily(LinearPtFamily{})
                              : GainFamily(SaturableFamily{args.g1, args.gamma1});
    IntegrationConfig cfg;
    cfg.t_end = args.t_end > 0.0 ? args.t_end : (args.linear ? 20.0 : 200.0);
    cfg.record_stride = args.stride;
    cfg.rel_tol = args.rel_tol;
    cfg.abs_tol = args.abs_tol;

    const SweepResult result =
        run_sweep(grid, args.coil.geometry(), cfg, args.window, args.threshold);
    for (const auto& note : result.diagnostics) {
        std::cerr << "sweep: " << note << '\n';
    }
    std::ostringstream csv;
    io::write_sweep_csv(csv, result);
    emit_table(args.out, csv.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// step
// ---------------------------------------------------------------------------

struct StepArgs {
    std::string schedule_file;
    std::string segments;
    double gamma = 0.04;
    double g1 = 3.0;
    double gamma1 = 0.05;
    double t_end = 0.0;  // 0 = last start + 300
    double stride = 0.01;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double window = 20.0;
    double threshold = 1e-3;
    std::string report_path;
    CoilOptions coil;
    CommonOutput out;
};

StepSchedule parse_schedule(const StepArgs& args) {
    StepSchedule schedule;
    if (!args.schedule_file.empty()) {
        std::ifstream in(args.schedule_file);
        if (!in) {
            throw UsageError("step: cannot open schedule file " + args.schedule_file);
        }
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream fields(line);
            double t = 0.0, d = 0.0;
            if (fields >> t >> d) {
                schedule.segments.emplace_back(t, d);
            }
        }
    } else if (!args.segments.empty()) {
        std::istringstream in(args.segments);
        std::string part;
        while (std::getline(in, part, ',')) {
            const auto colon = part.find(':');
            if (colon == std::string::npos) {
                throw UsageError("step: --segments wants t:d pairs, got '" + part + "'");
            }
            schedule.segments.emplace_back(io::parse_double(part.substr(0, colon)),
                                           io::parse_double(part.substr(colon + 1)));
        }
    } else {
        throw UsageError("step: pass --schedule <file> or --segments t:d,...");
    }
    return schedule;
}

int run_step_cmd(const StepArgs& args) {
    const StepSchedule schedule = parse_schedule(args);
    validate(schedule);

    SystemParams params;
    params.gamma = args.gamma;
    params.gain = SaturableGain{args.g1, args.gamma1};
    params.kappa = 0.0;  // overridden by the schedule

    IntegrationConfig cfg;
    cfg.t_end = args.t_end > 0.0 ? args.t_end : schedule.segments.back().first + 300.0;
    cfg.record_stride = args.stride;
    cfg.rel_tol = args.rel_tol;
    cfg.abs_tol = args.abs_tol;

    const StepResponse response = run_step_response(schedule, args.coil.geometry(), params, cfg,
                                                    args.window, args.threshold);
    std::ostringstream csv;
    io::write_step_csv(csv, response);
    emit_table(args.out, csv.str());

    if (!args.report_path.empty()) {
        nlohmann::ordered_json j;
        j["segments"] = nlohmann::ordered_json::array();
        for (const auto& seg : response.segments) {
            j["segments"].push_back({{"t_start", seg.t_start},
                                     {"t_end", seg.t_end},
                                     {"d_m", seg.d},
                                     {"kappa", seg.kappa},
                                     {"converged", seg.steady.converged},
                                     {"t_settle", seg.steady.t_settle},
                                     {"e_steady", seg.steady.e_steady},
                                     {"g_measured", seg.steady.g_measured},
                                     {"mode_frequency", seg.steady.mode_frequency}});
        }
        emit(args.report_path, j.dump(2) + "\n");
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// circuit
// ---------------------------------------------------------------------------

struct CircuitArgs {
    std::string preset;
    std::string network = "linear";
    double l = 2.32e-3;
    double c = 10.7e-9;
    double m_over_l = 0.2;
    double r_b = 3e3;
    double r_f = 1e3;
    double r_g = 1e3;
    double rail = 15.0;
    double r1 = 500.0;
    double r2 = 10e3;
    double rg = 5e3;
    double diode_is = 2.52e-9;
    double diode_n = 1.752;
    double diode_vt = 25.85e-3;
    double t_end = 0.0;  // 0 = regime default
    double dt_max = 0.0; // 0 = carrier period / 200
    bool no_validate = false;
    std::string report_path;
    CommonOutput out;
};

CircuitParams circuit_params_from(const CircuitArgs& args) {
    if (!args.preset.empty()) {
        if (args.preset == "fig7-unbroken") return fig7_unbroken_preset();
        if (args.preset == "fig7-broken") return fig7_broken_preset();
        if (args.preset == "fig8") return fig8_saturation_preset();
        throw UsageError("circuit: unknown preset '" + args.preset +
                         "' (expected fig7-unbroken, fig7-broken, fig8)");
    }
    CircuitParams cp;
    cp.l = args.l;
    cp.c = args.c;
    cp.m_over_l = args.m_over_l;
    cp.r_b = args.r_b;
    if (args.network == "linear") {
        cp.gain_network = LinearBuffer{args.r_f, args.r_g, args.rail};
    } else if (args.network == "diode") {
        cp.gain_network =
            DiodeNetwork{args.r1, args.r2, args.rg,
                         DiodeParams{args.diode_is, args.diode_vt, args.diode_n}};
    } else {
        throw UsageError("circuit: --network must be linear or diode");
    }
    return cp;
}

int run_circuit_cmd(const CircuitArgs& args) {
    const CircuitParams cp = circuit_params_from(args);
    const CoupledModeMap map = map_to_coupled_mode(cp);
    const double dt = args.dt_max > 0.0
                          ? args.dt_max
                          : 2.0 * std::numbers::pi / map.omega0 / 200.0;

    double horizon = args.t_end;
    if (horizon <= 0.0) {
        const double kappa = map.params.kappa;
        const double gamma = map.params.gamma;
        if (!std::holds_alternative<LinearBuffer>(cp.gain_network)) {
            horizon = 1.5e-3;
        } else if (classify_region(kappa, gamma) == SpectralRegion::Unbroken) {
            horizon = 4.5 * std::numbers::pi / (std::sqrt(kappa * kappa - gamma * gamma) * map.omega0);
        } else {
            horizon = 8.5 / (std::sqrt(gamma * gamma - kappa * kappa) * map.omega0);
        }
    }

    const auto run = simulate_circuit(cp, CircuitState{}, horizon, dt);
    std::ostringstream csv;
    io::write_waveform_csv(csv, run);
    emit_table(args.out, csv.str());

    if (args.no_validate) {
        return kExitOk;
    }
    const CrossvalReport report = crossvalidate(cp, args.t_end);
    const std::string json = io::crossval_report_json(report);
    if (!args.report_path.empty()) {
        emit(args.report_path, json);
    } else {
        std::cerr << json;
    }
    return report.pass ? kExitOk : kExitValidation;
}

// ---------------------------------------------------------------------------
// coupling
// ---------------------------------------------------------------------------

struct CouplingArgs {
    std::string d_range = "0.2:1.2:61";
    double omega0 = 1.0;
    CoilOptions coil;
    CommonOutput out;
};

int run_coupling_cmd(const CouplingArgs& args) {
    const CouplingCurve curve =
        build_coupling_curve(args.coil.geometry(), parse_range(args.d_range), args.omega0);
    std::ostringstream csv;
    io::write_coupling_csv(csv, curve);
    emit_table(args.out, csv.str());
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Coupled-resonator wireless energy transfer toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file (sections per subcommand)");
    app.allow_config_extras(CLI::config_extras_mode::error);  // unknown keys rejected

    EigenArgs eigen_args;
    auto* eigen = app.add_subcommand("eigen", "Eigenfrequencies and saturated gain");
    eigen->add_flag("--linear", eigen_args.linear, "Balanced linear gain g = gamma");
    eigen->add_flag("--nonlinear", eigen_args.nonlinear, "Saturable gain model");
    eigen->add_option("--kappa", eigen_args.kappa, "Coupling rate (units of omega0)")
        ->required();
    eigen->add_option("--gamma", eigen_args.gamma, "Loss rate, value or lo:hi:n sweep")
        ->required();
    eigen->add_option("--g1", eigen_args.g1, "Saturable small-signal gain rate");
    eigen->add_option("--gamma1", eigen_args.gamma1, "Saturable intrinsic loss rate");
    eigen->add_option("--omega0", eigen_args.omega0, "Resonant frequency");
    add_output_options(eigen, eigen_args.out);

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Time evolution of one parameter set");
    simulate->add_flag("--linear", sim_args.linear, "Balanced linear gain g = gamma");
    simulate->add_flag("--nonlinear", sim_args.nonlinear, "Saturable gain model");
    simulate->add_flag("--analytic", sim_args.analytic, "Evaluate closed forms (linear only)");
    simulate->add_option("--kappa", sim_args.kappa, "Coupling rate");
    simulate->add_option("--gamma", sim_args.gamma, "Loss rate")->required();
    double g_override = 0.0;
    auto* g_opt = simulate->add_option("--g", g_override, "Linear gain override (default gamma)");
    simulate->add_option("--g1", sim_args.g1, "Saturable small-signal gain rate");
    simulate->add_option("--gamma1", sim_args.gamma1, "Saturable intrinsic loss rate");
    simulate->add_option("--t-end", sim_args.t_end, "Horizon (default 20 linear, 200 saturable)");
    simulate->add_option("--stride", sim_args.stride, "Record stride");
    simulate->add_option("--rel-tol", sim_args.rel_tol, "Integrator relative tolerance");
    simulate->add_option("--abs-tol", sim_args.abs_tol, "Integrator absolute tolerance");
    add_output_options(simulate, sim_args.out);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Distance/loss grid of transfer figures");
    sweep->add_flag("--linear", sweep_args.linear, "Balanced linear gain family");
    sweep->add_flag("--nonlinear", sweep_args.nonlinear, "Saturable gain family");
    sweep->add_option("--gamma-range", sweep_args.gamma_range, "Loss axis lo:hi:n")->required();
    sweep->add_option("--d-range", sweep_args.d_range, "Distance axis lo:hi:n in m")->required();
    sweep->add_option("--g1", sweep_args.g1, "Saturable small-signal gain rate");
    sweep->add_option("--gamma1", sweep_args.gamma1, "Saturable intrinsic loss rate");
    sweep->add_option("--t-end", sweep_args.t_end, "Horizon per cell");
    sweep->add_option("--stride", sweep_args.stride, "Record stride");
    sweep->add_option("--rel-tol", sweep_args.rel_tol, "Integrator relative tolerance");
    sweep->add_option("--abs-tol", sweep_args.abs_tol, "Integrator absolute tolerance");
    sweep->add_option("--window", sweep_args.window, "Steady-state detector window");
    sweep->add_option("--threshold", sweep_args.threshold, "Steady-state detector threshold");
    add_coil_options(sweep, sweep_args.coil);
    add_output_options(sweep, sweep_args.out);

    StepArgs step_args;
    auto* step = app.add_subcommand("step", "Stepped-distance transient (saturable gain)");
    step->add_option("--schedule", step_args.schedule_file, "File of 't_start d' lines");
    step->add_option("--segments", step_args.segments, "Inline schedule t:d,t:d,...");
    step->add_option("--gamma", step_args.gamma, "Loss rate");
    step->add_option("--g1", step_args.g1, "Saturable small-signal gain rate");
    step->add_option("--gamma1", step_args.gamma1, "Saturable intrinsic loss rate");
    step->add_option("--t-end", step_args.t_end, "Horizon (default: last start + 300)");
    step->add_option("--stride", step_args.stride, "Record stride");
    step->add_option("--rel-tol", step_args.rel_tol, "Integrator relative tolerance");
    step->add_option("--abs-tol", step_args.abs_tol, "Integrator absolute tolerance");
    step->add_option("--window", step_args.window, "Steady-state detector window");
    step->add_option("--threshold", step_args.threshold, "Steady-state detector threshold");
    step->add_option("--report", step_args.report_path, "Write per-segment settle report JSON");
    add_coil_options(step, step_args.coil);
    add_output_options(step, step_args.out);

    CircuitArgs circuit_args;
    auto* circuit = app.add_subcommand("circuit", "Coupled-tank transient and cross-validation");
    circuit->add_option("--preset", circuit_args.preset,
                        "fig7-unbroken, fig7-broken, or fig8");
    circuit->add_option("--network", circuit_args.network, "Gain network: linear or diode");
    circuit->add_option("--l", circuit_args.l, "Tank inductance in H");
    circuit->add_option("--c", circuit_args.c, "Tank capacitance in F");
    circuit->add_option("--m-over-l", circuit_args.m_over_l, "Coupling ratio M/L");
    circuit->add_option("--r-b", circuit_args.r_b, "Load resistance in Ohm");
    circuit->add_option("--r-f", circuit_args.r_f, "Buffer feedback resistor in Ohm");
    circuit->add_option("--r-g", circuit_args.r_g, "Buffer ground resistor in Ohm");
    circuit->add_option("--rail", circuit_args.rail, "Buffer supply rail in V");
    circuit->add_option("--r1", circuit_args.r1, "Diode network series resistor in Ohm");
    circuit->add_option("--r2", circuit_args.r2, "Diode network shunt resistor in Ohm");
    circuit->add_option("--rg", circuit_args.rg, "Diode network ground resistor in Ohm");
    circuit->add_option("--diode-is", circuit_args.diode_is, "Diode saturation current in A");
    circuit->add_option("--diode-n", circuit_args.diode_n, "Diode ideality factor");
    circuit->add_option("--diode-vt", circuit_args.diode_vt, "Diode thermal voltage in V");
    circuit->add_option("--t-end", circuit_args.t_end, "Horizon in s (default per regime)");
    circuit->add_option("--dt-max", circuit_args.dt_max, "Max step in s (default T0/200)");
    circuit->add_flag("--no-validate", circuit_args.no_validate,
                      "Skip the coupled-mode cross-validation gate");
    circuit->add_option("--report", circuit_args.report_path,
                        "Write the cross-validation report JSON to a file");
    add_output_options(circuit, circuit_args.out);

    CouplingArgs coupling_args;
    auto* coupling = app.add_subcommand("coupling", "Tabulate kappa(d) for a coil pair");
    coupling->add_option("--d-range", coupling_args.d_range, "Distance axis lo:hi:n in m");
    coupling->add_option("--omega0", coupling_args.omega0, "Frequency scale");
    add_coil_options(coupling, coupling_args.coil);
    add_output_options(coupling, coupling_args.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (g_opt->count() > 0) {
        sim_args.g = g_override;
    }

    try {
        if (eigen->parsed()) return run_eigen(eigen_args);
        if (simulate->parsed()) return run_simulate(sim_args);
        if (sweep->parsed()) return run_sweep_cmd(sweep_args);
        if (step->parsed()) return run_step_cmd(step_args);
        if (circuit->parsed()) return run_circuit_cmd(circuit_args);
        if (coupling->parsed()) return run_coupling_cmd(coupling_args);
        std::cerr << "no subcommand selected\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace ptdimer::cli
