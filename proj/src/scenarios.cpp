#include "ptdimer/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ptdimer/analytic.hpp"

namespace ptdimer {

namespace {

// First positive root of tan(x) = 2x, the maximizer of sin^2(x)/x. Solved
// once by bisection on h(x) = sin x (2x cos x - sin x), which is positive
// below the root and negative above it on (0, pi/2 .. pi).
double peak_abscissa() {
    static const double value = [] {
        double lo = 1.0, hi = 1.5;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double h = 2.0 * mid * std::cos(mid) - std::sin(mid);
            (h > 0.0 ? lo : hi) = mid;
            if (hi - lo < 1e-15) break;
        }
        return 0.5 * (lo + hi);
    }();
    return value;
}

// Closed-form extrema of the linear balanced-gain cell over [0, t_end].
void linear_cell_extrema(const LinearSolution& sol, double t_end, double& e_max, double& p_max) {
    const double k2 = sol.kappa * sol.kappa;
    const double delta = k2 - sol.gamma * sol.gamma;
    if (sol.region == SpectralRegion::Unbroken && delta > 0.0) {
        const double om = std::sqrt(delta);
        // E = w0 k^2 sin^2(om t)/delta peaks at om t = pi/2.
        if (om * t_end >= 0.5 * std::numbers::pi) {
            e_max = sol.omega0 * k2 / delta;
        } else {
            e_max = transfer_energy_closed_form(sol, t_end);
        }
        // P = E/t: global maximum of sin^2(x)/x sits on the first hump.
        const double x_peak = peak_abscissa();
        const double x = std::min(om * t_end, x_peak);
        const double s = std::sin(x);
        p_max = sol.omega0 * k2 / om * (s * s / x);
    } else {
        // EP and broken branches grow monotonically, as does E/t.
        e_max = transfer_energy_closed_form(sol, t_end);
        p_max = e_max / t_end;
    }
}

} // namespace

SweepResult run_sweep(const SweepGrid& grid, const CoilGeometry& geom,
                      const IntegrationConfig& cfg, double detect_window,
                      double detect_threshold) {
    if (grid.d_values.empty() || grid.gamma_values.empty()) {
        throw std::invalid_argument("run_sweep: empty grid axis");
    }
    if (!std::is_sorted(grid.d_values.begin(), grid.d_values.end()) ||
        !std::is_sorted(grid.gamma_values.begin(), grid.gamma_values.end())) {
        throw std::invalid_argument("run_sweep: grid axes must be sorted ascending");
    }
    validate(cfg);

    SweepResult result;
    result.grid = grid;
    result.cells.reserve(grid.d_values.size() * grid.gamma_values.size());

    std::vector<double> kappas;
    kappas.reserve(grid.d_values.size());
    for (const double d : grid.d_values) {
        kappas.push_back(kappa_of_distance(geom, d));
    }

    const bool saturable = std::holds_alternative<SaturableFamily>(grid.family);
    for (std::size_t i = 0; i < grid.d_values.size(); ++i) {
        for (const double gamma : grid.gamma_values) {
            SweepCell cell;
            cell.d = grid.d_values[i];
            cell.gamma = gamma;
            cell.kappa = kappas[i];
            cell.region = classify_region(cell.kappa, gamma);

            if (!saturable) {
                const LinearSolution sol = make_linear_solution(cell.kappa, gamma);
                linear_cell_extrema(sol, cfg.t_end, cell.e_max, cell.p_max);
            } else {
                const auto& fam = std::get<SaturableFamily>(grid.family);
                SystemParams params;
                params.kappa = cell.kappa;
                params.gamma = gamma;
                params.gain = SaturableGain{fam.g1, fam.gamma1};
                const IntegrationResult run = integrate(params, AmplitudeState{}, cfg);
                if (!run.ok()) {
                    cell.converged = false;
                    result.diagnostics.push_back("cell d=" + std::to_string(cell.d) +
                                                 " gamma=" + std::to_string(gamma) + ": " +
                                                 run.message);
                } else {
                    const SteadyStateReport steady =
                        detect_steady_state(run.trajectory, detect_window, detect_threshold);
                    cell.converged = steady.converged;
                    cell.e_s = steady.e_steady;
                    if (!steady.converged) {
                        result.diagnostics.push_back("cell d=" + std::to_string(cell.d) +
                                                     " gamma=" + std::to_string(gamma) +
                                                     ": no steady state within t_end");
                    }
                }
                for (const auto& s : run.trajectory.samples) {
                    cell.e_max = std::max(cell.e_max, s.e);
                    cell.p_max = std::max(cell.p_max, s.p);
                }
            }
            result.cells.push_back(std::move(cell));
        }
    }

    const double k_lo = kappas.back();
    const double k_hi = kappas.front();
    for (const double gamma : grid.gamma_values) {
        if (gamma >= k_lo && gamma <= k_hi && grid.d_values.size() > 1) {
            const double d_star = exceptional_arc(
                [&](double d) { return kappa_of_distance(geom, d); }, gamma,
                grid.d_values.front(), grid.d_values.back());
            result.arc.emplace_back(gamma, d_star);
        }
    }
    return result;
}

void validate(const StepSchedule& schedule) {
    if (schedule.segments.empty()) {
        throw std::invalid_argument("StepSchedule: no segments");
    }
    if (schedule.segments.front().first != 0.0) {
        throw std::invalid_argument("StepSchedule: first segment must start at t = 0");
    }
    for (std::size_t i = 1; i < schedule.segments.size(); ++i) {
        if (!(schedule.segments[i].first > schedule.segments[i - 1].first)) {
            throw std::invalid_argument("StepSchedule: segment starts must strictly increase");
        }
    }
}

double StepResponse::distance_at(double t) const {
    double d = segments.empty() ? 0.0 : segments.front().d;
    for (const auto& seg : segments) {
        if (seg.t_start <= t) {
            d = seg.d;
        } else {
            break;
        }
    }
    return d;
}

StepResponse run_step_response(const StepSchedule& schedule, const CoilGeometry& geom,
                               const SystemParams& params, const IntegrationConfig& cfg,
                               double detect_window, double detect_threshold) {
    validate(schedule);
    if (is_linear(params.gain)) {
        throw std::invalid_argument("run_step_response: requires a saturable gain model");
    }
    if (!(cfg.t_end > schedule.segments.back().first)) {
        throw std::invalid_argument("run_step_response: t_end must exceed the last segment start");
    }

    KappaSchedule kappa_schedule;
    kappa_schedule.reserve(schedule.segments.size());
    for (const auto& [t0, d] : schedule.segments) {
        kappa_schedule.emplace_back(t0, kappa_of_distance(geom, d));
    }

    StepResponse response;
    const IntegrationResult run = integrate(params, AmplitudeState{}, cfg, kappa_schedule);
    if (!run.ok()) {
        throw std::runtime_error("run_step_response: integration failed: " + run.message);
    }
    response.trajectory = run.trajectory;

    for (std::size_t i = 0; i < schedule.segments.size(); ++i) {
        StepSegmentReport report;
        report.t_start = schedule.segments[i].first;
        report.t_end =
            i + 1 < schedule.segments.size() ? schedule.segments[i + 1].first : cfg.t_end;
        report.d = schedule.segments[i].second;
        report.kappa = kappa_schedule[i].second;

        Trajectory segment;
        segment.params = params;
        segment.params.kappa = report.kappa;
        for (const auto& s : run.trajectory.samples) {
            if (s.t >= report.t_start && s.t <= report.t_end) {
                segment.samples.push_back(s);
            }
        }
        if (segment.duration() >= 2.0 * detect_window) {
            report.steady = detect_steady_state(segment, detect_window, detect_threshold);
        } else {
            report.steady.converged = false;  // segment too short to judge
        }
        response.segments.push_back(std::move(report));
    }
    return response;
}

StorageComparison run_storage_comparison(const SystemParams& params,
                                         const IntegrationConfig& cfg) {
    StorageComparison cmp;
    const IntegrationResult run = integrate(params, AmplitudeState{}, cfg);
    cmp.numeric = run.trajectory;

    if (const auto* lin = std::get_if<LinearGain>(&params.gain);
        lin != nullptr && params.omega_a == params.omega_b) {
        const double scale = std::max({std::abs(lin->g), params.gamma, 1.0});
        if (std::abs(lin->g - params.gamma) <= 1e-12 * scale) {
            const LinearSolution sol =
                make_linear_solution(params.kappa, params.gamma, params.omega_a);
            cmp.closed_form_e.reserve(cmp.numeric.samples.size());
            cmp.closed_form_e_a.reserve(cmp.numeric.samples.size());
            for (const auto& s : cmp.numeric.samples) {
                cmp.closed_form_e.push_back(transfer_energy_closed_form(sol, s.t));
                cmp.closed_form_e_a.push_back(storage_energy_closed_form(sol, s.t));
            }
        }
    }
    return cmp;
}

} // namespace ptdimer
