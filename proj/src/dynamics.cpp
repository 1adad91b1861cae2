#include "ptdimer/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ptdimer {

void validate(const IntegrationConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
        throw std::invalid_argument("IntegrationConfig: tolerances must be > 0");
    }
    if (!(cfg.t_end > 0.0)) {
        throw std::invalid_argument("IntegrationConfig: t_end must be > 0");
    }
    if (!(cfg.max_step > 0.0) || !(cfg.record_stride > 0.0)) {
        throw std::invalid_argument("IntegrationConfig: max_step and record_stride must be > 0");
    }
    if (!(cfg.overflow_guard > 0.0)) {
        throw std::invalid_argument("IntegrationConfig: overflow_guard must be > 0");
    }
}

namespace {

using State = std::array<Complex, 2>;

State rhs(const SystemParams& p, double kappa, const State& y) {
    const double g = eval_gain(p.gain, std::abs(y[0]));
    const Complex ik(0.0, kappa);
    return {Complex(g, -p.omega_a) * y[0] - ik * y[1],
            Complex(-p.gamma, -p.omega_b) * y[1] - ik * y[0]};
}

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5.0;
constexpr double A31 = 3.0 / 40.0, A32 = 9.0 / 40.0;
constexpr double A41 = 44.0 / 45.0, A42 = -56.0 / 15.0, A43 = 32.0 / 9.0;
constexpr double A51 = 19372.0 / 6561.0, A52 = -25360.0 / 2187.0,
                 A53 = 64448.0 / 6561.0, A54 = -212.0 / 729.0;
constexpr double A61 = 9017.0 / 3168.0, A62 = -355.0 / 33.0, A63 = 46732.0 / 5247.0,
                 A64 = 49.0 / 176.0, A65 = -5103.0 / 18656.0;
constexpr double B1 = 35.0 / 384.0, B3 = 500.0 / 1113.0, B4 = 125.0 / 192.0,
                 B5 = -2187.0 / 6784.0, B6 = 11.0 / 84.0;
constexpr double E1 = 71.0 / 57600.0, E3 = -71.0 / 16695.0, E4 = 71.0 / 1920.0,
                 E5 = -17253.0 / 339200.0, E6 = 22.0 / 525.0, E7 = -1.0 / 40.0;

struct StepOutcome {
    State y;
    State k_last;  // FSAL stage, valid when err is finite
    double err;    // scaled error estimate, accept when <= 1
};

StepOutcome dp_step(const SystemParams& p, double kappa, const State& y,
                    const State& k1, double h, double rel_tol, double abs_tol) {
    auto lin = [&](std::initializer_list<std::pair<double, const State*>> terms) {
        State out = y;
        for (const auto& [c, k] : terms) {
            out[0] += h * c * (*k)[0];
            out[1] += h * c * (*k)[1];
        }
        return out;
    };

    const State k2 = rhs(p, kappa, lin({{A21, &k1}}));
    const State k3 = rhs(p, kappa, lin({{A31, &k1}, {A32, &k2}}));
    const State k4 = rhs(p, kappa, lin({{A41, &k1}, {A42, &k2}, {A43, &k3}}));
    const State k5 = rhs(p, kappa, lin({{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}));
    const State k6 =
        rhs(p, kappa, lin({{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}}));
    const State y5 = lin({{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}});
    const State k7 = rhs(p, kappa, y5);

    double err_sq = 0.0;
    for (int j = 0; j < 2; ++j) {
        const Complex ej = h * (E1 * k1[j] + E3 * k3[j] + E4 * k4[j] + E5 * k5[j] +
                                E6 * k6[j] + E7 * k7[j]);
        const double sc = abs_tol + rel_tol * std::max(std::abs(y[j]), std::abs(y5[j]));
        const double r = std::abs(ej) / sc;
        err_sq += r * r;
    }
    return {y5, k7, std::sqrt(0.5 * err_sq)};
}

bool state_ok(const State& y, double guard) {
    for (const auto& c : y) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        if (std::abs(c.real()) > guard || std::abs(c.imag()) > guard) return false;
    }
    return true;
}

TrajectorySample make_sample(const SystemParams& p, double t, const State& y) {
    TrajectorySample s;
    s.t = t;
    s.psi_a = y[0];
    s.psi_b = y[1];
    s.gain = eval_gain(p.gain, std::abs(y[0]));
    s.e = p.omega_b * std::norm(y[1]);
    s.e_a = p.omega_a * std::norm(y[0]);
    s.p = t > 0.0 ? s.e / t : 0.0;
    return s;
}

void check_schedule(const KappaSchedule& schedule) {
    if (schedule.empty()) return;
    if (schedule.front().first != 0.0) {
        throw std::invalid_argument("KappaSchedule: first segment must start at t = 0");
    }
    for (std::size_t i = 1; i < schedule.size(); ++i) {
        if (!(schedule[i].first > schedule[i - 1].first)) {
            throw std::invalid_argument("KappaSchedule: segment starts must strictly increase");
        }
    }
    for (const auto& [t0, k] : schedule) {
        (void)t0;
        if (!(k >= 0.0)) {
            throw std::invalid_argument("KappaSchedule: kappa must be >= 0");
        }
    }
}

} // namespace

IntegrationResult integrate(const SystemParams& params, const AmplitudeState& initial,
                            const IntegrationConfig& cfg, const KappaSchedule& schedule) {
    validate(params);
    validate(cfg);
    check_schedule(schedule);

    IntegrationResult result;
    Trajectory& traj = result.trajectory;
    traj.params = params;
    traj.samples.reserve(static_cast<std::size_t>(cfg.t_end / cfg.record_stride) + 2);

    State y{initial.psi_a, initial.psi_b};
    double t = 0.0;
    std::size_t seg = 0;
    double kappa = schedule.empty() ? params.kappa : schedule.front().second;

    SystemParams current = params;
    current.kappa = kappa;
    traj.samples.push_back(make_sample(current, t, y));

    // Proposed step from the controller; the attempted step may be shorter
    // to land on a record or switch time.
    double h_prop = std::min({cfg.max_step, cfg.record_stride, 0.01});
    double err_prev = 1.0;
    bool have_err_prev = false;
    State k1 = rhs(params, kappa, y);
    long next_record = 1;

    const double h_floor = 1e3 * std::numeric_limits<double>::epsilon();

    while (t < cfg.t_end) {
        double t_target = std::min(next_record * cfg.record_stride, cfg.t_end);
        bool switching = false;
        if (seg + 1 < schedule.size() && schedule[seg + 1].first <= t_target) {
            t_target = schedule[seg + 1].first;
            switching = schedule[seg + 1].first == t_target;
        }

        while (t < t_target) {
            const double h = std::min(h_prop, t_target - t);
            if (h < h_floor * std::max(1.0, std::abs(t))) {
                result.status = IntegrationStatus::StepUnderflow;
                result.message = "step size underflow at t = " + std::to_string(t);
                return result;
            }
            const StepOutcome step =
                dp_step(params, kappa, y, k1, h, cfg.rel_tol, cfg.abs_tol);

            if (!std::isfinite(step.err) || step.err > 1.0) {
                const double e = std::isfinite(step.err) ? step.err : 100.0;
                h_prop = h * std::clamp(0.9 * std::pow(e, -0.2), 0.1, 0.9);
                have_err_prev = false;
                continue;
            }

            y = step.y;
            k1 = step.k_last;  // FSAL
            t = (h == t_target - t || t + h >= t_target) ? t_target : t + h;

            if (!state_ok(y, cfg.overflow_guard)) {
                result.status = IntegrationStatus::Diverged;
                result.message = "amplitude exceeded overflow guard at t = " + std::to_string(t);
                return result;
            }

            const double e = std::max(step.err, 1e-10);
            double fac;
            if (have_err_prev) {
                fac = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            } else {
                fac = 0.9 * std::pow(e, -0.2);
            }
            h_prop = std::min(cfg.max_step, h * std::clamp(fac, 0.2, 5.0));
            err_prev = e;
            have_err_prev = true;
        }

        if (switching) {
            ++seg;
            kappa = schedule[seg].second;
            current.kappa = kappa;
            k1 = rhs(params, kappa, y);  // RHS changed under the state
        }
        if (t >= next_record * cfg.record_stride || t >= cfg.t_end) {
            if (t >= next_record * cfg.record_stride) ++next_record;
            traj.samples.push_back(make_sample(current, t, y));
        }
    }
    return result;
}

namespace {

std::size_t trailing_begin(const Trajectory& traj, double window) {
    const double t_cut = traj.samples.back().t - window;
    std::size_t i = traj.samples.size();
    while (i > 0 && traj.samples[i - 1].t >= t_cut) --i;
    return i;
}

} // namespace

SteadyStateReport detect_steady_state(const Trajectory& traj, double window, double threshold) {
    if (!(window > 0.0) || !(threshold > 0.0)) {
        throw std::invalid_argument("detect_steady_state: window and threshold must be > 0");
    }
    if (traj.samples.size() < 4 || traj.duration() < 2.0 * window) {
        throw std::invalid_argument("detect_steady_state: trajectory shorter than 2*window");
    }

    const auto& s = traj.samples;
    const std::size_t n = s.size();
    const std::size_t tail = trailing_begin(traj, window);

    SteadyStateReport report;
    double b2_max = 0.0, b2_min = std::numeric_limits<double>::infinity();
    double e_sum = 0.0, g_sum = 0.0;
    for (std::size_t i = tail; i < n; ++i) {
        const double b2 = std::norm(s[i].psi_b);
        b2_max = std::max(b2_max, b2);
        b2_min = std::min(b2_min, b2);
        e_sum += s[i].e;
        g_sum += s[i].gain;
    }
    const auto count = static_cast<double>(n - tail);
    const double b2_mean = (b2_max + b2_min) > 0.0 ? e_sum / count / traj.params.omega_b : 0.0;
    const double fluct = b2_mean > 0.0 ? (b2_max - b2_min) / b2_mean : 0.0;

    report.converged = fluct < threshold;
    report.e_steady = e_sum / count;
    report.g_measured = g_sum / count;

    // Earliest time after which the suffix stays within the band.
    report.t_settle = s.back().t;
    if (report.converged) {
        std::vector<double> suf_max(n), suf_min(n), suf_sum(n + 1);
        suf_sum[n] = 0.0;
        double mx = -std::numeric_limits<double>::infinity();
        double mn = std::numeric_limits<double>::infinity();
        for (std::size_t i = n; i-- > 0;) {
            const double b2 = std::norm(s[i].psi_b);
            mx = std::max(mx, b2);
            mn = std::min(mn, b2);
            suf_max[i] = mx;
            suf_min[i] = mn;
            suf_sum[i] = suf_sum[i + 1] + b2;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double mean = suf_sum[i] / static_cast<double>(n - i);
            if (mean > 0.0 && (suf_max[i] - suf_min[i]) / mean < threshold) {
                report.t_settle = s[i].t;
                break;
            }
            if (mean == 0.0) {
                report.t_settle = s[i].t;
                break;
            }
        }

        // Mode frequency from the unwrapped phase of psi_b over the tail.
        if (b2_min > 0.0 && n - tail > 2) {
            double phase = std::arg(s[tail].psi_b);
            double t_sum = 0.0, p_sum = 0.0, tt_sum = 0.0, tp_sum = 0.0;
            double prev_phase = phase;
            Complex prev = s[tail].psi_b;
            for (std::size_t i = tail; i < n; ++i) {
                if (i > tail) {
                    phase = prev_phase + std::arg(s[i].psi_b / prev);
                    prev = s[i].psi_b;
                    prev_phase = phase;
                }
                const double ti = s[i].t;
                t_sum += ti;
                p_sum += phase;
                tt_sum += ti * ti;
                tp_sum += ti * phase;
            }
            const double denom = count * tt_sum - t_sum * t_sum;
            if (denom > 0.0) {
                report.mode_frequency = -(count * tp_sum - t_sum * p_sum) / denom;
            }
        }
    }
    return report;
}

double measure_mode_frequency(const Trajectory& traj, double window, double threshold) {
    const SteadyStateReport report = detect_steady_state(traj, window, threshold);
    if (!report.converged) {
        throw std::runtime_error("measure_mode_frequency: trajectory has no steady trailing segment");
    }
    return report.mode_frequency;
}

} // namespace ptdimer
