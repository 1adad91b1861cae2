#include "ptdimer/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ptdimer/dynamics.hpp"

namespace ptdimer {

namespace {

void validate(const DiodeParams& dp) {
    if (!(dp.i_s > 0.0) || !(dp.v_t > 0.0) || !(dp.n >= 1.0)) {
        throw std::invalid_argument("DiodeParams: need i_s > 0, v_t > 0, n >= 1");
    }
}

} // namespace

void validate(const CircuitParams& cp) {
    if (!(cp.l > 0.0) || !(cp.c > 0.0)) {
        throw std::invalid_argument("CircuitParams: L and C must be > 0");
    }
    if (!(cp.m_over_l > 0.0) || !(cp.m_over_l < 1.0)) {
        throw std::invalid_argument("CircuitParams: M/L must lie in (0, 1)");
    }
    if (!(cp.r_b > 0.0)) {
        throw std::invalid_argument("CircuitParams: r_b must be > 0");
    }
    if (const auto* buf = std::get_if<LinearBuffer>(&cp.gain_network)) {
        if (!(buf->r_f > 0.0) || !(buf->r_g > 0.0) || !(buf->rail > 0.0)) {
            throw std::invalid_argument("LinearBuffer: resistances and rail must be > 0");
        }
    } else {
        const auto& net = std::get<DiodeNetwork>(cp.gain_network);
        if (!(net.r_1 > 0.0) || !(net.r_2 > 0.0) || !(net.r_g > 0.0)) {
            throw std::invalid_argument("DiodeNetwork: resistances must be > 0");
        }
        validate(net.diode);
    }
}

CoupledModeMap map_to_coupled_mode(const CircuitParams& cp) {
    validate(cp);
    CoupledModeMap map;
    map.omega0 = 1.0 / std::sqrt(cp.l * cp.c);
    map.params.omega_a = 1.0;
    map.params.omega_b = 1.0;
    map.params.kappa = 0.5 * cp.m_over_l;
    map.params.gamma = 1.0 / (2.0 * cp.c * cp.r_b) / map.omega0;

    if (const auto* buf = std::get_if<LinearBuffer>(&cp.gain_network)) {
        // -R_A = -r_b r_g / r_f, so balanced gain comes out of r_f = r_g.
        const double r_a = cp.r_b * buf->r_g / buf->r_f;
        map.params.gain = LinearGain{1.0 / (2.0 * cp.c * r_a) / map.omega0};
    } else {
        const auto& net = std::get<DiodeNetwork>(cp.gain_network);
        // Small-signal diode resistance n v_t / (2 i_s) fixes the
        // zero-amplitude gain; the r_2 leg fixes the large-amplitude loss.
        const double r_d0 = net.diode.n * net.diode.v_t / (2.0 * net.diode.i_s);
        const double gamma1 = 1.0 / (2.0 * cp.c * net.r_2) / map.omega0;
        const double g0 = r_d0 / (2.0 * cp.c * net.r_1 * net.r_g) / map.omega0 - gamma1;
        map.params.gain = SaturableGain{0.5 * (g0 - gamma1), gamma1};
    }
    return map;
}

namespace {

struct GainCurrent {
    double i;   // current injected into node A
    double di;  // derivative w.r.t. u_a
};

GainCurrent node_a_injection(const CircuitParams& cp, double u_a) {
    if (const auto* buf = std::get_if<LinearBuffer>(&cp.gain_network)) {
        // The buffer output drives node A back through a series resistor
        // equal to the load r_b, so r_f = r_g balances gain against loss.
        const double gain = 1.0 + buf->r_f / buf->r_g;
        const double u_out = std::clamp(gain * u_a, -buf->rail, buf->rail);
        const bool clipped = std::abs(gain * u_a) >= buf->rail;
        return {(u_out - u_a) / cp.r_b, (clipped ? -1.0 : gain - 1.0) / cp.r_b};
    }
    const auto& d = std::get<DiodeNetwork>(cp.gain_network);
    // Antiparallel pair carries u_a/r_g, so its voltage drop follows the
    // inverse Shockley law n v_t asinh(i/(2 i_s)).
    const double scale = 2.0 * d.diode.i_s * d.r_g;
    const double x = u_a / scale;
    const double v_d = d.diode.n * d.diode.v_t * std::asinh(x);
    return {v_d / d.r_1 - u_a / d.r_2,
            d.diode.n * d.diode.v_t / (scale * std::sqrt(1.0 + x * x)) / d.r_1 - 1.0 / d.r_2};
}

struct Vec4 {
    double v[4];
    double& operator[](int i) { return v[i]; }
    double operator[](int i) const { return v[i]; }
};

// State order: (u_a, u_b, i_a, i_b).
Vec4 circuit_rhs(const CircuitParams& cp, const Vec4& x) {
    const double m = cp.m_over_l * cp.l;
    const double det = cp.l * cp.l - m * m;
    const GainCurrent ga = node_a_injection(cp, x[0]);
    return {{(-x[2] + ga.i) / cp.c,
             (-x[3] - x[1] / cp.r_b) / cp.c,
             (cp.l * x[0] + m * x[1]) / det,
             (m * x[0] + cp.l * x[1]) / det}};
}

// Solve (I - dt/2 J) delta = r in place; plain 4x4 elimination with
// partial pivoting.
Vec4 solve_newton_system(const CircuitParams& cp, const Vec4& x, double dt, const Vec4& r) {
    const double m = cp.m_over_l * cp.l;
    const double det = cp.l * cp.l - m * m;
    const GainCurrent ga = node_a_injection(cp, x[0]);
    const double h = 0.5 * dt;

    double a[4][5] = {
        {1.0 - h * ga.di / cp.c, 0.0, h / cp.c, 0.0, r[0]},
        {0.0, 1.0 + h / (cp.r_b * cp.c), 0.0, h / cp.c, r[1]},
        {-h * cp.l / det, -h * m / det, 1.0, 0.0, r[2]},
        {-h * m / det, -h * cp.l / det, 0.0, 1.0, r[3]},
    };
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int row = col + 1; row < 4; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
        }
        if (piv != col) std::swap(a[piv], a[col]);
        if (a[col][col] == 0.0) {
            throw std::runtime_error("simulate_circuit: singular Newton system");
        }
        for (int row = col + 1; row < 4; ++row) {
            const double f = a[row][col] / a[col][col];
            for (int k = col; k < 5; ++k) a[row][k] -= f * a[col][k];
        }
    }
    Vec4 out{};
    for (int row = 3; row >= 0; --row) {
        double s = a[row][4];
        for (int k = row + 1; k < 4; ++k) s -= a[row][k] * out[k];
        out[row] = s / a[row][row];
    }
    return out;
}

// One trapezoidal step; recursively halves on Newton failure.
Vec4 trapezoidal_advance(const CircuitParams& cp, const Vec4& x0, double dt, double z0,
                         int depth = 0) {
    const Vec4 f0 = circuit_rhs(cp, x0);
    Vec4 x{{x0[0] + dt * f0[0], x0[1] + dt * f0[1], x0[2] + dt * f0[2], x0[3] + dt * f0[3]}};
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
        const Vec4 f = circuit_rhs(cp, x);
        Vec4 res{};
        for (int j = 0; j < 4; ++j) {
            res[j] = -(x[j] - x0[j] - 0.5 * dt * (f0[j] + f[j]));
        }
        const Vec4 delta = solve_newton_system(cp, x, dt, res);
        for (int j = 0; j < 4; ++j) x[j] += delta[j];
        const double step = std::max(std::max(std::abs(delta[0]), std::abs(delta[1])),
                                     z0 * std::max(std::abs(delta[2]), std::abs(delta[3])));
        if (step < 1e-10) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        if (depth >= 20) {
            throw std::runtime_error("simulate_circuit: Newton failed below the step floor");
        }
        const Vec4 mid = trapezoidal_advance(cp, x0, 0.5 * dt, z0, depth + 1);
        return trapezoidal_advance(cp, mid, 0.5 * dt, z0, depth + 1);
    }
    return x;
}

} // namespace

std::vector<CircuitState> simulate_circuit(const CircuitParams& cp, const CircuitState& initial,
                                           double t_end, double dt_max) {
    validate(cp);
    if (!(t_end > 0.0) || !(dt_max > 0.0)) {
        throw std::invalid_argument("simulate_circuit: t_end and dt_max must be > 0");
    }
    const auto n = static_cast<std::size_t>(std::ceil(t_end / dt_max));
    const double dt = t_end / static_cast<double>(n);
    const double z0 = std::sqrt(cp.l / cp.c);  // scales current tolerances to volts

    std::vector<CircuitState> out;
    out.reserve(n + 1);
    out.push_back(initial);
    out.front().t = 0.0;

    Vec4 x{{initial.u_a, initial.u_b, initial.i_a, initial.i_b}};
    for (std::size_t k = 1; k <= n; ++k) {
        x = trapezoidal_advance(cp, x, dt, z0);
        if (!std::isfinite(x[0]) || std::abs(x[0]) > 1e12 || std::abs(x[1]) > 1e12) {
            throw std::runtime_error("simulate_circuit: voltage diverged at t = " +
                                     std::to_string(static_cast<double>(k) * dt));
        }
        out.push_back({x[0], x[1], x[2], x[3], static_cast<double>(k) * dt});
    }
    return out;
}

double tank_energy(const CircuitParams& cp, const CircuitState& s) {
    const double m = cp.m_over_l * cp.l;
    return 0.5 * cp.c * (s.u_a * s.u_a + s.u_b * s.u_b) +
           0.5 * cp.l * (s.i_a * s.i_a + s.i_b * s.i_b) - m * s.i_a * s.i_b;
}

std::vector<EnvelopePoint> extract_envelope(
    const std::vector<std::pair<double, double>>& waveform, double carrier) {
    if (waveform.size() < 3) {
        throw std::invalid_argument("extract_envelope: waveform too short");
    }
    if (!(carrier > 0.0)) {
        throw std::invalid_argument("extract_envelope: carrier must be > 0");
    }
    const double dt = waveform[1].first - waveform[0].first;
    for (std::size_t i = 1; i < waveform.size(); ++i) {
        if (std::abs(waveform[i].first - waveform[i - 1].first - dt) > 1e-6 * dt) {
            throw std::invalid_argument("extract_envelope: waveform grid is not uniform");
        }
    }
    const double period = 2.0 * std::numbers::pi / carrier;
    if (dt > period / 20.0) {
        throw std::invalid_argument("extract_envelope: fewer than 20 samples per carrier period");
    }

    // Zero-phase Blackman-windowed sinc, cutoff at the carrier, spanning
    // six carrier periods.
    const int half = static_cast<int>(std::lround(3.0 * period / dt));
    const int ntap = 2 * half + 1;
    if (waveform.size() < static_cast<std::size_t>(ntap)) {
        throw std::invalid_argument("extract_envelope: waveform shorter than the filter support");
    }
    std::vector<double> taps(ntap);
    double norm = 0.0;
    for (int i = 0; i < ntap; ++i) {
        const int k = i - half;
        const double w = carrier * static_cast<double>(k) * dt;
        const double sinc = k == 0 ? 1.0 : std::sin(w) / w;
        const double phase = 2.0 * std::numbers::pi * static_cast<double>(i) /
                             static_cast<double>(ntap - 1);
        const double window = 0.42 - 0.5 * std::cos(phase) + 0.08 * std::cos(2.0 * phase);
        taps[i] = sinc * window;
        norm += taps[i];
    }
    for (double& tap : taps) tap /= norm;

    std::vector<Complex> demod(waveform.size());
    for (std::size_t i = 0; i < waveform.size(); ++i) {
        const double t = waveform[i].first;
        demod[i] = 2.0 * waveform[i].second *
                   Complex(std::cos(carrier * t), -std::sin(carrier * t));
    }

    std::vector<EnvelopePoint> env;
    env.reserve(waveform.size() - static_cast<std::size_t>(ntap) + 1);
    for (std::size_t center = half; center + half < waveform.size(); ++center) {
        Complex acc{0.0, 0.0};
        for (int i = 0; i < ntap; ++i) {
            acc += taps[i] * demod[center + half - i];
        }
        env.push_back({waveform[center].first, std::abs(acc)});
    }
    return env;
}

namespace {

std::vector<std::pair<double, double>> u_b_waveform(const std::vector<CircuitState>& run) {
    std::vector<std::pair<double, double>> wf;
    wf.reserve(run.size());
    for (const auto& s : run) wf.emplace_back(s.t, s.u_b);
    return wf;
}

// Interior minima well below the global peak; cusp positions locate the
// envelope zeros of a two-mode beat.
std::vector<double> envelope_minima(const std::vector<EnvelopePoint>& env) {
    double peak = 0.0;
    for (const auto& p : env) peak = std::max(peak, p.amplitude);
    std::vector<double> minima;
    for (std::size_t i = 1; i + 1 < env.size(); ++i) {
        if (env[i].amplitude < env[i - 1].amplitude &&
            env[i].amplitude <= env[i + 1].amplitude && env[i].amplitude < 0.2 * peak) {
            minima.push_back(env[i].t);
        }
    }
    return minima;
}

double log_slope(const std::vector<EnvelopePoint>& env, double t_lo, double t_hi) {
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    double count = 0.0;
    for (const auto& p : env) {
        if (p.t < t_lo || p.t > t_hi || p.amplitude <= 0.0) continue;
        const double y = std::log(p.amplitude);
        st += p.t;
        sy += y;
        stt += p.t * p.t;
        sty += p.t * y;
        count += 1.0;
    }
    if (count < 8.0) {
        throw std::runtime_error("crossvalidate: growth-fit window has too few samples");
    }
    return (count * sty - st * sy) / (count * stt - st * st);
}

// Earliest suffix time where the envelope's relative spread falls below
// the threshold; returns a negative value when it never does.
double envelope_settle_time(const std::vector<EnvelopePoint>& env, double threshold) {
    const std::size_t n = env.size();
    std::vector<double> suf_max(n), suf_min(n), suf_sum(n + 1, 0.0);
    double mx = -1.0, mn = 1e308;
    for (std::size_t i = n; i-- > 0;) {
        mx = std::max(mx, env[i].amplitude);
        mn = std::min(mn, env[i].amplitude);
        suf_max[i] = mx;
        suf_min[i] = mn;
        suf_sum[i] = suf_sum[i + 1] + env[i].amplitude;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double mean = suf_sum[i] / static_cast<double>(n - i);
        if (mean > 0.0 && (suf_max[i] - suf_min[i]) / mean < threshold) {
            return env[i].t;
        }
    }
    return -1.0;
}

double zero_crossing_frequency(const std::vector<CircuitState>& run, double t_from) {
    double first = 0.0, last = 0.0;
    int count = 0;
    for (std::size_t i = 1; i < run.size(); ++i) {
        if (run[i].t < t_from) continue;
        if (run[i - 1].u_b < 0.0 && run[i].u_b >= 0.0) {
            const double frac = -run[i - 1].u_b / (run[i].u_b - run[i - 1].u_b);
            const double t = run[i - 1].t + frac * (run[i].t - run[i - 1].t);
            if (count == 0) first = t;
            last = t;
            ++count;
        }
    }
    if (count < 3) {
        throw std::runtime_error("crossvalidate: too few zero crossings for a frequency fit");
    }
    return 2.0 * std::numbers::pi * static_cast<double>(count - 1) / (last - first);
}

CrossvalMetric score(const std::string& name, double measured, double predicted, double budget) {
    CrossvalMetric m;
    m.name = name;
    m.measured = measured;
    m.predicted = predicted;
    m.relative_error = std::abs(measured - predicted) / std::abs(predicted);
    m.budget = budget;
    m.pass = m.relative_error < budget;
    return m;
}

} // namespace

CrossvalReport crossvalidate(const CircuitParams& cp, double t_end, double budget) {
    CrossvalReport report;
    report.map = map_to_coupled_mode(cp);
    const double omega0 = report.map.omega0;
    const double kappa = report.map.params.kappa;
    const double gamma = report.map.params.gamma;
    const double dt = 2.0 * std::numbers::pi / omega0 / 200.0;
    const SpectralRegion region = classify_region(kappa, gamma);

    if (std::holds_alternative<LinearBuffer>(cp.gain_network)) {
        if (region == SpectralRegion::Unbroken) {
            const double beat_si = std::sqrt(kappa * kappa - gamma * gamma) * omega0;
            const double horizon = t_end > 0.0 ? t_end : 4.5 * std::numbers::pi / beat_si;
            const auto run = simulate_circuit(cp, CircuitState{}, horizon, dt);
            const auto env = extract_envelope(u_b_waveform(run), omega0);
            const auto minima = envelope_minima(env);
            if (minima.size() < 2) {
                throw std::runtime_error("crossvalidate: too few envelope minima");
            }
            const double spacing =
                (minima.back() - minima.front()) / static_cast<double>(minima.size() - 1);
            report.metrics.push_back(
                score("beat_frequency", std::numbers::pi / spacing, beat_si, budget));
            report.observations.emplace_back("envelope_minima", static_cast<double>(minima.size()));
        } else if (region == SpectralRegion::Broken) {
            // Growth-rate run with the rails opened so the fit window can
            // reach the asymptotic regime of the growing mode.
            const double lam_si = std::sqrt(gamma * gamma - kappa * kappa) * omega0;
            const double horizon = t_end > 0.0 ? t_end : 8.5 / lam_si;
            CircuitParams open = cp;
            std::get<LinearBuffer>(open.gain_network).rail = 1e12;
            const auto run = simulate_circuit(open, CircuitState{}, horizon, dt);
            const auto env = extract_envelope(u_b_waveform(run), omega0);
            report.metrics.push_back(score("envelope_growth_rate",
                                           log_slope(env, 4.0 / lam_si, 8.0 / lam_si), lam_si,
                                           budget));
        }
    } else {
        const double horizon = t_end > 0.0 ? t_end : 1.5e-3;
        const auto run = simulate_circuit(cp, CircuitState{}, horizon, dt);
        const auto env = extract_envelope(u_b_waveform(run), omega0);
        const double settle = envelope_settle_time(env, 0.02);
        report.observations.emplace_back("settle_time_s", settle);
        report.observations.emplace_back("steady_envelope_V", env.back().amplitude);
        if (settle < 0.0) {
            CrossvalMetric failed;
            failed.name = "envelope_settles";
            failed.budget = budget;
            failed.pass = false;
            report.metrics.push_back(failed);
        } else {
            report.metrics.push_back(score("steady_frequency",
                                           zero_crossing_frequency(run, settle), omega0, budget));
        }

        // Reduced-model counterpart on the mapped saturable parameters.
        IntegrationConfig cfg;
        cfg.t_end = horizon * omega0;
        cfg.record_stride = 0.05;
        const IntegrationResult cm = integrate(report.map.params, AmplitudeState{}, cfg);
        if (cm.ok()) {
            const SteadyStateReport steady = detect_steady_state(cm.trajectory);
            report.observations.emplace_back("cm_settle_time_s", steady.t_settle / omega0);
            report.observations.emplace_back("cm_converged", steady.converged ? 1.0 : 0.0);
        }
    }

    report.pass = true;
    for (const auto& m : report.metrics) {
        report.pass = report.pass && m.pass;
    }
    return report;
}

CircuitParams fig7_unbroken_preset() {
    CircuitParams cp;
    cp.r_b = 3e3;
    cp.gain_network = LinearBuffer{1e3, 1e3, 15.0};
    return cp;
}

CircuitParams fig7_broken_preset() {
    CircuitParams cp;
    cp.r_b = 2e3;
    cp.gain_network = LinearBuffer{1e3, 1e3, 15.0};
    return cp;
}

CircuitParams fig8_saturation_preset() {
    CircuitParams cp;
    cp.r_b = 1e3;
    cp.gain_network = DiodeNetwork{};
    return cp;
}

} // namespace ptdimer
