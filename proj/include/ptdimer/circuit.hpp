#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ptdimer/core.hpp"

namespace ptdimer {

/// Shockley diode i(v) = i_s (exp(v/(n v_t)) - 1).
struct DiodeParams {
    double i_s = 2.52e-9;   ///< A
    double v_t = 25.85e-3;  ///< V
    double n = 1.752;
};

/// Non-inverting buffer of gain 1 + r_f/r_g feeding node A back through a
/// series resistor equal to the load r_b; the output clips at +-rail.
struct LinearBuffer {
    double r_f = 1e3;   ///< Ohm
    double r_g = 1e3;   ///< Ohm
    double rail = 15.0; ///< V, supply rail magnitude
};

/// Buffer whose feedback element is an antiparallel diode pair in series
/// with r_g, yielding an amplitude-dependent negative resistance.
struct DiodeNetwork {
    double r_1 = 500.0;  ///< Ohm
    double r_2 = 10e3;   ///< Ohm
    double r_g = 5e3;    ///< Ohm
    DiodeParams diode;
};

using GainNetwork = std::variant<LinearBuffer, DiodeNetwork>;

/// Two magnetically coupled LRC tanks; node A carries the gain network,
/// node B the load resistor r_b.
struct CircuitParams {
    double l = 2.32e-3;   ///< H per tank
    double c = 10.7e-9;   ///< F per tank
    double m_over_l = 0.2;
    double r_b = 3e3;     ///< Ohm
    GainNetwork gain_network = LinearBuffer{};
};

void validate(const CircuitParams& cp);

struct CircuitState {
    double u_a = 1.0;  ///< V
    double u_b = 0.0;  ///< V
    double i_a = 0.0;  ///< A
    double i_b = 0.0;  ///< A
    double t = 0.0;    ///< s
};

/// Coupled-mode reduction of the Kirchhoff equations. `params` carries the
/// rates normalized to omega0 = 1/sqrt(LC); `omega0` converts back to SI.
struct CoupledModeMap {
    double omega0 = 0.0;  ///< rad/s
    SystemParams params;
};

[[nodiscard]] CoupledModeMap map_to_coupled_mode(const CircuitParams& cp);

/// Trapezoidal transient simulation from the given initial state on a
/// uniform grid of at most dt_max. Newton handles the diode branch.
[[nodiscard]] std::vector<CircuitState> simulate_circuit(const CircuitParams& cp,
                                                         const CircuitState& initial,
                                                         double t_end, double dt_max);

/// Instantaneous tank energy 0.5 C (uA^2+uB^2) + 0.5 L (iA^2+iB^2) - M iA iB.
[[nodiscard]] double tank_energy(const CircuitParams& cp, const CircuitState& s);

struct EnvelopePoint {
    double t;
    double amplitude;
};

/// Quadrature demodulation at the carrier estimate followed by a zero-phase
/// FIR low-pass (Blackman-windowed sinc, cutoff at the carrier, six carrier
/// periods long). Output is trimmed to fully supported samples. Requires a
/// uniform grid with at least 20 samples per carrier period.
[[nodiscard]] std::vector<EnvelopePoint> extract_envelope(
    const std::vector<std::pair<double, double>>& waveform, double carrier);

struct CrossvalMetric {
    std::string name;
    double measured = 0.0;
    double predicted = 0.0;
    double relative_error = 0.0;
    double budget = 0.0;
    bool pass = false;
};

struct CrossvalReport {
    CoupledModeMap map;
    std::vector<CrossvalMetric> metrics;
    std::vector<std::pair<std::string, double>> observations;  ///< unscored context
    bool pass = false;
};

/// Simulate the exact circuit, extract envelope metrics, and score them
/// against the coupled-mode predictions at the RWA budget. t_end = 0 picks
/// a horizon suited to the regime.
[[nodiscard]] CrossvalReport crossvalidate(const CircuitParams& cp, double t_end = 0.0,
                                           double budget = 0.03);

[[nodiscard]] CircuitParams fig7_unbroken_preset();
[[nodiscard]] CircuitParams fig7_broken_preset();
[[nodiscard]] CircuitParams fig8_saturation_preset();

} // namespace ptdimer
