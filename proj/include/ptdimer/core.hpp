#pragma once

#include <complex>
#include <string>
#include <variant>

namespace ptdimer {

using Complex = std::complex<double>;

/// Field-amplitude pair of the two resonators at one time instant. All
/// rates, frequencies, and times in this library are expressed in units of
/// the resonant frequency omega0 (omega0 = 1); a single scale factor
/// converts to SI at the circuit/CLI boundary.
struct AmplitudeState {
    Complex psi_a{1.0, 0.0};
    Complex psi_b{0.0, 0.0};
    double t = 0.0;
};

/// Constant gain rate; any real value is allowed.
struct LinearGain {
    double g = 0.0;
};

/// Saturable gain g(|psi_a|) = 2(g1 + gamma1)/(1 + |psi_a|^2) - gamma1,
/// with small-signal gain rate g1 > 0 and intrinsic loss gamma1 >= 0.
struct SaturableGain {
    double g1 = 3.0;
    double gamma1 = 0.05;
};

using GainModel = std::variant<LinearGain, SaturableGain>;

[[nodiscard]] bool is_linear(const GainModel& gain);

/// Gain rate at the given sender amplitude modulus. Total on valid models:
/// a linear model ignores the amplitude.
[[nodiscard]] double eval_gain(const GainModel& gain, double psi_a_abs);

/// Throws std::invalid_argument if the model violates its constraints.
void validate(const GainModel& gain);

/// Two-resonator system of the coupled-mode equations:
///   d(psi_a)/dt = (-i omega_a + g(|psi_a|)) psi_a - i kappa psi_b
///   d(psi_b)/dt = (-i omega_b - gamma)      psi_b - i kappa psi_a
struct SystemParams {
    double omega_a = 1.0;
    double omega_b = 1.0;
    double kappa = 0.5;
    double gamma = 0.0;
    GainModel gain = LinearGain{0.0};
};

void validate(const SystemParams& params);

enum class SpectralRegion { Unbroken, ExceptionalPoint, Broken };

[[nodiscard]] std::string to_string(SpectralRegion region);

/// Inverse of to_string. Throws std::invalid_argument on unknown names.
[[nodiscard]] SpectralRegion region_from_string(const std::string& name);

/// Classify by |gamma| vs |kappa|. Equality within a relative tolerance
/// (floored at 1 for near-zero pairs) counts as the exceptional point, so
/// parameter sweeps landing next to gamma = kappa are tagged consistently.
[[nodiscard]] SpectralRegion classify_region(double kappa, double gamma, double tol = 1e-9);

/// Energy held in the receiving resonator, omega_b |psi_b|^2.
[[nodiscard]] double transfer_energy(const AmplitudeState& state, double omega_b);

/// Energy held in the sending resonator, omega_a |psi_a|^2.
[[nodiscard]] double storage_energy(const AmplitudeState& state, double omega_a);

/// Average power E/t. Throws std::domain_error for t <= 0.
[[nodiscard]] double average_power(double energy, double t);

} // namespace ptdimer
