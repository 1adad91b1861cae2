#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ptdimer/core.hpp"

namespace ptdimer {

/// One steady oscillation mode: its complex frequency together with the
/// gain rate at which it solves the characteristic equation.
struct EigenMode {
    Complex frequency;
    double gain;
};

struct EigenSet {
    std::vector<EigenMode> modes;
    SpectralRegion region = SpectralRegion::Unbroken;
    std::optional<double> g_sat;  ///< saturated gain, saturable models only

    [[nodiscard]] std::vector<Complex> frequencies() const;
};

/// |(omega0 + i g - omega)(omega0 - i gamma - omega) - kappa^2|.
/// An exact frequency/gain root gives 0.
[[nodiscard]] double characteristic_residual(Complex omega, double g, double gamma,
                                             double kappa, double omega0);

/// Balanced linear gain (g = gamma) on resonance: the two modes
/// omega0 +- sqrt(kappa^2 - gamma^2), continued as omega0 +- i sqrt(gamma^2
/// - kappa^2) past the exceptional point. Throws std::invalid_argument for
/// detuned resonators or g != gamma.
[[nodiscard]] EigenSet linear_eigenfrequencies(const SystemParams& params, double tol = 1e-9);

/// Saturable gain on resonance. Unbroken (gamma < kappa): the split pair
/// omega0 +- sqrt(kappa^2 - gamma^2) saturating at g_sat = gamma, plus the
/// central mode omega0 (gain kappa^2/gamma, omitted at gamma = 0 where no
/// finite gain sustains it). Broken (gamma >= kappa): omega0 and
/// omega0 + i(kappa^2/gamma - gamma), g_sat = kappa^2/gamma.
[[nodiscard]] EigenSet nonlinear_eigenfrequencies(const SystemParams& params, double tol = 1e-9);

/// Distance at which a continuous, strictly decreasing coupling curve
/// crosses gamma, located by bisection. Throws std::domain_error when gamma
/// lies outside [kappa(d_hi), kappa(d_lo)].
[[nodiscard]] double exceptional_arc(const std::function<double(double)>& kappa_of_d,
                                     double gamma, double d_lo, double d_hi,
                                     double rel_tol = 1e-10);

} // namespace ptdimer
