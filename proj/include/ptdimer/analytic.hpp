#pragma once

#include "ptdimer/core.hpp"

namespace ptdimer {

/// Balanced-gain (g = gamma) configuration whose time evolution from the
/// fixed initial state psi_a(0) = 1, psi_b(0) = 0 has closed forms.
struct LinearSolution {
    double kappa = 0.5;
    double gamma = 0.0;
    double omega0 = 1.0;
    SpectralRegion region = SpectralRegion::Unbroken;
};

[[nodiscard]] LinearSolution make_linear_solution(double kappa, double gamma,
                                                  double omega0 = 1.0, double tol = 1e-9);

/// Receiver amplitude -kappa (sin w0 t + i cos w0 t) f(t) where f is
/// sin(Omega t)/Omega, t, or sinh(Lambda t)/Lambda by region. A series
/// expansion takes over near the exceptional point where the ratio forms
/// lose precision.
[[nodiscard]] Complex psi_b_closed_form(const LinearSolution& sol, double t);

/// omega0 kappa^2 f(t)^2, the transfer energy of the closed-form amplitude.
[[nodiscard]] double transfer_energy_closed_form(const LinearSolution& sol, double t);

/// omega0 (f'(t) + gamma f(t))^2, the sender energy; equals omega0 at t = 0.
[[nodiscard]] double storage_energy_closed_form(const LinearSolution& sol, double t);

} // namespace ptdimer
