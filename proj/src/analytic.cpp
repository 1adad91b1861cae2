#include "ptdimer/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace ptdimer {

namespace {

// f(t) = sin(Omega t)/Omega, t, or sinh(Lambda t)/Lambda and its time
// derivative f'(t) = cos / 1 / cosh, expressed through the signed
// discriminant delta = kappa^2 - gamma^2 (delta > 0 unbroken, < 0 broken).
struct Kernel {
    double f;
    double df;
};

Kernel eval_kernel(const LinearSolution& sol, double t) {
    const double delta = sol.kappa * sol.kappa - sol.gamma * sol.gamma;
    const double rate = std::sqrt(std::abs(delta));
    if (sol.region == SpectralRegion::ExceptionalPoint || rate < 1e-6) {
        // Degenerate-root limit; u = delta t^2 stays tiny here, so two
        // series terms reach full double precision.
        const double u = delta * t * t;
        const double f = t * (1.0 - u / 6.0 + u * u / 120.0);
        const double df = 1.0 - u / 2.0 + u * u / 24.0;
        return {f, df};
    }
    if (delta > 0.0) {
        return {std::sin(rate * t) / rate, std::cos(rate * t)};
    }
    return {std::sinh(rate * t) / rate, std::cosh(rate * t)};
}

} // namespace

LinearSolution make_linear_solution(double kappa, double gamma, double omega0, double tol) {
    if (!(kappa >= 0.0) || !(gamma >= 0.0) || !(omega0 > 0.0)) {
        throw std::invalid_argument("make_linear_solution: kappa, gamma >= 0 and omega0 > 0");
    }
    return {kappa, gamma, omega0, classify_region(kappa, gamma, tol)};
}

Complex psi_b_closed_form(const LinearSolution& sol, double t) {
    if (t < 0.0) {
        throw std::domain_error("psi_b_closed_form: t must be >= 0");
    }
    const Kernel k = eval_kernel(sol, t);
    const double phase = sol.omega0 * t;
    return -sol.kappa * k.f * Complex(std::sin(phase), std::cos(phase));
}

double transfer_energy_closed_form(const LinearSolution& sol, double t) {
    if (t < 0.0) {
        throw std::domain_error("transfer_energy_closed_form: t must be >= 0");
    }
    const Kernel k = eval_kernel(sol, t);
    return sol.omega0 * sol.kappa * sol.kappa * k.f * k.f;
}

double storage_energy_closed_form(const LinearSolution& sol, double t) {
    if (t < 0.0) {
        throw std::domain_error("storage_energy_closed_form: t must be >= 0");
    }
    const Kernel k = eval_kernel(sol, t);
    const double amp = k.df + sol.gamma * k.f;
    return sol.omega0 * amp * amp;
}

} // namespace ptdimer
