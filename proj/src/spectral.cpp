#include "ptdimer/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace ptdimer {

std::vector<Complex> EigenSet::frequencies() const {
    std::vector<Complex> out;
    out.reserve(modes.size());
    for (const auto& m : modes) {
        out.push_back(m.frequency);
    }
    return out;
}

double characteristic_residual(Complex omega, double g, double gamma,
                               double kappa, double omega0) {
    const Complex lhs = (omega0 + Complex(0.0, g) - omega) *
                        (omega0 - Complex(0.0, gamma) - omega) -
                        kappa * kappa;
    return std::abs(lhs);
}

namespace {

void require_on_resonance(const SystemParams& params, const char* what) {
    if (params.omega_a != params.omega_b) {
        throw std::invalid_argument(std::string(what) + ": requires omega_a == omega_b");
    }
}

} // namespace

EigenSet linear_eigenfrequencies(const SystemParams& params, double tol) {
    require_on_resonance(params, "linear_eigenfrequencies");
    const auto* lin = std::get_if<LinearGain>(&params.gain);
    if (lin == nullptr) {
        throw std::invalid_argument("linear_eigenfrequencies: gain model is not linear");
    }
    const double scale = std::max({std::abs(lin->g), params.gamma, 1.0});
    if (std::abs(lin->g - params.gamma) > 1e-12 * scale) {
        throw std::invalid_argument("linear_eigenfrequencies: requires balanced gain g == gamma");
    }

    const double omega0 = params.omega_a;
    const double kappa = params.kappa;
    const double gamma = params.gamma;

    EigenSet set;
    set.region = classify_region(kappa, gamma, tol);
    const double disc = kappa * kappa - gamma * gamma;
    Complex root;
    if (disc >= 0.0) {
        root = Complex(std::sqrt(disc), 0.0);
    } else {
        root = Complex(0.0, std::sqrt(-disc));
    }
    set.modes.push_back({omega0 + root, gamma});
    set.modes.push_back({omega0 - root, gamma});
    return set;
}

EigenSet nonlinear_eigenfrequencies(const SystemParams& params, double tol) {
    require_on_resonance(params, "nonlinear_eigenfrequencies");
    if (!std::holds_alternative<SaturableGain>(params.gain)) {
        throw std::invalid_argument("nonlinear_eigenfrequencies: gain model is not saturable");
    }

    const double omega0 = params.omega_a;
    const double kappa = params.kappa;
    const double gamma = params.gamma;

    EigenSet set;
    set.region = classify_region(kappa, gamma, tol);

    if (gamma < kappa || set.region == SpectralRegion::ExceptionalPoint) {
        // Split pair saturates at g_sat = gamma; the amplitude ratio is
        // unity there, so the steady energy is coupling-independent.
        const double split = std::sqrt(std::max(kappa * kappa - gamma * gamma, 0.0));
        if (gamma > 0.0) {
            set.modes.push_back({Complex(omega0, 0.0), kappa * kappa / gamma});
        }
        set.modes.push_back({Complex(omega0 + split, 0.0), gamma});
        set.modes.push_back({Complex(omega0 - split, 0.0), gamma});
        set.g_sat = gamma;
        return set;
    }

    // Broken region: the central mode persists at g_sat = kappa^2/gamma and
    // the companion omega0 + i(kappa^2/gamma - gamma) decays.
    const double g_sat = kappa * kappa / gamma;
    set.modes.push_back({Complex(omega0, 0.0), g_sat});
    set.modes.push_back({Complex(omega0, g_sat - gamma), g_sat});
    set.g_sat = g_sat;
    return set;
}

double exceptional_arc(const std::function<double(double)>& kappa_of_d,
                       double gamma, double d_lo, double d_hi, double rel_tol) {
    if (!(d_lo < d_hi)) {
        throw std::invalid_argument("exceptional_arc: need d_lo < d_hi");
    }
    double lo = d_lo;
    double hi = d_hi;
    const double k_lo = kappa_of_d(lo);
    const double k_hi = kappa_of_d(hi);
    if (gamma > k_lo || gamma < k_hi) {
        throw std::domain_error("exceptional_arc: gamma outside the attainable coupling range");
    }
    // kappa is strictly decreasing: kappa(lo) >= gamma >= kappa(hi).
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (kappa_of_d(mid) >= gamma) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) {
            break;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace ptdimer
