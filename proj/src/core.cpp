#include "ptdimer/core.hpp"

#include <cmath>
#include <stdexcept>

namespace ptdimer {

bool is_linear(const GainModel& gain) {
    return std::holds_alternative<LinearGain>(gain);
}

double eval_gain(const GainModel& gain, double psi_a_abs) {
    if (const auto* lin = std::get_if<LinearGain>(&gain)) {
        return lin->g;
    }
    const auto& sat = std::get<SaturableGain>(gain);
    return 2.0 * (sat.g1 + sat.gamma1) / (1.0 + psi_a_abs * psi_a_abs) - sat.gamma1;
}

void validate(const GainModel& gain) {
    if (const auto* sat = std::get_if<SaturableGain>(&gain)) {
        if (!(sat->g1 > 0.0)) {
            throw std::invalid_argument("SaturableGain: g1 must be > 0");
        }
        if (!(sat->gamma1 >= 0.0)) {
            throw std::invalid_argument("SaturableGain: gamma1 must be >= 0");
        }
    } else {
        const auto& lin = std::get<LinearGain>(gain);
        if (!std::isfinite(lin.g)) {
            throw std::invalid_argument("LinearGain: g must be finite");
        }
    }
}

void validate(const SystemParams& params) {
    if (!(params.omega_a > 0.0) || !(params.omega_b > 0.0)) {
        throw std::invalid_argument("SystemParams: resonator frequencies must be > 0");
    }
    if (!(params.kappa >= 0.0)) {
        throw std::invalid_argument("SystemParams: kappa must be >= 0");
    }
    if (!(params.gamma >= 0.0)) {
        throw std::invalid_argument("SystemParams: gamma must be >= 0");
    }
    validate(params.gain);
}

std::string to_string(SpectralRegion region) {
    switch (region) {
        case SpectralRegion::Unbroken: return "unbroken";
        case SpectralRegion::ExceptionalPoint: return "ep";
        case SpectralRegion::Broken: return "broken";
    }
    return "unknown";
}

SpectralRegion region_from_string(const std::string& name) {
    if (name == "unbroken") return SpectralRegion::Unbroken;
    if (name == "ep") return SpectralRegion::ExceptionalPoint;
    if (name == "broken") return SpectralRegion::Broken;
    throw std::invalid_argument("unknown spectral region: " + name);
}

SpectralRegion classify_region(double kappa, double gamma, double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("classify_region: tol must be > 0");
    }
    const double ak = std::abs(kappa);
    const double ag = std::abs(gamma);
    const double scale = std::max({ak, ag, 1.0});
    if (std::abs(ag - ak) <= tol * scale) {
        return SpectralRegion::ExceptionalPoint;
    }
    return ag < ak ? SpectralRegion::Unbroken : SpectralRegion::Broken;
}

double transfer_energy(const AmplitudeState& state, double omega_b) {
    return omega_b * std::norm(state.psi_b);
}

double storage_energy(const AmplitudeState& state, double omega_a) {
    return omega_a * std::norm(state.psi_a);
}

double average_power(double energy, double t) {
    if (!(t > 0.0)) {
        throw std::domain_error("average_power: t must be > 0");
    }
    return energy / t;
}

} // namespace ptdimer
